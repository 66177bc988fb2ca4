#include "dirac/spin.hpp"

#include <cmath>

#include "dirac/errors.hpp"

namespace dirac {

SpinAssignment::SpinAssignment(std::vector<int> s) : signs(std::move(s)) {
    for (int v : signs) {
        if (v != 1 && v != -1) throw ValidationError("spin signs must be +1 or -1");
    }
}

void SpinAssignment::check_against(const GroupPresentation& group) const {
    if (static_cast<int>(signs.size()) != group.rank()) {
        throw ValidationError("spin assignment has " + std::to_string(signs.size()) + " signs for " +
                              std::to_string(group.rank()) + " generators");
    }
}

int chi_of_word(const SpinAssignment& spin, std::span<const Letter> word) {
    int chi = 1;
    for (Letter l : word) {
        const int g = generator_of(l);
        if (l == 0 || g >= static_cast<int>(spin.signs.size())) {
            throw DomainError("word uses a generator outside the spin assignment");
        }
        chi *= spin.signs[g];
    }
    return chi;
}

int epsilon(const SpinAssignment& spin, const MoebiusElement& element) {
    if (!element.word) throw DomainError("epsilon needs the element's word");
    const double tr = element.trace();
    if (!(std::abs(tr) >= 1e-10)) throw DomainError("no positive-trace lift for a trace-zero element");
    const int chi = chi_of_word(spin, *element.word);
    return tr > 0 ? chi : -chi;
}

int epsilon(const SpinAssignment& spin, const GroupPresentation& group, const Word& word) {
    return epsilon(spin, group.evaluate(word));
}

std::vector<Word> cusp_representatives(const GroupPresentation& group) {
    switch (group.model()) {
        case GroupModel::gamma2: return {Word{1}, Word{2}, Word{-2, 1}};
        case GroupModel::cyclic: return {};
        case GroupModel::custom: break;
    }
    throw UnsupportedError("cusp representatives are unknown for custom groups");
}

Nontriviality is_nontrivial(const SpinAssignment& spin, const GroupPresentation& group) {
    spin.check_against(group);
    const auto reps = cusp_representatives(group);
    Nontriviality out;
    out.no_cusps = reps.empty();
    out.nontrivial = true;
    for (const auto& w : reps) {
        if (epsilon(spin, group, w) != -1) out.nontrivial = false;
    }
    return out;
}

std::vector<SpinCandidate> enumerate_spin_assignments(const GroupPresentation& group) {
    const int n = group.rank();
    if (n > 20) throw ResourceError("too many generators to enumerate spin assignments");
    std::vector<SpinCandidate> out;
    for (unsigned k = 0; k < (1u << n); ++k) {
        std::vector<int> s(n);
        for (int i = 0; i < n; ++i) s[i] = (k >> i) & 1u ? -1 : 1;
        SpinCandidate c{SpinAssignment(std::move(s)), false, false, true};
        if (group.model() == GroupModel::custom) {
            c.determined = false;
        } else {
            const auto nt = is_nontrivial(c.assignment, group);
            c.nontrivial = nt.nontrivial;
            c.no_cusps = nt.no_cusps;
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace dirac
