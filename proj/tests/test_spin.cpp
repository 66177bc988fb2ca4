#include <doctest.h>

#include <cmath>

#include "dirac/errors.hpp"
#include "dirac/spin.hpp"
#include "support.hpp"

using namespace dirac;

namespace {

const Letter A = letter_of(0, false), a = letter_of(0, true), B = letter_of(1, false), b = letter_of(1, true);

Word random_word(testsupport::Gen& gen, int rank, int max_len) {
    Word w;
    const int len = gen.integer(0, max_len);
    while (static_cast<int>(w.size()) < len) {
        const Letter l = letter_of(gen.integer(0, rank - 1), gen.integer(0, 1) == 1);
        if (!w.empty() && w.back() == -l) continue;
        w.push_back(l);
    }
    return w;
}

Word inverse_word(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (auto& l : r) l = static_cast<Letter>(-l);
    return r;
}

Word concat(std::initializer_list<Word> parts) {
    Word r;
    for (const auto& p : parts) r.insert(r.end(), p.begin(), p.end());
    return r;
}

// For the level-2 group with both generator signs -1: normalise the matrix sign
// so that its top-left entry is 1 mod 4; the character is then (-1)^((b+c)/2)
// on that representative, and epsilon flips it when its trace is negative.
int gamma2_epsilon_oracle(const MoebiusElement& m) {
    long p = std::lround(m.a), q = std::lround(m.b), r = std::lround(m.c), s = std::lround(m.d);
    if (((p % 4) + 4) % 4 != 1) p = -p, q = -q, r = -r, s = -s;
    const int chi = (((q + r) / 2) % 2 == 0) ? 1 : -1;
    return p + s > 0 ? chi : -chi;
}

}  // namespace

TEST_SUITE("spin") {

TEST_CASE("epsilon examples") {
    const auto g = GroupPresentation::gamma2();
    const SpinAssignment s({-1, -1});
    CHECK(epsilon(s, g, Word{A}) == -1);
    const auto ab = g.evaluate(Word{A, B});
    CHECK(ab.a == 5);
    CHECK(ab.b == 2);
    CHECK(ab.c == 2);
    CHECK(ab.d == 1);
    CHECK(epsilon(s, ab) == 1);
    const auto ba = g.evaluate(Word{b, A});
    CHECK(ba.a == 1);
    CHECK(ba.b == 2);
    CHECK(ba.c == -2);
    CHECK(ba.d == -3);
    CHECK(epsilon(s, ba) == -1);
}

TEST_CASE("epsilon errors") {
    const auto g = GroupPresentation::gamma2();
    const SpinAssignment s({-1, -1});
    CHECK_THROWS_AS(epsilon(s, MoebiusElement::from_entries(1, 2, 0, 1)), DomainError);  // no word
    CHECK_THROWS_AS(epsilon(s, MoebiusElement::from_entries(0, 1, -1, 0, Word{A})), DomainError);
    CHECK_THROWS_AS(SpinAssignment({-1}).check_against(g), ValidationError);
    CHECK_THROWS_AS(SpinAssignment({-1, 2}).check_against(g), ValidationError);
}

TEST_CASE("nontriviality") {
    const auto g = GroupPresentation::gamma2();
    CHECK(is_nontrivial(SpinAssignment({-1, -1}), g).nontrivial);
    CHECK_FALSE(is_nontrivial(SpinAssignment({1, -1}), g).nontrivial);
    CHECK_FALSE(is_nontrivial(SpinAssignment({-1, 1}), g).nontrivial);
    CHECK_FALSE(is_nontrivial(SpinAssignment({1, 1}), g).nontrivial);
    for (int sgn : {-1, 1}) {
        const auto n = is_nontrivial(SpinAssignment({sgn}), GroupPresentation::cyclic(2));
        CHECK(n.nontrivial);
        CHECK(n.no_cusps);
    }
    const auto custom = GroupPresentation::custom({MoebiusElement::from_entries(2, 0, 0, 0.5)});
    CHECK_THROWS_AS(is_nontrivial(SpinAssignment({1}), custom), UnsupportedError);
    CHECK(cusp_representatives(g) == std::vector<Word>{{A}, {B}, {b, A}});
}

TEST_CASE("spin assignment enumeration") {
    const auto g2 = enumerate_spin_assignments(GroupPresentation::gamma2());
    REQUIRE(g2.size() == 4);
    int nontrivial = 0;
    for (const auto& c : g2) {
        if (c.nontrivial) {
            ++nontrivial;
            CHECK(c.assignment == SpinAssignment({-1, -1}));
        }
    }
    CHECK(nontrivial == 1);
    const auto cyc = enumerate_spin_assignments(GroupPresentation::cyclic(1));
    REQUIRE(cyc.size() == 2);
    for (const auto& c : cyc) {
        CHECK(c.nontrivial);
        CHECK(c.no_cusps);
    }
    const auto h = MoebiusElement::from_entries(2, 0, 0, 0.5);
    const auto k = MoebiusElement::from_entries(2, 1, 1, 1);
    const auto custom = enumerate_spin_assignments(GroupPresentation::custom({h, k, compose(h, k)}));
    CHECK(custom.size() == 8);
    for (const auto& c : custom) CHECK_FALSE(c.determined);
}

TEST_CASE("epsilon matches the congruence oracle on random words") {
    const auto g = GroupPresentation::gamma2();
    const SpinAssignment s({-1, -1});
    testsupport::Gen gen(41);
    int checked = 0;
    while (checked < 2000) {
        const auto w = random_word(gen, 2, 10);
        const auto m = g.evaluate(w);
        if (w.empty() || std::abs(m.trace()) < 1e-10) continue;
        REQUIRE(epsilon(s, m) == gamma2_epsilon_oracle(m));
        ++checked;
    }
}

TEST_CASE("epsilon is a class function and inverse invariant") {
    const auto g = GroupPresentation::gamma2();
    testsupport::Gen gen(43);
    for (const auto& s : {SpinAssignment({-1, -1}), SpinAssignment({1, -1}), SpinAssignment({-1, 1})}) {
        int checked = 0;
        while (checked < 1000) {
            const auto w = random_word(gen, 2, 6), h = random_word(gen, 2, 5);
            if (w.empty()) continue;
            const int e = epsilon(s, g, w);
            REQUIRE(epsilon(s, g, concat({h, w, inverse_word(h)})) == e);
            REQUIRE(epsilon(s, g, inverse_word(w)) == e);
            // Inserting x x^{-1} anywhere does not change the element.
            const std::size_t at = static_cast<std::size_t>(gen.integer(0, static_cast<int>(w.size())));
            const Letter x = letter_of(gen.integer(0, 1), gen.integer(0, 1) == 1);
            Word padded = w;
            padded.insert(padded.begin() + static_cast<std::ptrdiff_t>(at), {x, static_cast<Letter>(-x)});
            REQUIRE(epsilon(s, g, padded) == e);
            ++checked;
        }
    }
}

TEST_CASE("epsilon on the cyclic model follows the generator sign") {
    const auto g = GroupPresentation::cyclic(1.5);
    for (int n = 1; n <= 6; ++n) {
        CHECK(epsilon(SpinAssignment({-1}), g, Word(n, A)) == (n % 2 ? -1 : 1));
        CHECK(epsilon(SpinAssignment({-1}), g, Word(n, a)) == (n % 2 ? -1 : 1));
        CHECK(epsilon(SpinAssignment({1}), g, Word(n, A)) == 1);
    }
}

}  // TEST_SUITE
