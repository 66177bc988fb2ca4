#pragma once

#include <span>
#include <vector>

#include "dirac/fuchsian.hpp"
#include "dirac/hyperbolic.hpp"

namespace dirac {

/// Sign character on the chosen SL(2,R) lifts of the generators. chi(-I) = -1
/// is implied.
struct SpinAssignment {
    std::vector<int> signs;

    SpinAssignment() = default;
    explicit SpinAssignment(std::vector<int> s);

    /// Throws ValidationError unless there is one sign per generator.
    void check_against(const GroupPresentation& group) const;

    bool operator==(const SpinAssignment&) const = default;
};

/// Product of generator signs along a word.
int chi_of_word(const SpinAssignment& spin, std::span<const Letter> word);

/// epsilon of an element whose matrix is the product of generator lifts along
/// its word: chi(word) when the trace is positive, -chi(word) otherwise.
/// Throws DomainError for missing words and for |trace| < 1e-10.
int epsilon(const SpinAssignment& spin, const MoebiusElement& element);

/// Same, multiplying out the word in the group first.
int epsilon(const SpinAssignment& spin, const GroupPresentation& group, const Word& word);

struct Nontriviality {
    bool nontrivial = false;
    bool no_cusps = false;  // vacuous (cyclic model)
};

/// epsilon = -1 on every cusp representative (gamma2: A, B, B^{-1}A). Custom
/// groups throw UnsupportedError.
Nontriviality is_nontrivial(const SpinAssignment& spin, const GroupPresentation& group);

/// Words of the primitive parabolic representatives, one per cusp.
std::vector<Word> cusp_representatives(const GroupPresentation& group);

struct SpinCandidate {
    SpinAssignment assignment;
    bool nontrivial = false;
    bool no_cusps = false;
    bool determined = true;  // false for custom groups
};

/// All 2^n assignments; generator i gets -1 when bit i of the index is set.
/// More than 20 generators throws ResourceError.
std::vector<SpinCandidate> enumerate_spin_assignments(const GroupPresentation& group);

}  // namespace dirac
