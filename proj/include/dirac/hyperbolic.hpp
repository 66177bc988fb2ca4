#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace dirac {

using Complex = std::complex<double>;

/// Point of the upper half-plane, y > 0.
class HPoint {
public:
    HPoint(double x, double y);

    static HPoint from_complex(Complex z) { return {z.real(), z.imag()}; }

    double x() const { return x_; }
    double y() const { return y_; }
    Complex complex() const { return {x_, y_}; }

private:
    double x_;
    double y_;
};

/// Signed generator index: +(i+1) for generator i, -(i+1) for its inverse.
using Letter = std::int16_t;
using Word = std::vector<Letter>;

inline Letter letter_of(int generator, bool inverse) {
    return static_cast<Letter>(inverse ? -(generator + 1) : (generator + 1));
}
inline int generator_of(Letter l) { return (l > 0 ? l : -l) - 1; }
inline bool is_inverse(Letter l) { return l < 0; }

/// Element of SL(2,R). The sign of the matrix is kept (it matters for spin
/// lifts); geometric queries quotient it out.
struct MoebiusElement {
    double a = 1, b = 0, c = 0, d = 1;
    std::optional<Word> word;

    static MoebiusElement identity() { return {}; }
    static MoebiusElement from_entries(double a, double b, double c, double d,
                                       std::optional<Word> word = std::nullopt);

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    MoebiusElement inverse() const;
    MoebiusElement negated() const;
};

/// Product m1 * m2 (apply m2 first). Drift of det above 1e-13 is removed by
/// dividing through by sqrt(det); words are concatenated.
MoebiusElement compose(const MoebiusElement& m1, const MoebiusElement& m2);

/// Möbius action (az+b)/(cz+d). Throws DomainError when |cz+d| < 1e-300.
HPoint apply(const MoebiusElement& m, const HPoint& z);

/// Hyperbolic distance arccosh(1 + |z-w|^2 / (2 Im z Im w)).
double distance(const HPoint& z, const HPoint& w);

/// cosh of the hyperbolic distance, without the arccosh.
double cosh_distance(const HPoint& z, const HPoint& w);

enum class ElementClass { identity, elliptic, parabolic, hyperbolic };

const char* to_string(ElementClass c);

struct Classification {
    ElementClass kind;
    double translation_length = 0;  // 2 arccosh(|tr|/2), hyperbolic only
};

inline constexpr double kParabolicBand = 1e-10;
inline constexpr double kIdentityTol = 1e-12;

/// Classification by |trace|. Traces within 1e-10 of 2 are parabolic.
Classification classify(const MoebiusElement& m);

/// Spinor parallel transport -i (z - conj w) / |z - conj w|.
Complex parallel_transport(const HPoint& z, const HPoint& w);

/// Gauss–Bonnet area 2 pi (2g - 2 + k).
double area_of_signature(int g, int k);

/// Entrywise comparison after fixing the overall sign (PSL identification).
bool same_in_psl(const MoebiusElement& m1, const MoebiusElement& m2, double tol);

}  // namespace dirac
