#include "dirac/hyperbolic.hpp"

#include <cmath>
#include <numbers>

#include "dirac/errors.hpp"

namespace dirac {

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
    if (!(y > 1e-300) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("HPoint requires finite x and y > 1e-300");
    }
}

MoebiusElement MoebiusElement::from_entries(double a, double b, double c, double d,
                                            std::optional<Word> word) {
    MoebiusElement m{a, b, c, d, std::move(word)};
    const double det = m.det();
    if (!(det > 0) || std::abs(det - 1) > 1e-9) {
        throw DomainError("Moebius element needs determinant 1");
    }
    if (std::abs(det - 1) > 1e-13) {
        const double s = 1 / std::sqrt(det);
        m.a *= s; m.b *= s; m.c *= s; m.d *= s;
    }
    return m;
}

MoebiusElement MoebiusElement::inverse() const {
    MoebiusElement m{d, -b, -c, a, std::nullopt};
    if (word) {
        Word w(word->rbegin(), word->rend());
        for (auto& l : w) l = static_cast<Letter>(-l);
        m.word = std::move(w);
    }
    return m;
}

MoebiusElement MoebiusElement::negated() const {
    return {-a, -b, -c, -d, word};
}

MoebiusElement compose(const MoebiusElement& m1, const MoebiusElement& m2) {
    MoebiusElement r{m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                     m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d, std::nullopt};
    const double det = r.det();
    if (std::abs(det - 1) > 1e-13) {
        if (!(det > 0)) throw NumericError("composition lost unit determinant");
        const double s = 1 / std::sqrt(det);
        r.a *= s; r.b *= s; r.c *= s; r.d *= s;
    }
    if (m1.word || m2.word) {
        Word w = m1.word.value_or(Word{});
        if (m2.word) w.insert(w.end(), m2.word->begin(), m2.word->end());
        r.word = std::move(w);
    }
    return r;
}

HPoint apply(const MoebiusElement& m, const HPoint& z) {
    const Complex zc = z.complex();
    const Complex den = m.c * zc + m.d;
    if (std::abs(den) < 1e-300) throw DomainError("degenerate Moebius denominator");
    const Complex w = (m.a * zc + m.b) / den;
    // Im w = Im z / |cz+d|^2 exactly for det 1; avoids cancellation in the division.
    return HPoint(w.real(), z.y() / std::norm(den));
}

double cosh_distance(const HPoint& z, const HPoint& w) {
    const double dx = z.x() - w.x();
    const double dy = z.y() - w.y();
    return 1 + (dx * dx + dy * dy) / (2 * z.y() * w.y());
}

double distance(const HPoint& z, const HPoint& w) {
    // 2 asinh(|z-w| / (2 sqrt(yz yw))) is the cancellation-free form of the arccosh.
    const double dx = z.x() - w.x();
    const double dy = z.y() - w.y();
    return 2 * std::asinh(std::sqrt(dx * dx + dy * dy) / (2 * std::sqrt(z.y() * w.y())));
}

const char* to_string(ElementClass c) {
    switch (c) {
        case ElementClass::identity: return "identity";
        case ElementClass::elliptic: return "elliptic";
        case ElementClass::parabolic: return "parabolic";
        case ElementClass::hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

Classification classify(const MoebiusElement& m) {
    const double s = m.a >= 0 ? 1.0 : -1.0;
    if (std::abs(s * m.a - 1) <= kIdentityTol && std::abs(m.b) <= kIdentityTol &&
        std::abs(m.c) <= kIdentityTol && std::abs(s * m.d - 1) <= kIdentityTol) {
        return {ElementClass::identity, 0};
    }
    const double tr = std::abs(m.trace());
    if (tr > 2 + kParabolicBand) {
        return {ElementClass::hyperbolic, 2 * std::acosh(tr / 2)};
    }
    if (tr < 2 - kParabolicBand) return {ElementClass::elliptic, 0};
    return {ElementClass::parabolic, 0};
}

Complex parallel_transport(const HPoint& z, const HPoint& w) {
    const Complex v = z.complex() - std::conj(w.complex());
    return Complex(0, -1) * v / std::abs(v);
}

double area_of_signature(int g, int k) {
    if (g < 0 || k < 0 || 2 * g - 2 + k <= 0) {
        throw DomainError("signature (g,k) needs g,k >= 0 and 2g-2+k > 0");
    }
    return 2 * std::numbers::pi * (2 * g - 2 + k);
}

bool same_in_psl(const MoebiusElement& m1, const MoebiusElement& m2, double tol) {
    auto close = [tol](const MoebiusElement& p, const MoebiusElement& q, double s) {
        return std::abs(p.a - s * q.a) <= tol && std::abs(p.b - s * q.b) <= tol &&
               std::abs(p.c - s * q.c) <= tol && std::abs(p.d - s * q.d) <= tol;
    };
    return close(m1, m2, 1) || close(m1, m2, -1);
}

}  // namespace dirac
