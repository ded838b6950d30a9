#ifndef DIFFALG_DIVISOR_HPP
#define DIFFALG_DIVISOR_HPP

#include <map>

#include "factor.hpp"
#include "rational_function.hpp"

namespace diffalg {

// Formal sum of root multiplicities grouped by the orbits alpha + h1*Z.
// Classes are keyed by a canonical member: the shift of the factor whose
// subleading coefficient r = p_{d-1}/(d*h1) has real part in [0, 1).
struct ShiftDivisor {
    std::map<Polynomial, long> classes;

    bool is_zero() const {
        for (const auto& [rep, m] : classes)
            if (m != 0) return false;
        return true;
    }

    ShiftDivisor& add(const ShiftDivisor& o) {
        for (const auto& [rep, m] : o.classes) classes[rep] += m;
        return *this;
    }

    // equality of the underlying divisors (zero entries ignored)
    friend bool operator==(const ShiftDivisor& a, const ShiftDivisor& b) {
        auto window = [](const ShiftDivisor& d) {
            std::map<Polynomial, long> w;
            for (const auto& [rep, m] : d.classes)
                if (m != 0) w.emplace(rep, m);
            return w;
        };
        return window(a) == window(b);
    }
};

// canonical class member and the offset of p relative to it: p(x) = rep(x + offset*h1)
inline std::pair<Polynomial, long> shift_class_canonical(const Polynomial& p, const GaussianRational& h1) {
    long d = p.degree();
    GaussianRational r = p.coeff(d - 1) / (GaussianRational(d) * h1);
    long k = static_cast<long>(rational_floor(r.re()).get_si());
    Polynomial rep = p.shift_arg(GaussianRational(Rational(-k)) * h1);
    return {rep, k};
}

inline ShiftDivisor shift_divisor(const RationalFunction& f, const GaussianRational& h1) {
    if (f.is_zero()) throw std::domain_error("shift divisor of the zero function");
    if (h1.is_zero()) throw std::invalid_argument("h1 must be nonzero");
    ShiftDivisor div;
    auto absorb = [&](const Polynomial& poly, long sign) {
        if (poly.degree() < 1) return;
        for (const auto& [p, m] : factor_polynomial(poly).factors)
            div.classes[shift_class_canonical(p, h1).first] += sign * m;
    };
    absorb(f.num(), +1);
    absorb(f.den(), -1);
    return div;
}

} // namespace diffalg

#endif
