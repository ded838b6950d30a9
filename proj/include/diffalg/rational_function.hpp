#ifndef DIFFALG_RATIONAL_FUNCTION_HPP
#define DIFFALG_RATIONAL_FUNCTION_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "polynomial.hpp"

namespace diffalg {

// Reduced fraction of polynomials over Q(i). Invariants: den is monic and
// nonzero, gcd(num, den) = 1. Equality of values is structural equality.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(GaussianRational(1)) {}
    RationalFunction(const GaussianRational& c) : num_(c), den_(GaussianRational(1)) {}
    RationalFunction(long n) : num_(n), den_(GaussianRational(1)) {}
    RationalFunction(Polynomial num) : num_(std::move(num)), den_(GaussianRational(1)) {}
    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    static RationalFunction x() { return RationalFunction(Polynomial::x()); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    GaussianRational constant_value() const {
        if (!is_constant()) throw std::domain_error("not a constant rational function");
        return num_.coeff(0);
    }

    RationalFunction operator-() const { return from_reduced(-num_, den_); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("rational function division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    RationalFunction inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero rational function");
        return RationalFunction(den_, num_);
    }

    RationalFunction pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        RationalFunction acc(1), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    // ord_0(num) - ord_0(den); throws on zero.
    long valuation_at_zero() const { return num_.valuation_at_zero() - den_.valuation_at_zero(); }

    // deg(den) - deg(num): the t-adic valuation at infinity (t = 1/x).
    long valuation_at_infinity() const {
        if (is_zero()) throw std::domain_error("valuation of zero rational function");
        return den_.degree() - num_.degree();
    }

    // Leading coefficient of the expansion at 0: (x^{-v} * this)(0).
    GaussianRational leading_coeff_at_zero() const {
        long vn = num_.valuation_at_zero(), vd = den_.valuation_at_zero();
        return num_.coeff(vn) / den_.coeff(vd);
    }

    GaussianRational eval(const GaussianRational& z) const {
        GaussianRational d = den_.eval(z);
        if (d.is_zero()) throw std::domain_error("evaluation at a pole");
        return num_.eval(z) / d;
    }

    RationalFunction shift_arg(const GaussianRational& h) const {
        return from_reduced(num_.shift_arg(h), den_.shift_arg(h));
    }
    RationalFunction scale_arg(const GaussianRational& q) const {
        return RationalFunction(num_.scale_arg(q), den_.scale_arg(q));
    }
    RationalFunction dilate_arg(long p) const {
        return from_reduced(num_.dilate_arg(p), den_.dilate_arg(p));
    }

    std::string str(const std::string& var = "x") const {
        if (den_.is_one()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

    int cmp(const RationalFunction& o) const {
        int c = num_.cmp(o.num_);
        if (c != 0) return c;
        return den_.cmp(o.den_);
    }

private:
    static RationalFunction from_reduced(Polynomial n, Polynomial d) {
        RationalFunction r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        // shift/scale of a reduced fraction stays reduced; keep den monic
        GaussianRational lc = r.den_.leading_coeff();
        if (!lc.is_one()) {
            GaussianRational inv = lc.inverse();
            r.num_ = inv * r.num_;
            r.den_ = inv * r.den_;
        }
        return r;
    }

    void reduce() {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Polynomial(GaussianRational(1));
            return;
        }
        Polynomial g = Polynomial::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        GaussianRational lc = den_.leading_coeff();
        if (!lc.is_one()) {
            GaussianRational inv = lc.inverse();
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }

    Polynomial num_, den_;
};

} // namespace diffalg

#endif
