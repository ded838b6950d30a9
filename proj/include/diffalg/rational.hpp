#ifndef DIFFALG_RATIONAL_HPP
#define DIFFALG_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace diffalg {

using Rational = mpq_class;
using Integer = mpz_class;

inline Integer rational_floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline Rational make_rational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational parse_rational(std::string_view s) {
    mpq_class q;
    if (q.set_str(std::string(s), 10) != 0)
        throw std::invalid_argument("bad rational literal: " + std::string(s));
    q.canonicalize();
    return q;
}

// Element of Q(i): re + im*i with exact rational components. This is the
// coefficient field of the whole toolkit; every operation is exact.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}
    GaussianRational(const Rational& re) : re_(re), im_(0) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    bool is_integer() const { return im_ == 0 && re_.get_den() == 1; }

    GaussianRational conj() const { return {re_, -im_}; }

    // norm = a^2 + b^2 = z * conj(z); rational and nonnegative.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }

    GaussianRational inverse() const {
        if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
        Rational n = norm();
        return {re_ / n, -im_ / n};
    }

    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        GaussianRational acc(1), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    // Total order for canonical containers; no arithmetic meaning.
    int cmp(const GaussianRational& o) const {
        int c = ::cmp(re_, o.re_);
        if (c != 0) return c;
        return ::cmp(im_, o.im_);
    }
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) { return a.cmp(b) < 0; }

    // Canonical exact string: "a/b", "c/d*i", or "a/b+c/d*i" (minus signs folded in).
    std::string str() const {
        if (im_ == 0) return rational_str(re_);
        std::string t = rational_str(im_) + "*i";
        if (re_ == 0) return t;
        return rational_str(re_) + (im_ > 0 ? "+" : "") + t;
    }

    // Measure used by pivot selection: total bit size of the four integers.
    size_t bit_size() const {
        return mpz_sizeinbase(re_.get_num().get_mpz_t(), 2) + mpz_sizeinbase(re_.get_den().get_mpz_t(), 2) +
               mpz_sizeinbase(im_.get_num().get_mpz_t(), 2) + mpz_sizeinbase(im_.get_den().get_mpz_t(), 2);
    }

private:
    Rational re_, im_;
};

// Parses the canonical FieldElem grammar: signed terms that are either a
// rational or rational*i or bare i. Exact round-trip with str().
inline GaussianRational parse_field_elem(std::string_view s) {
    GaussianRational out;
    size_t pos = 0;
    if (s.empty()) throw std::invalid_argument("empty field element");
    while (pos < s.size()) {
        int sign = 1;
        while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -sign;
            ++pos;
        }
        if (pos >= s.size()) throw std::invalid_argument("dangling sign in field element");
        size_t start = pos;
        while (pos < s.size() && s[pos] != '+' && s[pos] != '-') ++pos;
        std::string_view term = s.substr(start, pos - start);
        bool imag = false;
        if (!term.empty() && term.back() == 'i') {
            imag = true;
            term.remove_suffix(1);
            if (!term.empty() && term.back() == '*') term.remove_suffix(1);
        }
        Rational v = term.empty() ? Rational(1) : parse_rational(term);
        if (sign < 0) v = -v;
        if (imag)
            out += GaussianRational(Rational(0), v);
        else
            out += GaussianRational(v);
    }
    return out;
}

} // namespace diffalg

#endif
