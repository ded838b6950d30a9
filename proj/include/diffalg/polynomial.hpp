#ifndef DIFFALG_POLYNOMIAL_HPP
#define DIFFALG_POLYNOMIAL_HPP

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace diffalg {

// Dense univariate polynomial over Q(i), lowest degree first. The leading
// coefficient of a nonzero polynomial is always nonzero.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const GaussianRational& c) {
        if (!c.is_zero()) coeffs_.push_back(c);
    }
    Polynomial(long n) : Polynomial(GaussianRational(n)) {}
    explicit Polynomial(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
    Polynomial(std::initializer_list<GaussianRational> coeffs)
        : coeffs_(coeffs.begin(), coeffs.end()) {
        normalize();
    }

    static Polynomial x() { return Polynomial({GaussianRational(0), GaussianRational(1)}); }

    // c * x^e
    static Polynomial monomial(const GaussianRational& c, long e) {
        if (c.is_zero()) return {};
        std::vector<GaussianRational> v(static_cast<size_t>(e) + 1);
        v.back() = c;
        return Polynomial(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    // degree of the zero polynomial is -1 by convention
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }

    GaussianRational coeff(long e) const {
        if (e < 0 || e >= static_cast<long>(coeffs_.size())) return GaussianRational(0);
        return coeffs_[static_cast<size_t>(e)];
    }

    const GaussianRational& leading_coeff() const {
        if (is_zero()) throw std::domain_error("leading_coeff of zero polynomial");
        return coeffs_.back();
    }

    // Index of the first nonzero coefficient (order of vanishing at 0).
    long valuation_at_zero() const {
        if (is_zero()) throw std::domain_error("valuation of zero polynomial");
        for (size_t k = 0; k < coeffs_.size(); ++k)
            if (!coeffs_[k].is_zero()) return static_cast<long>(k);
        return 0; // unreachable
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<GaussianRational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(static_cast<long>(k)) + b.coeff(static_cast<long>(k));
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussianRational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (size_t ia = 0; ia < a.coeffs_.size(); ++ia) {
            if (a.coeffs_[ia].is_zero()) continue;
            for (size_t ib = 0; ib < b.coeffs_.size(); ++ib)
                v[ia + ib] += a.coeffs_[ia] * b.coeffs_[ib];
        }
        return Polynomial(std::move(v));
    }

    friend Polynomial operator*(const GaussianRational& s, Polynomial p) {
        if (s.is_zero()) return {};
        for (auto& c : p.coeffs_) c = c * s;
        return p;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Euclidean division over the field Q(i): *this = q * d + r with deg r < deg d.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        Polynomial q, r = *this;
        GaussianRational lc_inv = d.leading_coeff().inverse();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            long e = r.degree() - d.degree();
            GaussianRational c = r.leading_coeff() * lc_inv;
            q = q + monomial(c, e);
            r = r - monomial(c, e) * d;
        }
        return {q, r};
    }

    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) {
        auto [q, r] = a.divmod(b);
        if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
        return q;
    }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return a.divmod(b).second; }

    bool divides(const Polynomial& other) const { return other.divmod(*this).second.is_zero(); }

    Polynomial monic() const {
        if (is_zero()) return {};
        return leading_coeff().inverse() * *this;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<GaussianRational> v(coeffs_.size() - 1);
        for (size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = GaussianRational(static_cast<long>(k)) * coeffs_[k];
        return Polynomial(std::move(v));
    }

    GaussianRational eval(const GaussianRational& z) const {
        GaussianRational acc(0);
        for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
        return acc;
    }

    Polynomial pow(long e) const {
        if (e < 0) throw std::domain_error("negative polynomial power");
        Polynomial acc(GaussianRational(1)), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Composition this(g), by Horner.
    Polynomial compose(const Polynomial& g) const {
        Polynomial acc;
        for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * g + Polynomial(coeffs_[k]);
        return acc;
    }

    // x -> x + h
    Polynomial shift_arg(const GaussianRational& h) const {
        return compose(Polynomial({h, GaussianRational(1)}));
    }

    // x -> q*x, coefficient k picks up q^k
    Polynomial scale_arg(const GaussianRational& q) const {
        Polynomial r = *this;
        GaussianRational p(1);
        for (size_t k = 0; k < r.coeffs_.size(); ++k) {
            r.coeffs_[k] = r.coeffs_[k] * p;
            p *= q;
        }
        r.normalize();
        return r;
    }

    // x -> x^p
    Polynomial dilate_arg(long p) const {
        if (p < 1) throw std::domain_error("dilate_arg needs p >= 1");
        if (is_zero()) return {};
        std::vector<GaussianRational> v(static_cast<size_t>(degree()) * p + 1);
        for (size_t k = 0; k < coeffs_.size(); ++k) v[k * p] = coeffs_[k];
        return Polynomial(std::move(v));
    }

    // Monic gcd via the Euclidean algorithm over Q(i).
    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    static Polynomial lcm(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return ((a * b) / gcd(a, b)).monic();
    }

    int cmp(const Polynomial& o) const {
        if (degree() != o.degree()) return degree() < o.degree() ? -1 : 1;
        for (size_t k = coeffs_.size(); k-- > 0;) {
            int c = coeffs_[k].cmp(o.coeffs_[k]);
            if (c != 0) return c;
        }
        return 0;
    }
    friend bool operator<(const Polynomial& a, const Polynomial& b) { return a.cmp(b) < 0; }

    // Canonical string, descending powers, e.g. "x^2-2*x+1" or "(1+1*i)*x-3".
    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (long e = degree(); e >= 0; --e) {
            const GaussianRational c = coeff(e);
            if (c.is_zero()) continue;
            bool first = out.empty();
            std::string body;
            bool neg = false;
            if (c.is_real()) {
                Rational r = c.re();
                neg = r < 0;
                Rational a = neg ? Rational(-r) : r;
                if (e == 0)
                    body = rational_str(a);
                else if (a == 1)
                    body = "";
                else
                    body = rational_str(a) + "*";
            } else {
                body = "(" + c.str() + ")";
                if (e > 0) body += "*";
            }
            if (e > 0) {
                body += var;
                if (e > 1) body += "^" + std::to_string(e);
            }
            if (first)
                out = (neg ? "-" : "") + body;
            else
                out += (neg ? "-" : "+") + body;
        }
        return out;
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<GaussianRational> coeffs_;
};

} // namespace diffalg

#endif
