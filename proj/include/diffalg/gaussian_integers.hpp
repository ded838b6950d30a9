#ifndef DIFFALG_GAUSSIAN_INTEGERS_HPP
#define DIFFALG_GAUSSIAN_INTEGERS_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace diffalg {

// Element of Z[i].
struct GaussianInteger {
    Integer a, b; // a + b*i

    GaussianInteger() : a(0), b(0) {}
    GaussianInteger(Integer a_, Integer b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
    GaussianInteger(long a_, long b_ = 0) : a(a_), b(b_) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_unit() const { return norm() == 1; }
    Integer norm() const { return a * a + b * b; }
    GaussianInteger conj() const { return {a, -b}; }

    friend GaussianInteger operator+(const GaussianInteger& x, const GaussianInteger& y) { return {x.a + y.a, x.b + y.b}; }
    friend GaussianInteger operator-(const GaussianInteger& x, const GaussianInteger& y) { return {x.a - y.a, x.b - y.b}; }
    friend GaussianInteger operator*(const GaussianInteger& x, const GaussianInteger& y) {
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
    }
    GaussianInteger operator-() const { return {-a, -b}; }

    friend bool operator==(const GaussianInteger& x, const GaussianInteger& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const GaussianInteger& x, const GaussianInteger& y) { return !(x == y); }
    friend bool operator<(const GaussianInteger& x, const GaussianInteger& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }

    GaussianRational to_field() const { return {Rational(a), Rational(b)}; }
    std::string str() const { return to_field().str(); }
};

inline GaussianInteger mul_i_power(const GaussianInteger& z, long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return z;
        case 1: return {-z.b, z.a};
        case 2: return -z;
        default: return {z.b, -z.a};
    }
}

// Rounded division: quotient nearest to z/w, remainder of norm < norm(w).
inline std::pair<GaussianInteger, GaussianInteger> gi_divmod(const GaussianInteger& z, const GaussianInteger& w) {
    if (w.is_zero()) throw std::domain_error("Gaussian integer division by zero");
    Integer n = w.norm();
    GaussianInteger t = z * w.conj();
    auto round_div = [&](const Integer& num) {
        Integer q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
        if (2 * r >= n) q += 1;
        return q;
    };
    GaussianInteger q(round_div(t.a), round_div(t.b));
    GaussianInteger r = z - q * w;
    return {q, r};
}

inline bool gi_divides(const GaussianInteger& d, const GaussianInteger& z, GaussianInteger* quotient = nullptr) {
    auto [q, r] = gi_divmod(z, d);
    if (!r.is_zero()) return false;
    if (quotient) *quotient = q;
    return true;
}

inline GaussianInteger gi_gcd(GaussianInteger x, GaussianInteger y) {
    while (!y.is_zero()) {
        auto [q, r] = gi_divmod(x, y);
        x = y;
        y = r;
    }
    return x;
}

// Canonical associate: the unique unit multiple with a > 0, b >= 0.
// Returns {canonical, k} with z = i^k * canonical.
inline std::pair<GaussianInteger, long> gi_canonical(GaussianInteger z) {
    if (z.is_zero()) return {z, 0};
    long k = 0;
    while (!(z.a > 0 && z.b >= 0)) {
        z = mul_i_power(z, 1); // z *= i
        k = (k + 3) % 4;       // original = i^k * canonical
    }
    return {z, k};
}

// ---- rational integer factorization -------------------------------------

inline bool is_probable_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

namespace detail {

inline Integer pollard_brent(const Integer& n) {
    if (n % 2 == 0) return 2;
    // deterministic parameter sweep; n is odd, composite, not a prime power of 2
    for (long c = 1;; ++c) {
        Integer y = 2, m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
        while (g == 1) {
            x = y;
            for (Integer i = 0; i < r; ++i) y = (y * y + c) % n;
            Integer k = 0;
            while (k < r && g == 1) {
                ys = y;
                Integer lim = std::min(m, Integer(r - k));
                for (Integer i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    Integer d = x - y;
                    if (d < 0) d = -d;
                    q = q * d % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                Integer d = x - ys;
                if (d < 0) d = -d;
                g = gcd(d, n);
            }
        }
        if (g != n) return g;
    }
}

inline void factor_integer_rec(Integer n, std::map<Integer, long>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Integer d = pollard_brent(n);
    factor_integer_rec(d, out);
    factor_integer_rec(n / d, out);
}

} // namespace detail

// n >= 1
inline std::map<Integer, long> factor_integer(Integer n) {
    if (n < 1) throw std::domain_error("factor_integer needs n >= 1");
    std::map<Integer, long> out;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (n % p == 0) {
            ++out[Integer(p)];
            n /= p;
        }
    }
    for (long p = 41; p < 65536 && n > 1; p += 2) {
        if (Integer(p) * p > n) break;
        while (n % p == 0) {
            ++out[Integer(p)];
            n /= p;
        }
    }
    if (n > 1) detail::factor_integer_rec(n, out);
    return out;
}

inline Integer pow_mod(Integer base, Integer e, const Integer& m) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// square root of -1 modulo a prime p = 1 (mod 4)
inline Integer sqrt_minus_one_mod(const Integer& p) {
    for (Integer d = 2;; d += 1) {
        Integer ls = pow_mod(d, (p - 1) / 2, p);
        if (ls == p - 1) return pow_mod(d, (p - 1) / 4, p);
    }
}

// canonical Gaussian prime above the rational prime p
inline GaussianInteger gaussian_prime_above(const Integer& p) {
    if (p == 2) return {1, 1};
    if (p % 4 == 3) return {p, 0};
    Integer k = sqrt_minus_one_mod(p);
    GaussianInteger pi = gi_gcd(GaussianInteger(p, 0), GaussianInteger(k, 1));
    return gi_canonical(pi).first;
}

// Factorization in Z[i]: z = i^unit_exp * prod primes^e, primes canonical.
struct GaussianFactorization {
    long unit_exp = 0;
    std::map<GaussianInteger, long> primes;
};

inline GaussianFactorization factor_gaussian_integer(GaussianInteger z) {
    if (z.is_zero()) throw std::domain_error("factorization of zero");
    GaussianFactorization out;
    std::map<Integer, long> nf = factor_integer(z.norm());
    for (auto& [p, e] : nf) {
        if (p == 2) {
            GaussianInteger pi(1, 1);
            long v = 0;
            GaussianInteger q;
            while (gi_divides(pi, z, &q)) {
                z = q;
                ++v;
            }
            if (v) out.primes[pi] = v;
        } else if (p % 4 == 3) {
            GaussianInteger pi(p, 0);
            long v = 0;
            GaussianInteger q;
            while (gi_divides(pi, z, &q)) {
                z = q;
                ++v;
            }
            if (v) out.primes[pi] = v;
        } else {
            GaussianInteger pi = gaussian_prime_above(p);
            for (GaussianInteger cand : {pi, gi_canonical(pi.conj()).first}) {
                long v = 0;
                GaussianInteger q;
                while (gi_divides(cand, z, &q)) {
                    z = q;
                    ++v;
                }
                if (v) out.primes[cand] += v;
            }
        }
    }
    if (!z.is_unit()) throw std::logic_error("factor_gaussian_integer: nonunit cofactor");
    if (z.a == 1) out.unit_exp = 0;
    else if (z.b == 1) out.unit_exp = 1;
    else if (z.a == -1) out.unit_exp = 2;
    else out.unit_exp = 3;
    return out;
}

// Factorization of q in Q(i)^*, exponents in Z.
inline GaussianFactorization factor_gaussian_rational(const GaussianRational& q) {
    if (q.is_zero()) throw std::domain_error("factorization of zero");
    Integer d = lcm(q.re().get_den(), q.im().get_den());
    GaussianInteger num(q.re().get_num() * (d / q.re().get_den()), q.im().get_num() * (d / q.im().get_den()));
    GaussianFactorization fn = factor_gaussian_integer(num);
    if (d != 1) {
        GaussianFactorization fd = factor_gaussian_integer(GaussianInteger(d, 0));
        fn.unit_exp = ((fn.unit_exp - fd.unit_exp) % 4 + 4) % 4;
        for (auto& [pi, e] : fd.primes) {
            fn.primes[pi] -= e;
            if (fn.primes[pi] == 0) fn.primes.erase(pi);
        }
    }
    return fn;
}

// exact power with a possibly huge integer exponent is never needed: relations
// are verified on exponent vectors plus the unit part (Z[i] is a UFD).

// Multiplicative dependence in Q(i)^*: finds (n1, n2) != (0,0) with
// q1^n1 * q2^n2 = 1, if one exists.
struct MultiplicativeRelation {
    bool dependent = false;
    Integer n1, n2;
};

inline MultiplicativeRelation multiplicative_relation(const GaussianRational& q1, const GaussianRational& q2) {
    GaussianFactorization f1 = factor_gaussian_rational(q1);
    GaussianFactorization f2 = factor_gaussian_rational(q2);

    auto unit_order_fix = [](long e) {
        // smallest t >= 1 with t*e = 0 (mod 4)
        e = ((e % 4) + 4) % 4;
        if (e == 0) return 1L;
        if (e == 2) return 2L;
        return 4L;
    };

    // collect the union of primes into exponent vectors
    std::map<GaussianInteger, std::pair<Integer, Integer>> vec;
    for (auto& [pi, e] : f1.primes) vec[pi].first = e;
    for (auto& [pi, e] : f2.primes) vec[pi].second = e;

    MultiplicativeRelation rel;
    bool z1 = f1.primes.empty(), z2 = f2.primes.empty();
    if (z1 || z2) {
        // a unit is a root of unity: q^4 = 1
        rel.dependent = true;
        if (z1) {
            rel.n1 = 4;
            rel.n2 = 0;
        } else {
            rel.n1 = 0;
            rel.n2 = 4;
        }
        return rel;
    }
    // parallel test via cross products
    for (auto it1 = vec.begin(); it1 != vec.end(); ++it1)
        for (auto it2 = std::next(it1); it2 != vec.end(); ++it2)
            if (it1->second.first * it2->second.second != it1->second.second * it2->second.first)
                return rel; // independent
    // v2 = (p/q) * v1 with p/q in lowest terms
    auto anchor = vec.begin();
    while (anchor->second.first == 0) ++anchor;
    Rational ratio(anchor->second.second, anchor->second.first);
    ratio.canonicalize();
    Integer n1 = -ratio.get_num(), n2 = ratio.get_den();
    // unit part of q1^n1 * q2^n2: i-exponent must vanish mod 4 (prime parts cancel)
    Integer e = n1 * f1.unit_exp + n2 * f2.unit_exp;
    long t = unit_order_fix(static_cast<long>(mpz_fdiv_ui(e.get_mpz_t(), 4)));
    rel.dependent = true;
    rel.n1 = n1 * t;
    rel.n2 = n2 * t;
    return rel;
}

} // namespace diffalg

#endif
