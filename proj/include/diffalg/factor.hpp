#ifndef DIFFALG_FACTOR_HPP
#define DIFFALG_FACTOR_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gaussian_integers.hpp"
#include "polynomial.hpp"

// Irreducible factorization in Q(i)[x].
//
// Route: reduce modulo one Gaussian prime pi of norm p = 1 (mod 4), so the
// residue field is F_p with i -> k, k^2 = -1 (mod p); factor there; Hensel
// lift to Z[i]/pi^m = Z/p^m; recombine with coefficients recovered through
// the rank-2 lattice {(a,b) : a + bK = 0 (mod P)}, whose shortest vector has
// norm >= sqrt(P) because K^2 = -1 (mod P).

namespace diffalg {

namespace fdetail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using FpPoly = std::vector<u64>; // ascending, trimmed

inline void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline long fp_deg(const FpPoly& f) { return static_cast<long>(f.size()) - 1; }

inline u64 fp_pow(u64 b, u64 e, u64 p) {
    u64 r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * b % p);
        b = static_cast<u64>(static_cast<u128>(b) * b % p);
        e >>= 1;
    }
    return r;
}
inline u64 fp_inv(u64 a, u64 p) { return fp_pow(a, p - 2, p); }

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<u64>((c[i + j] + static_cast<u128>(a[i]) * b[j]) % p);
    }
    fp_trim(c);
    return c;
}

inline FpPoly fp_sub(FpPoly a, const FpPoly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    fp_trim(a);
    return a;
}

inline std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, u64 p) {
    FpPoly q;
    long db = fp_deg(b);
    if (db < 0) throw std::domain_error("F_p division by zero");
    u64 inv = fp_inv(b.back(), p);
    while (fp_deg(a) >= db) {
        long sh = fp_deg(a) - db;
        u64 c = static_cast<u64>(static_cast<u128>(a.back()) * inv % p);
        if (q.size() < static_cast<size_t>(sh) + 1) q.resize(static_cast<size_t>(sh) + 1, 0);
        q[static_cast<size_t>(sh)] = (q[static_cast<size_t>(sh)] + c) % p;
        for (long i = 0; i <= db; ++i)
            a[static_cast<size_t>(i + sh)] =
                static_cast<u64>((a[static_cast<size_t>(i + sh)] + p - static_cast<u64>(static_cast<u128>(c) * b[static_cast<size_t>(i)] % p)) % p);
        fp_trim(a);
    }
    fp_trim(q);
    return {q, a};
}

inline FpPoly fp_monic(FpPoly f, u64 p) {
    if (f.empty()) return f;
    u64 inv = fp_inv(f.back(), p);
    for (auto& c : f) c = static_cast<u64>(static_cast<u128>(c) * inv % p);
    return f;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
    while (!b.empty()) {
        FpPoly r = fp_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a, p);
}

// extended euclid: g = s*a + t*b, g monic
inline void fp_eea(const FpPoly& a, const FpPoly& b, u64 p, FpPoly& g, FpPoly& s, FpPoly& t) {
    FpPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    fp_trim(r0);
    fp_trim(r1);
    while (!r1.empty()) {
        auto [q, r] = fp_divmod(r0, r1, p);
        FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
        FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    u64 inv = fp_inv(r0.back(), p);
    auto scale = [&](FpPoly f) {
        for (auto& c : f) c = static_cast<u64>(static_cast<u128>(c) * inv % p);
        return f;
    };
    g = scale(r0);
    s = scale(s0);
    t = scale(t0);
}

inline FpPoly fp_deriv(const FpPoly& f, u64 p) {
    if (f.size() <= 1) return {};
    FpPoly d(f.size() - 1);
    for (size_t k = 1; k < f.size(); ++k) d[k - 1] = static_cast<u64>(static_cast<u128>(f[k]) * (k % p) % p);
    fp_trim(d);
    return d;
}

inline FpPoly fp_powmod_big(FpPoly base, const Integer& e, const FpPoly& mod, u64 p) {
    FpPoly r = {1};
    base = fp_divmod(base, mod, p).second;
    for (long bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        r = fp_divmod(fp_mul(r, r, p), mod, p).second;
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)))
            r = fp_divmod(fp_mul(r, base, p), mod, p).second;
    }
    return r;
}

struct SplitRng {
    u64 state;
    explicit SplitRng(u64 seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    u64 next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
};

// Cantor-Zassenhaus equal-degree split of a monic squarefree product of
// degree-d irreducibles.
inline void fp_equal_degree(const FpPoly& f, long d, u64 p, SplitRng& rng, std::vector<FpPoly>& out) {
    if (fp_deg(f) == d) {
        out.push_back(f);
        return;
    }
    Integer pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
    Integer e = (pd - 1) / 2;
    for (;;) {
        FpPoly h(static_cast<size_t>(fp_deg(f)), 0);
        for (auto& c : h) c = rng.next() % p;
        h.push_back(1); // monic, degree = deg f (any nonconstant residue works)
        FpPoly w = fp_powmod_big(h, e, f, p);
        if (w.empty()) continue;
        w[0] = (w[0] + p - 1) % p;
        fp_trim(w);
        FpPoly g = fp_gcd(w, f, p);
        if (fp_deg(g) > 0 && fp_deg(g) < fp_deg(f)) {
            fp_equal_degree(g, d, p, rng, out);
            fp_equal_degree(fp_divmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

inline std::vector<FpPoly> fp_factor_squarefree(FpPoly f, u64 p) {
    f = fp_monic(f, p);
    std::vector<FpPoly> out;
    SplitRng rng(0x1234567890abcdefULL ^ (static_cast<u64>(fp_deg(f)) << 32) ^ p);
    FpPoly x = {0, 1};
    FpPoly h = fp_divmod(x, f, p).second;
    long d = 0;
    while (fp_deg(f) > 0) {
        ++d;
        if (2 * d > fp_deg(f)) {
            out.push_back(f);
            break;
        }
        h = fp_powmod_big(h, Integer(static_cast<unsigned long>(p)), f, p);
        FpPoly hx = fp_sub(h, x, p);
        FpPoly g = fp_gcd(hx, f, p);
        if (fp_deg(g) > 0) {
            fp_equal_degree(g, d, p, rng, out);
            f = fp_divmod(f, g, p).first;
            h = fp_divmod(h, f, p).second;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- arithmetic in (Z/m)[x] ----------------------------------------------

using ZPoly = std::vector<Integer>; // ascending, coefficients in [0, m)

inline void zp_trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline long zp_deg(const ZPoly& f) { return static_cast<long>(f.size()) - 1; }

inline ZPoly zp_reduce(ZPoly f, const Integer& m) {
    for (auto& c : f) {
        c %= m;
        if (c < 0) c += m;
    }
    zp_trim(f);
    return f;
}

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return zp_reduce(std::move(c), m);
}

inline ZPoly zp_add(ZPoly a, const ZPoly& b, const Integer& m) {
    if (a.size() < b.size()) a.resize(b.size(), Integer(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return zp_reduce(std::move(a), m);
}

inline ZPoly zp_sub(ZPoly a, const ZPoly& b, const Integer& m) {
    if (a.size() < b.size()) a.resize(b.size(), Integer(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return zp_reduce(std::move(a), m);
}

// division by a monic polynomial
inline std::pair<ZPoly, ZPoly> zp_divmod_monic(ZPoly a, const ZPoly& b, const Integer& m) {
    long db = zp_deg(b);
    ZPoly q;
    while (zp_deg(a) >= db) {
        long sh = zp_deg(a) - db;
        Integer c = a.back();
        if (q.size() < static_cast<size_t>(sh) + 1) q.resize(static_cast<size_t>(sh) + 1, Integer(0));
        q[static_cast<size_t>(sh)] = c;
        for (long i = 0; i <= db; ++i) {
            Integer& t = a[static_cast<size_t>(i + sh)];
            t = (t - c * b[static_cast<size_t>(i)]) % m;
            if (t < 0) t += m;
        }
        zp_trim(a);
    }
    return {zp_reduce(std::move(q), m), std::move(a)};
}

// One quadratic Hensel step (von zur Gathen-Gerhard 15.10): f = g*h and
// s*g + t*h = 1 modulo m are lifted to modulo m^2; h and h' monic.
struct HenselPair {
    ZPoly g, h, s, t;
};

inline HenselPair hensel_step(const ZPoly& f, const HenselPair& in, const Integer& m) {
    Integer m2 = m * m;
    const ZPoly &g = in.g, &h = in.h, &s = in.s, &t = in.t;
    ZPoly e = zp_sub(zp_reduce(f, m2), zp_mul(g, h, m2), m2);
    auto [q, r] = zp_divmod_monic(zp_mul(s, e, m2), h, m2);
    ZPoly g1 = zp_add(zp_add(g, zp_mul(t, e, m2), m2), zp_mul(q, g, m2), m2);
    ZPoly h1 = zp_add(h, r, m2);
    ZPoly b = zp_sub(zp_add(zp_mul(s, g1, m2), zp_mul(t, h1, m2), m2), ZPoly{Integer(1)}, m2);
    auto [c, d] = zp_divmod_monic(zp_mul(s, b, m2), h1, m2);
    ZPoly s1 = zp_sub(s, d, m2);
    ZPoly t1 = zp_sub(zp_sub(t, zp_mul(t, b, m2), m2), zp_mul(c, g1, m2), m2);
    return {g1, h1, s1, t1};
}

inline ZPoly fp_to_zp(const FpPoly& f) {
    ZPoly z(f.size());
    for (size_t i = 0; i < f.size(); ++i) z[i] = Integer(static_cast<unsigned long>(f[i]));
    return z;
}

// Lift the factorization f = prod facs (monic, mod p) to modulo P = p^{2^K}.
inline void hensel_tree(const ZPoly& f, const std::vector<FpPoly>& facs, size_t lo, size_t hi, u64 p,
                        const Integer& P, std::vector<ZPoly>& out) {
    if (hi - lo == 1) {
        out.push_back(zp_reduce(f, P));
        return;
    }
    size_t mid = lo + (hi - lo) / 2;
    FpPoly gp = {1}, hp = {1};
    for (size_t k = lo; k < mid; ++k) gp = fp_mul(gp, facs[k], p);
    for (size_t k = mid; k < hi; ++k) hp = fp_mul(hp, facs[k], p);
    FpPoly one, s, t;
    fp_eea(gp, hp, p, one, s, t);
    if (fp_deg(one) != 0) throw std::logic_error("hensel_tree: factors not coprime mod p");
    HenselPair cur{fp_to_zp(gp), fp_to_zp(hp), fp_to_zp(s), fp_to_zp(t)};
    Integer m(static_cast<unsigned long>(p));
    while (m < P) {
        cur = hensel_step(f, cur, m);
        m = m * m;
    }
    hensel_tree(zp_reduce(cur.g, P), facs, lo, mid, p, P, out);
    hensel_tree(zp_reduce(cur.h, P), facs, mid, hi, p, P, out);
}

// Recover the Gaussian integer of bounded size with a + b*K = rho (mod P).
inline std::optional<GaussianInteger> lattice_decode(const Integer& rho, const Integer& K, const Integer& P,
                                                     const Integer& bound) {
    // lattice {(a,b): a + bK = 0 mod P}, basis (P,0), (-K,1); Lagrange-reduce
    Integer ux = P, uy = 0, vx = -K, vy = 1;
    auto n2 = [](const Integer& x, const Integer& y) -> Integer { return x * x + y * y; };
    for (;;) {
        if (n2(ux, uy) < n2(vx, vy)) {
            std::swap(ux, vx);
            std::swap(uy, vy);
        }
        // mu = round(dot(u,v)/|v|^2) = floor((2*dot + nv) / (2*nv))
        Integer dot = ux * vx + uy * vy, nv = n2(vx, vy);
        Integer mu;
        mpz_fdiv_q(mu.get_mpz_t(), Integer(2 * dot + nv).get_mpz_t(), Integer(2 * nv).get_mpz_t());
        ux -= mu * vx;
        uy -= mu * vy;
        if (n2(ux, uy) >= n2(vx, vy)) break;
    }
    // target (rho, 0) = alpha*u + beta*v; det = +-P
    Integer det = ux * vy - uy * vx;
    Integer an = rho * vy, bn = -uy * rho;
    Integer a0, b0;
    mpz_fdiv_q(a0.get_mpz_t(), an.get_mpz_t(), det.get_mpz_t());
    mpz_fdiv_q(b0.get_mpz_t(), bn.get_mpz_t(), det.get_mpz_t());
    std::optional<GaussianInteger> best;
    Integer bestn = 0;
    for (long da = 0; da <= 1; ++da)
        for (long db = 0; db <= 1; ++db) {
            Integer al = a0 + da, be = b0 + db;
            Integer x = rho - (al * ux + be * vx);
            Integer y = -(al * uy + be * vy);
            Integer nn = n2(x, y);
            if (!best || nn < bestn) {
                best = GaussianInteger(x, y);
                bestn = nn;
            }
        }
    if (!best) return std::nullopt;
    if (abs(best->a) > bound || abs(best->b) > bound) return std::nullopt;
    return best;
}

} // namespace fdetail

// ---- Q(i)[x] factorization -------------------------------------------------

struct FactoredPolynomial {
    GaussianRational unit;
    std::vector<std::pair<Polynomial, long>> factors; // monic irreducible, multiplicity
};

namespace fdetail {

struct ZiPoly {
    std::vector<GaussianInteger> c; // ascending, primitive
};

// primitive Z[i] representative of a nonzero Q(i) polynomial (content dropped)
inline ZiPoly to_primitive(const Polynomial& f) {
    Integer d(1);
    for (const auto& e : f.coeffs()) d = lcm(lcm(d, e.re().get_den()), e.im().get_den());
    ZiPoly out;
    out.c.resize(f.coeffs().size());
    for (size_t k = 0; k < f.coeffs().size(); ++k) {
        Rational re = f.coeffs()[k].re() * d, im = f.coeffs()[k].im() * d;
        out.c[k] = GaussianInteger(re.get_num(), im.get_num());
    }
    GaussianInteger content;
    for (const auto& e : out.c) content = gi_gcd(content, e);
    content = gi_canonical(content).first;
    if (!content.is_zero() && !content.is_unit())
        for (auto& e : out.c) {
            GaussianInteger q;
            gi_divides(content, e, &q);
            e = q;
        }
    return out;
}

inline Polynomial zi_to_poly(const ZiPoly& f) {
    std::vector<GaussianRational> v(f.c.size());
    for (size_t k = 0; k < f.c.size(); ++k) v[k] = f.c[k].to_field();
    return Polynomial(std::move(v));
}

inline u64 coeff_mod_p(const GaussianInteger& z, const Integer& k, u64 p) {
    Integer r = (z.a + z.b * k) % Integer(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
}

// Zassenhaus on a squarefree primitive Z[i] polynomial; returns monic factors.
inline std::vector<Polynomial> zassenhaus_squarefree(const ZiPoly& G) {
    long n = static_cast<long>(G.c.size()) - 1;
    Polynomial Gpoly = zi_to_poly(G);
    if (n <= 1) return {Gpoly.monic()};

    // choose a prime of the form 1 mod 4 with invertible lc and squarefree image
    u64 p = 0;
    Integer kroot;
    FpPoly img;
    for (u64 cand = 268435459ULL;; cand += 2) {
        if (cand % 4 != 1) continue;
        if (!is_probable_prime(Integer(static_cast<unsigned long>(cand)))) continue;
        Integer kk = sqrt_minus_one_mod(Integer(static_cast<unsigned long>(cand)));
        FpPoly f(G.c.size());
        for (size_t j = 0; j < G.c.size(); ++j) f[j] = coeff_mod_p(G.c[j], kk, cand);
        if (f.back() == 0) continue;
        FpPoly fm = fp_monic(f, cand);
        if (fp_deg(fp_gcd(fm, fp_deriv(fm, cand), cand)) != 0) continue;
        p = cand;
        kroot = kk;
        img = fm;
        break;
    }

    std::vector<FpPoly> facs = fp_factor_squarefree(img, p);
    if (facs.size() == 1) return {Gpoly.monic()};

    // coefficient bound: Mignotte-style over C, with the leading coefficient folded in
    Integer norm2(0);
    for (const auto& e : G.c) norm2 += e.norm();
    Integer twonorm = sqrt(norm2) + 1;
    Integer lcabs = sqrt(G.c.back().norm()) + 1;
    Integer bound = (twonorm + 1) * (lcabs + 1);
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n + 1));
    Integer target = 16 * bound * bound + 1;

    Integer P(static_cast<unsigned long>(p));
    Integer K = kroot;
    while (P < target) {
        // Newton-lift K along the modulus chain: K' = K - (K^2+1) / (2K)
        Integer P2 = P * P;
        Integer inv2k;
        if (mpz_invert(inv2k.get_mpz_t(), Integer(2 * K).get_mpz_t(), P2.get_mpz_t()) == 0)
            throw std::logic_error("lost invertibility while lifting sqrt(-1)");
        K = (K - ((K * K + 1) % P2) * inv2k) % P2;
        if (K < 0) K += P2;
        P = P2;
    }

    // monic version of G mod P
    auto gi_mod = [&](const GaussianInteger& z) {
        Integer r = (z.a + z.b * K) % P;
        if (r < 0) r += P;
        return r;
    };
    ZPoly GP(G.c.size());
    for (size_t j = 0; j < G.c.size(); ++j) GP[j] = gi_mod(G.c[j]);
    Integer lcinv;
    if (mpz_invert(lcinv.get_mpz_t(), GP.back().get_mpz_t(), P.get_mpz_t()) == 0)
        throw std::logic_error("leading coefficient not invertible mod P");
    ZPoly Fstar(GP.size());
    for (size_t j = 0; j < GP.size(); ++j) Fstar[j] = GP[j] * lcinv % P;

    std::vector<ZPoly> lifted;
    hensel_tree(Fstar, facs, 0, facs.size(), p, P, lifted);

    // recombination
    std::vector<size_t> remaining(facs.size());
    for (size_t k = 0; k < remaining.size(); ++k) remaining[k] = k;
    Polynomial current = Gpoly;
    std::vector<Polynomial> out;

    auto current_lc_mod = [&]() {
        ZiPoly cur = to_primitive(current);
        return gi_mod(cur.c.back());
    };

    size_t s = 1;
    Integer lcP = current_lc_mod();
    while (2 * s <= remaining.size()) {
        // iterate subsets of size s in deterministic lexicographic order
        std::vector<size_t> idx(s);
        for (size_t k = 0; k < s; ++k) idx[k] = k;
        bool found = false;
        for (;;) {
            ZPoly prod = {lcP};
            for (size_t k = 0; k < s; ++k) prod = zp_mul(prod, lifted[remaining[idx[k]]], P);
            // decode to Z[i]
            bool ok = true;
            ZiPoly cand;
            cand.c.resize(prod.size());
            for (size_t j = 0; j < prod.size() && ok; ++j) {
                auto dec = lattice_decode(prod[j], K, P, bound);
                if (!dec)
                    ok = false;
                else
                    cand.c[j] = *dec;
            }
            if (ok) {
                // primitive part, then exact divisibility test in Q(i)[x]
                GaussianInteger content;
                for (const auto& e : cand.c) content = gi_gcd(content, e);
                if (!content.is_zero() && !content.is_unit()) {
                    for (auto& e : cand.c) {
                        GaussianInteger q;
                        gi_divides(content, e, &q);
                        e = q;
                    }
                }
                Polynomial candpoly = zi_to_poly(cand);
                if (!candpoly.is_constant() && candpoly.divides(current)) {
                    out.push_back(candpoly.monic());
                    current = current / candpoly;
                    std::vector<size_t> keep;
                    for (size_t k = 0, j = 0; k < remaining.size(); ++k) {
                        if (j < s && idx[j] == k)
                            ++j;
                        else
                            keep.push_back(remaining[k]);
                    }
                    remaining = std::move(keep);
                    lcP = current_lc_mod();
                    found = true;
                    break;
                }
            }
            // next subset
            long k = static_cast<long>(s) - 1;
            while (k >= 0 && idx[static_cast<size_t>(k)] == remaining.size() - s + static_cast<size_t>(k)) --k;
            if (k < 0) break;
            ++idx[static_cast<size_t>(k)];
            for (size_t j = static_cast<size_t>(k) + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (current.degree() > 0) out.push_back(current.monic());
    return out;
}

} // namespace fdetail

// Yun squarefree decomposition over Q(i); returns monic squarefree parts with
// multiplicities, f = unit * prod part^mult.
inline std::vector<std::pair<Polynomial, long>> squarefree_decomposition(const Polynomial& f) {
    std::vector<std::pair<Polynomial, long>> parts;
    Polynomial b = f.monic();
    if (b.degree() < 1) return parts;
    Polynomial db = b.derivative();
    Polynomial a = Polynomial::gcd(b, db);
    b = b / a;
    Polynomial c = db / a;
    Polynomial d = c - b.derivative();
    for (long i = 1; b.degree() > 0; ++i) {
        Polynomial ai = Polynomial::gcd(b, d);
        if (ai.degree() > 0) parts.emplace_back(ai.monic(), i);
        b = b / ai;
        c = d / ai;
        d = c - b.derivative();
    }
    return parts;
}

// Full irreducible factorization over Q(i).
inline FactoredPolynomial factor_polynomial(const Polynomial& f) {
    if (f.is_zero()) throw std::domain_error("factorization of the zero polynomial");
    FactoredPolynomial out;
    out.unit = f.leading_coeff();
    if (f.degree() < 1) return out;
    for (auto& [part, mult] : squarefree_decomposition(f)) {
        fdetail::ZiPoly G = fdetail::to_primitive(part);
        for (auto& irr : fdetail::zassenhaus_squarefree(G)) out.factors.emplace_back(irr, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        int c = x.first.cmp(y.first);
        if (c != 0) return c < 0;
        return x.second < y.second;
    });
    // exactness audit: the product must reproduce f
    Polynomial check(out.unit);
    for (auto& [g, m] : out.factors) check = check * g.pow(m);
    if (check != f) throw std::logic_error("factor_polynomial: product check failed");
    return out;
}

} // namespace diffalg

#endif
