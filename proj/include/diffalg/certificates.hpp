#ifndef DIFFALG_CERTIFICATES_HPP
#define DIFFALG_CERTIFICATES_HPP

#include "divisor.hpp"
#include "guess.hpp"
#include "systems.hpp"

namespace diffalg {

// Witness for a = c * x^n * phi(b)/b. For 2M the function b may live in the
// ramified variable u = x^{1/b_ramification}; n is 0 outside case 2Q.
struct Certificate {
    GaussianRational c;
    Rational n;
    RationalFunction b;
    long b_ramification = 1;
};

struct VerifyResult {
    bool valid = false;
    std::string reason;
    RationalFunction residual; // a*b/(c*x^n*phi(b)) - 1 in the working variable
};

inline VerifyResult verify_certificate(const RationalFunction& a, const Certificate& cert, const OperatorPair& pair,
                                       OpRole role) {
    VerifyResult out;
    if (a.is_zero()) {
        out.reason = "a must be nonzero";
        return out;
    }
    if (cert.c.is_zero() || cert.b.is_zero() || cert.b_ramification < 1) {
        out.reason = "ill-formed certificate: c and b must be nonzero";
        return out;
    }
    if (pair.op_case() != OpCase::qdiff_2q && cert.n != 0) {
        out.reason = "ill-formed certificate: n = 0 outside case 2Q";
        return out;
    }
    switch (pair.op_case()) {
        case OpCase::shift_2s: {
            if (cert.b_ramification != 1) {
                out.reason = "shift certificates use the unramified variable";
                return out;
            }
            RationalFunction ratio = apply_op(role, pair, cert.b) / cert.b;
            out.residual = a / (RationalFunction(cert.c) * ratio) - RationalFunction(1);
            break;
        }
        case OpCase::qdiff_2q: {
            if (cert.b_ramification != 1) {
                out.reason = "q-difference certificates over Q(i) use the unramified variable";
                return out;
            }
            if (cert.n.get_den() != 1) {
                out.reason = "fractional n needs a declared root of q, unavailable in Q(i)";
                return out;
            }
            long n = static_cast<long>(cert.n.get_num().get_si());
            RationalFunction xn = RationalFunction(Polynomial::x()).pow(n);
            RationalFunction ratio = apply_op(role, pair, cert.b) / cert.b;
            out.residual = a / (RationalFunction(cert.c) * xn * ratio) - RationalFunction(1);
            break;
        }
        default: { // 2M, in the variable u = x^{1/L}
            long L = cert.b_ramification;
            long p = pair.mahler_exponent(role);
            RationalFunction au = a.dilate_arg(L); // a(u^L)
            RationalFunction phib = cert.b.dilate_arg(p);
            out.residual = au / (RationalFunction(cert.c) * phib / cert.b) - RationalFunction(1);
            break;
        }
    }
    out.valid = out.residual.is_zero();
    if (!out.valid && out.reason.empty()) out.reason = "a*b/(c*x^n*phi(b)) differs from 1";
    return out;
}

// ---- the decision procedure ---------------------------------------------------

struct CertificateOptions {
    long k_max = 64;              // bounded discrete-log search when |q| = 1
    long mahler_order = 256;      // truncation used by the 2M solve-and-guess route
    long mahler_guess_bound = 24; // rationality_guess degree bound
};

struct CertificateDecision {
    enum class Status { found, no_certificate, inconclusive };
    Status status = Status::no_certificate;
    std::optional<Certificate> certificate;
    long bound = 0;
    std::string detail;
};

namespace cdetail {

struct DlogResult {
    enum class Kind { found, not_related, exhausted } kind;
    long exponent = 0;
};

// exact discrete log of rho in the subgroup generated by q
inline DlogResult discrete_log(const GaussianRational& rho, const GaussianRational& q, long k_max) {
    if (rho.is_one()) return {DlogResult::Kind::found, 0};
    if (q.norm() != 1) {
        GaussianFactorization fq = factor_gaussian_rational(q);
        GaussianFactorization fr = factor_gaussian_rational(rho);
        // pick a prime carried by q and solve for the exponent
        for (auto& [pi, e] : fq.primes) {
            if (e == 0) continue;
            long er = fr.primes.count(pi) ? fr.primes[pi] : 0;
            if (er % e != 0) return {DlogResult::Kind::not_related, 0};
            long cand = er / e;
            return q.pow(cand) == rho ? DlogResult{DlogResult::Kind::found, cand}
                                      : DlogResult{DlogResult::Kind::not_related, 0};
        }
        return {DlogResult::Kind::not_related, 0};
    }
    if (rho.norm() != 1) return {DlogResult::Kind::not_related, 0};
    GaussianRational up(1), down(1);
    for (long k = 1; k <= k_max; ++k) {
        up *= q;
        if (up == rho) return {DlogResult::Kind::found, k};
        down /= q;
        if (down == rho) return {DlogResult::Kind::found, -k};
    }
    return {DlogResult::Kind::exhausted, 0};
}

// offset k with pj(x) = monic(pi(q^k x)), for monic pi, pj
inline DlogResult q_orbit_offset(const Polynomial& pi, const Polynomial& pj, const GaussianRational& q, long k_max) {
    long d = pi.degree();
    if (pj.degree() != d) return {DlogResult::Kind::not_related, 0};
    if (pi == pj) return {DlogResult::Kind::found, 0};
    long idx = -1;
    for (long j = d - 1; j >= 0; --j)
        if (!pi.coeff(j).is_zero() || !pj.coeff(j).is_zero()) {
            idx = j;
            break;
        }
    if (idx < 0) return {DlogResult::Kind::not_related, 0}; // both are x^d, excluded upstream
    if (pi.coeff(idx).is_zero() || pj.coeff(idx).is_zero()) return {DlogResult::Kind::not_related, 0};
    // monic(pi(q^k x)) has coefficient pi_j * q^{-k(d-j)} at x^j
    GaussianRational rho = pj.coeff(idx) / pi.coeff(idx);
    DlogResult dl = discrete_log(rho, q, k_max);
    if (dl.kind != DlogResult::Kind::found) return dl;
    if (dl.exponent % (d - idx) != 0) return {DlogResult::Kind::not_related, 0};
    long k = -dl.exponent / (d - idx);
    Polynomial shifted = pi.scale_arg(q.pow(k)).monic();
    if (shifted == pj) return {DlogResult::Kind::found, k};
    return {DlogResult::Kind::not_related, 0};
}

} // namespace cdetail

inline CertificateDecision decide_certificate(const RationalFunction& a, const OperatorPair& pair, OpRole role,
                                              const CertificateOptions& opts = {}) {
    if (a.is_zero()) throw std::invalid_argument("decide_certificate needs a != 0");
    CertificateDecision out;
    switch (pair.op_case()) {
        case OpCase::shift_2s: {
            const GaussianRational& h1 = pair.param(role);
            // factor and bucket by shift class with offsets
            std::map<Polynomial, std::map<long, long>> classes;
            auto absorb = [&](const Polynomial& poly, long sign) {
                if (poly.degree() < 1) return;
                for (const auto& [p, m] : factor_polynomial(poly).factors) {
                    auto [rep, k] = shift_class_canonical(p, h1);
                    classes[rep][k] += sign * m;
                }
            };
            absorb(a.num(), +1);
            absorb(a.den(), -1);
            RationalFunction b(1);
            for (const auto& [rep, offs] : classes) {
                long total = 0;
                for (auto& [k, m] : offs) total += m;
                if (total != 0) {
                    out.status = CertificateDecision::Status::no_certificate;
                    out.detail = "h1-divisor is nonzero at the class of " + rep.str();
                    return out;
                }
                // telescoping: b *= prod_j rep(x + j h1)^{-S_j}, S_j the running sum
                long lo = offs.begin()->first, hi = offs.rbegin()->first;
                long running = 0;
                for (long j = lo; j < hi; ++j) {
                    auto it = offs.find(j);
                    if (it != offs.end()) running += it->second;
                    if (running == 0) continue;
                    RationalFunction repj(rep.shift_arg(GaussianRational(Rational(j)) * h1));
                    b = b * repj.pow(-running);
                }
            }
            RationalFunction c = a * b / apply_op(role, pair, b);
            if (!c.is_constant()) throw std::logic_error("2S telescoping failed to produce a constant");
            Certificate cert{c.constant_value(), Rational(0), b, 1};
            if (!verify_certificate(a, cert, pair, role).valid)
                throw std::logic_error("2S certificate failed verification");
            out.status = CertificateDecision::Status::found;
            out.certificate = cert;
            return out;
        }

        case OpCase::qdiff_2q: {
            const GaussianRational& q = pair.param(role);
            bool norm_one = q.norm() == 1;
            bool exhausted_somewhere = false;
            // split off the x-power and the constant; bucket the rest
            long v0 = 0;
            std::vector<std::pair<Polynomial, long>> fac;
            auto absorb = [&](const Polynomial& poly, long sign) {
                if (poly.degree() < 1) return;
                for (const auto& [p, m] : factor_polynomial(poly).factors) {
                    if (p == Polynomial::x()) {
                        v0 += sign * m;
                        continue;
                    }
                    fac.emplace_back(p, sign * m);
                }
            };
            absorb(a.num(), +1);
            absorb(a.den(), -1);
            // union-find over factors with orbit offsets
            size_t nf = fac.size();
            std::vector<size_t> parent(nf);
            std::vector<long> off(nf, 0); // offset of member relative to its root
            for (size_t i = 0; i < nf; ++i) parent[i] = i;
            std::function<std::pair<size_t, long>(size_t)> find = [&](size_t i) -> std::pair<size_t, long> {
                if (parent[i] == i) return {i, 0};
                auto [r, o] = find(parent[i]);
                parent[i] = r;
                off[i] += o;
                return {r, off[i]};
            };
            for (size_t i = 0; i < nf; ++i)
                for (size_t j = i + 1; j < nf; ++j) {
                    auto [ri, oi] = find(i);
                    auto [rj, oj] = find(j);
                    if (ri == rj) continue;
                    auto dl = cdetail::q_orbit_offset(fac[i].first, fac[j].first, q, opts.k_max);
                    if (dl.kind == cdetail::DlogResult::Kind::exhausted) {
                        exhausted_somewhere = true;
                        continue;
                    }
                    if (dl.kind == cdetail::DlogResult::Kind::not_related) continue;
                    // fac[j] = monic(fac[i](q^k x)): join with offset bookkeeping
                    parent[rj] = ri;
                    off[rj] = oi + dl.exponent - oj;
                }
            // orbit buckets
            std::map<size_t, std::map<long, long>> orbits;
            for (size_t i = 0; i < nf; ++i) {
                auto [r, o] = find(i);
                orbits[r][o] += fac[i].second;
            }
            RationalFunction b(1);
            for (const auto& [root, offs] : orbits) {
                long total = 0;
                for (auto& [k, m] : offs) total += m;
                if (total != 0) {
                    if (norm_one && exhausted_somewhere) {
                        out.status = CertificateDecision::Status::inconclusive;
                        out.bound = opts.k_max;
                        out.detail = "orbit pairing exhausted the bounded discrete-log search (|q| = 1)";
                        return out;
                    }
                    out.status = CertificateDecision::Status::no_certificate;
                    out.detail = "q-orbit multiplicity sum is nonzero at the orbit of " + fac[root].first.str();
                    return out;
                }
                long lo = offs.begin()->first, hi = offs.rbegin()->first;
                long running = 0;
                for (long j = lo; j < hi; ++j) {
                    auto it = offs.find(j);
                    if (it != offs.end()) running += it->second;
                    if (running == 0) continue;
                    RationalFunction repj(fac[root].first.scale_arg(q.pow(j)).monic());
                    b = b * repj.pow(-running);
                }
            }
            RationalFunction xn = RationalFunction(Polynomial::x()).pow(v0);
            RationalFunction c = a * b / (xn * apply_op(role, pair, b));
            if (!c.is_constant()) throw std::logic_error("2Q telescoping failed to produce a constant");
            Certificate cert{c.constant_value(), Rational(v0), b, 1};
            if (!verify_certificate(a, cert, pair, role).valid)
                throw std::logic_error("2Q certificate failed verification");
            out.status = CertificateDecision::Status::found;
            out.certificate = cert;
            return out;
        }

        default: { // 2M: solve-and-guess, a semi-decision by design
            long p = pair.mahler_exponent(role);
            long va = a.valuation_at_zero();
            GaussianRational ta = a.leading_coeff_at_zero();
            Order1Solution sol = solve_order1(a, RationalFunction(), pair, role, opts.mahler_order);
            Rational s = make_rational(va, p - 1);
            // strip x^s to land on the integer grid
            PuiseuxSeries z = sol.puiseux() *
                              PuiseuxSeries::monomial(GaussianRational(1), -s, -s + sol.puiseux().order() + 1);
            auto guess = rationality_guess(z, opts.mahler_guess_bound);
            if (!guess) {
                out.status = CertificateDecision::Status::inconclusive;
                out.bound = opts.mahler_guess_bound;
                out.detail = "normalized solution shows no linear recurrence at the bound; the criterion is a "
                             "semi-decision for Mahler operators";
                return out;
            }
            // b(u) = z(u^L) * u^{v_a * L/(p-1)} in u = x^{1/L}
            long L = static_cast<long>(s.get_den().get_si());
            long sn = static_cast<long>(Rational(s * L).get_num().get_si());
            RationalFunction b = guess->dilate_arg(L) * RationalFunction(Polynomial::x()).pow(sn);
            Certificate cert{ta, Rational(0), b, L};
            if (!verify_certificate(a, cert, pair, role).valid)
                throw std::logic_error("2M certificate failed verification after a successful guess");
            out.status = CertificateDecision::Status::found;
            out.certificate = cert;
            return out;
        }
    }
}

} // namespace diffalg

#endif
