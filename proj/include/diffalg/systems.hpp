#ifndef DIFFALG_SYSTEMS_HPP
#define DIFFALG_SYSTEMS_HPP

#include <variant>

#include "matrix.hpp"
#include "operators.hpp"

namespace diffalg {

// sum_i coeffs[i] * op^i(y) = rhs, order n = coeffs.size()-1 >= 1
struct ScalarEquation {
    OpRole role;
    OperatorPair pair;
    std::vector<RationalFunction> coeffs; // a_0 .. a_n
    RationalFunction rhs;

    ScalarEquation(OpRole role_, OperatorPair pair_, std::vector<RationalFunction> coeffs_,
                   RationalFunction rhs_ = RationalFunction())
        : role(role_), pair(std::move(pair_)), coeffs(std::move(coeffs_)), rhs(std::move(rhs_)) {
        if (coeffs.size() < 2) throw std::invalid_argument("scalar equation needs order >= 1");
        if (coeffs.back().is_zero()) throw std::invalid_argument("leading coefficient a_n must be nonzero");
    }

    long order() const { return static_cast<long>(coeffs.size()) - 1; }
    bool homogeneous() const { return rhs.is_zero(); }

    // divide through by a_n
    ScalarEquation normalized() const {
        ScalarEquation eq = *this;
        RationalFunction an = coeffs.back();
        if (!an.is_one()) {
            for (auto& c : eq.coeffs) c = c / an;
            eq.rhs = eq.rhs / an;
        }
        return eq;
    }

    static ScalarEquation order1(OpRole role, const OperatorPair& pair, const RationalFunction& a,
                                 const RationalFunction& b) {
        // phi(y) = a*y + b  <=>  -a*y + phi(y) = b
        return ScalarEquation(role, pair, {-a, RationalFunction(1)}, b);
    }
};

struct DiffSystem {
    OpRole role;
    OperatorPair pair;
    Matrix<RationalFunction> A;

    DiffSystem(OpRole role_, OperatorPair pair_, Matrix<RationalFunction> A_)
        : role(role_), pair(std::move(pair_)), A(std::move(A_)) {
        if (!A.is_square()) throw std::invalid_argument("difference system matrix must be square");
        if (matrix_det(A).is_zero()) throw std::invalid_argument("difference system matrix must be invertible");
    }

    long dim() const { return A.rows(); }
};

inline Matrix<RationalFunction> apply_op(OpRole role, const OperatorPair& pair, const Matrix<RationalFunction>& M) {
    return M.map([&](const RationalFunction& f) { return apply_op(role, pair, f); });
}

// companion matrix of a homogeneous scalar equation with a_0 != 0
inline DiffSystem companion_system(const ScalarEquation& eq_in) {
    if (!eq_in.homogeneous()) throw std::invalid_argument("companion form needs a homogeneous equation");
    ScalarEquation eq = eq_in.normalized();
    if (eq.coeffs[0].is_zero()) throw SingularLeadingCoefficient();
    long n = eq.order();
    Matrix<RationalFunction> A(n, n);
    for (long k = 0; k + 1 < n; ++k) A.at(k, k + 1) = RationalFunction(1);
    for (long j = 0; j < n; ++j) A.at(n - 1, j) = -eq.coeffs[static_cast<size_t>(j)];
    return DiffSystem(eq.role, eq.pair, std::move(A));
}

// A~ = op(T) * A * T^{-1}
inline DiffSystem gauge_transform(const DiffSystem& sys, const Matrix<RationalFunction>& T) {
    if (!T.is_square() || T.rows() != sys.dim()) throw DimensionMismatch("gauge matrix dimension mismatch");
    if (matrix_det(T).is_zero()) throw SingularGauge();
    Matrix<RationalFunction> At = apply_op(sys.role, sys.pair, T) * sys.A * matrix_inverse(T);
    return DiffSystem(sys.role, sys.pair, std::move(At));
}

// A_[r] = op^{r-1}(A) * ... * op(A) * A, governing op^r
inline DiffSystem iterate_system(const DiffSystem& sys, long r) {
    if (r < 1) throw std::invalid_argument("iterate count must be >= 1");
    Matrix<RationalFunction> prod = sys.A, twisted = sys.A;
    for (long k = 1; k < r; ++k) {
        twisted = apply_op(sys.role, sys.pair, twisted);
        prod = twisted * prod;
    }
    return DiffSystem(sys.role, sys.pair.iterated(sys.role, r), std::move(prod));
}

struct CompatibilityResult {
    bool compatible = false;
    Matrix<RationalFunction> residual;
};

// phi(A~) A = sigma(A) A~ for phi-system A and sigma-system A~
inline CompatibilityResult compatibility_check(const DiffSystem& phi_sys, const DiffSystem& sigma_sys) {
    if (phi_sys.role != OpRole::phi || sigma_sys.role != OpRole::sigma)
        throw std::invalid_argument("compatibility_check expects a phi-system and a sigma-system");
    if (phi_sys.pair != sigma_sys.pair) throw std::invalid_argument("systems live over different operator pairs");
    if (phi_sys.dim() != sigma_sys.dim()) throw DimensionMismatch("compatibility check dimension mismatch");
    const OperatorPair& pair = phi_sys.pair;
    Matrix<RationalFunction> lhs = apply_op(OpRole::phi, pair, sigma_sys.A) * phi_sys.A;
    Matrix<RationalFunction> rhs = apply_op(OpRole::sigma, pair, phi_sys.A) * sigma_sys.A;
    CompatibilityResult res{false, lhs - rhs};
    res.compatible = res.residual.is_zero();
    return res;
}

// ---- residual checking -------------------------------------------------------

struct ResidualReport {
    bool zero = true;
    Rational checked_order{0};
    std::optional<Rational> first_bad_exponent;
};

namespace sdetail {

template <Locus L>
long rf_valuation(const RationalFunction& r) {
    if constexpr (L == Locus::at_zero)
        return r.valuation_at_zero();
    else
        return r.valuation_at_infinity();
}

template <Locus L>
Rational val_or_order(const BasicSeries<L>& s) {
    return s.is_zero_to_order() ? s.order() : s.valuation();
}

inline long ceil_to_long(const Rational& r) {
    return static_cast<long>(rational_floor(-r).get_si()) * -1;
}

template <Locus L>
constexpr bool locus_matches(OpCase c) {
    return (c == OpCase::shift_2s) == (L == Locus::at_infinity);
}

} // namespace sdetail

// Substitutes the candidate into the equation exactly; Zero means every
// trusted coefficient of the residual vanishes.
template <Locus L>
ResidualReport residual_check(const ScalarEquation& eq, const BasicSeries<L>& y) {
    if (!sdetail::locus_matches<L>(eq.pair.op_case()))
        throw std::invalid_argument("series locus does not match the operator case");
    long n = eq.order();
    std::vector<BasicSeries<L>> twists;
    twists.reserve(static_cast<size_t>(n) + 1);
    twists.push_back(y);
    for (long i = 1; i <= n; ++i) twists.push_back(apply_op(eq.role, eq.pair, twists.back()));

    // tightest honest order of sum a_i * op^i(y)
    std::optional<Rational> T;
    for (long i = 0; i <= n; ++i) {
        const RationalFunction& ai = eq.coeffs[static_cast<size_t>(i)];
        if (ai.is_zero()) continue;
        Rational t = twists[static_cast<size_t>(i)].order() + sdetail::rf_valuation<L>(ai);
        if (!T || t < *T) T = t;
    }
    long To = sdetail::ceil_to_long(*T) + 1;

    BasicSeries<L> residual = BasicSeries<L>::zero(To);
    for (long i = 0; i <= n; ++i) {
        const RationalFunction& ai = eq.coeffs[static_cast<size_t>(i)];
        if (ai.is_zero()) continue;
        residual = residual + to_series<L>(ai, To) * twists[static_cast<size_t>(i)];
    }
    if (!eq.rhs.is_zero()) residual = residual - to_series<L>(eq.rhs, To);

    // at least one coefficient must be testable; terms that are zero to their
    // order cannot contribute content below it and do not count
    std::optional<Rational> low;
    for (long i = 0; i <= n; ++i) {
        const RationalFunction& ai = eq.coeffs[static_cast<size_t>(i)];
        if (ai.is_zero() || twists[static_cast<size_t>(i)].is_zero_to_order()) continue;
        Rational l = twists[static_cast<size_t>(i)].valuation() + sdetail::rf_valuation<L>(ai);
        if (!low || l < *low) low = l;
    }
    if (!eq.rhs.is_zero()) {
        Rational l(sdetail::rf_valuation<L>(eq.rhs));
        if (!low || l < *low) low = l;
    }
    if (low && residual.order() <= *low)
        throw InsufficientOrder("candidate order too small to test any residual coefficient");

    ResidualReport rep;
    rep.checked_order = residual.order();
    if (!residual.is_zero_to_order()) {
        rep.zero = false;
        rep.first_bad_exponent = residual.valuation();
    }
    return rep;
}

// Residual of a vector candidate against op(Y) = A Y.
template <Locus L>
ResidualReport residual_check(const DiffSystem& sys, const std::vector<BasicSeries<L>>& y) {
    if (!sdetail::locus_matches<L>(sys.pair.op_case()))
        throw std::invalid_argument("series locus does not match the operator case");
    if (static_cast<long>(y.size()) != sys.dim()) throw DimensionMismatch("solution vector dimension mismatch");
    ResidualReport rep;
    std::optional<Rational> worst_order;
    for (long r = 0; r < sys.dim(); ++r) {
        std::optional<Rational> T;
        for (long c = 0; c < sys.dim(); ++c) {
            const RationalFunction& arc = sys.A.at(r, c);
            if (arc.is_zero()) continue;
            Rational t = y[static_cast<size_t>(c)].order() + sdetail::rf_valuation<L>(arc);
            if (!T || t < *T) T = t;
        }
        BasicSeries<L> lhs = apply_op(sys.role, sys.pair, y[static_cast<size_t>(r)]);
        Rational tl = lhs.order();
        if (!T || tl < *T) T = tl;
        long To = sdetail::ceil_to_long(*T) + 1;
        BasicSeries<L> residual = lhs;
        for (long c = 0; c < sys.dim(); ++c) {
            const RationalFunction& arc = sys.A.at(r, c);
            if (arc.is_zero()) continue;
            residual = residual - to_series<L>(arc, To) * y[static_cast<size_t>(c)];
        }
        if (!worst_order || residual.order() < *worst_order) worst_order = residual.order();
        if (!residual.is_zero_to_order()) {
            rep.zero = false;
            if (!rep.first_bad_exponent || residual.valuation() < *rep.first_bad_exponent)
                rep.first_bad_exponent = residual.valuation();
        }
    }
    rep.checked_order = *worst_order;
    return rep;
}

// ---- order-one solver --------------------------------------------------------

struct Order1Solution {
    std::variant<PuiseuxSeries, InfinitySeries> series;
    GaussianRational stripped_constant{1}; // 2M: t_a
    Rational stripped_exponent{0};         // 2M: v_a
    ScalarEquation satisfied;              // the equation the series provably solves
    std::vector<std::pair<Rational, GaussianRational>> free_choices;

    const PuiseuxSeries& puiseux() const { return std::get<PuiseuxSeries>(series); }
    const InfinitySeries& at_infinity() const { return std::get<InfinitySeries>(series); }
};

namespace sdetail {

inline std::vector<GaussianRational> rf_window(const RationalFunction& r, long val, long len, Locus locus) {
    // coefficients of r at exponents val .. val+len-1
    std::vector<GaussianRational> w(static_cast<size_t>(std::max<long>(len, 0)));
    if (r.is_zero() || len <= 0) return w;
    if (locus == Locus::at_zero) {
        PuiseuxSeries s = to_series_at_zero(r, val + len);
        for (long k = 0; k < len; ++k) w[static_cast<size_t>(k)] = s.coeff_index(val + k);
    } else {
        InfinitySeries s = to_series_at_infinity(r, val + len);
        for (long k = 0; k < len; ++k) w[static_cast<size_t>(k)] = s.coeff_index(val + k);
    }
    return w;
}

// detail of the 2M affine path: dense exact solve on the window [e0, e1)
inline std::optional<std::pair<std::vector<GaussianRational>, std::vector<long>>> mahler_window_solve(
    const RationalFunction& a, const RationalFunction& b, long p, long e0, long e1) {
    long va = a.valuation_at_zero();
    long vb = b.valuation_at_zero();
    long W = e1 - e0;
    // usable equations: every referenced index below e1
    std::vector<long> eqs;
    long glo = std::min({p * e0, e0 + va, vb});
    long ghi = e1 + va; // g - va < e1
    for (long g = glo; g < ghi; ++g) {
        if (g % p == 0 && g / p >= e1) continue;
        eqs.push_back(g);
    }
    std::vector<GaussianRational> aw = rf_window(a, va, ghi - e0 - va + 1, Locus::at_zero);
    std::vector<GaussianRational> bw = rf_window(b, vb, std::max<long>(ghi - vb + 1, 0), Locus::at_zero);
    Matrix<GaussianRational> M(static_cast<long>(eqs.size()), W);
    std::vector<GaussianRational> rhs(eqs.size());
    for (size_t r = 0; r < eqs.size(); ++r) {
        long g = eqs[r];
        if (g % p == 0 && g / p >= e0 && g / p < e1) M.at(static_cast<long>(r), g / p - e0) += GaussianRational(1);
        for (long e = e0; e < e1; ++e) {
            long i = g - e;
            if (i < va) continue;
            size_t ai = static_cast<size_t>(i - va);
            if (ai < aw.size() && !aw[ai].is_zero())
                M.at(static_cast<long>(r), e - e0) -= aw[ai];
        }
        long bi = g - vb;
        rhs[r] = (bi >= 0 && bi < static_cast<long>(bw.size())) ? bw[static_cast<size_t>(bi)] : GaussianRational(0);
    }
    auto sol = affine_solve(std::move(M), std::move(rhs));
    if (!sol.consistent) return std::nullopt;
    return std::make_pair(sol.solution, sol.free_cols);
}

} // namespace sdetail

// Solves op(y) = a*y + b as a truncated series, case by case. Every returned
// series passes residual_check against the reported `satisfied` equation.
inline Order1Solution solve_order1(const RationalFunction& a, const RationalFunction& b, const OperatorPair& pair,
                                   OpRole role, long order) {
    if (a.is_zero()) throw std::invalid_argument("solve_order1 needs a != 0");
    if (order < 1) throw std::invalid_argument("solve_order1 needs a positive target order");

    switch (pair.op_case()) {
        case OpCase::mahler_2m: {
            long p = pair.mahler_exponent(role);
            long va = a.valuation_at_zero();
            GaussianRational ta = a.leading_coeff_at_zero();
            if (b.is_zero()) {
                // normalize and solve z(x^p) = a_norm(x) z(x), z(0) = 1; the
                // returned series x^{va/(p-1)} z solves op(y) = (a/ta) y
                RationalFunction xva(Polynomial::monomial(GaussianRational(1), std::abs(va)));
                RationalFunction anorm = va >= 0 ? a / (RationalFunction(ta) * xva) : a * xva / RationalFunction(ta);
                Rational s = make_rational(va, p - 1);
                long j = static_cast<long>(s.get_den().get_si());
                long M = std::max<long>(order - static_cast<long>(rational_floor(s).get_si()), 2);
                std::vector<GaussianRational> alpha = sdetail::rf_window(anorm, 0, M, Locus::at_zero);
                std::vector<GaussianRational> z(static_cast<size_t>(M));
                z[0] = GaussianRational(1);
                for (long m = 1; m < M; ++m) {
                    GaussianRational acc = (m % p == 0) ? z[static_cast<size_t>(m / p)] : GaussianRational(0);
                    for (long i = 1; i <= m; ++i)
                        if (!alpha[static_cast<size_t>(i)].is_zero())
                            acc -= alpha[static_cast<size_t>(i)] * z[static_cast<size_t>(m - i)];
                    z[static_cast<size_t>(m)] = acc;
                }
                // spread to the s + [0, M) grid
                std::vector<GaussianRational> w(static_cast<size_t>((M - 1) * j + 1));
                for (long m = 0; m < M; ++m) w[static_cast<size_t>(m * j)] = z[static_cast<size_t>(m)];
                long sj = static_cast<long>(Rational(s * j).get_num().get_si());
                PuiseuxSeries y(j, sj, std::move(w), sj + M * j);
                Order1Solution sol{y, ta, Rational(va),
                                   ScalarEquation::order1(role, pair, a / RationalFunction(ta), RationalFunction()),
                                   {{s, GaussianRational(1)}}};
                if (!residual_check(sol.satisfied, y).zero) throw std::logic_error("2M homogeneous solver residual");
                return sol;
            }
            long vb = b.valuation_at_zero();
            ScalarEquation eq = ScalarEquation::order1(role, pair, a, b);
            if (va == 0 && vb >= 0) {
                // ascending recursion on the power series grid
                long N = order;
                std::vector<GaussianRational> aw = sdetail::rf_window(a, 0, N, Locus::at_zero);
                std::vector<GaussianRational> bw = sdetail::rf_window(b, vb, N - vb, Locus::at_zero);
                std::vector<GaussianRational> y(static_cast<size_t>(N));
                std::vector<std::pair<Rational, GaussianRational>> free;
                // m = 0: (1 - ta) y_0 = b_0
                GaussianRational b0 = vb == 0 ? bw[0] : GaussianRational(0);
                GaussianRational c0 = GaussianRational(1) - ta;
                if (!c0.is_zero()) {
                    y[0] = b0 / c0;
                } else if (b0.is_zero()) {
                    y[0] = GaussianRational(0);
                    free.emplace_back(Rational(0), y[0]);
                } else {
                    throw NoFormalSolution("constant term obstruction: (1 - a(0)) y_0 = b_0 with a(0) = 1, b_0 != 0");
                }
                for (long m = 1; m < N; ++m) {
                    GaussianRational acc = (m % p == 0) ? y[static_cast<size_t>(m / p)] : GaussianRational(0);
                    for (long i = 1; i <= m; ++i)
                        if (!aw[static_cast<size_t>(i)].is_zero()) acc -= aw[static_cast<size_t>(i)] * y[static_cast<size_t>(m - i)];
                    long bi = m - vb;
                    if (bi >= 0 && bi < static_cast<long>(bw.size())) acc -= bw[static_cast<size_t>(bi)];
                    y[static_cast<size_t>(m)] = acc / ta;
                }
                PuiseuxSeries ys(1, 0, std::move(y), N);
                Order1Solution sol{ys, GaussianRational(1), Rational(0), eq, std::move(free)};
                if (!residual_check(eq, ys).zero) throw std::logic_error("2M affine solver residual");
                return sol;
            }
            // general window path: candidate valuations from the exponent balance
            long vbp = vb >= 0 ? vb / p : -((-vb + p - 1) / p);
            long e0 = std::min({0L, vb, vb - va, vbp}) - 2;
            long e1 = order;
            auto win = sdetail::mahler_window_solve(a, b, p, e0, e1);
            if (!win)
                throw NoFormalSolution("the Mahler coefficient system on the window is inconsistent");
            std::vector<std::pair<Rational, GaussianRational>> free;
            for (long f : win->second) free.emplace_back(Rational(e0 + f), GaussianRational(0));
            PuiseuxSeries ys(1, e0, std::move(win->first), e1);
            Order1Solution sol{ys, GaussianRational(1), Rational(0), eq, std::move(free)};
            if (!residual_check(eq, ys).zero)
                throw NoFormalSolution("window solution fails residual verification (normalization chose a branch "
                                       "inconsistent with omitted tail equations)");
            return sol;
        }

        case OpCase::qdiff_2q: {
            const GaussianRational& q = pair.param(role);
            long va = a.valuation_at_zero();
            GaussianRational rho = a.leading_coeff_at_zero();
            ScalarEquation eq = ScalarEquation::order1(role, pair, a, b);
            long N = order;
            std::vector<std::pair<Rational, GaussianRational>> free;
            if (b.is_zero()) {
                if (va != 0)
                    throw NoFormalSolution("q-difference exponent equation k = k + " + std::to_string(va) +
                                           " has no solution");
                std::vector<GaussianRational> aw = sdetail::rf_window(a, 0, N, Locus::at_zero);
                std::vector<GaussianRational> y(static_cast<size_t>(N));
                bool seen = false;
                GaussianRational qe(1);
                for (long e = 0; e < N; ++e) {
                    GaussianRational c = qe - rho;
                    GaussianRational acc(0);
                    for (long i = 1; i <= e; ++i)
                        if (!aw[static_cast<size_t>(i)].is_zero()) acc += aw[static_cast<size_t>(i)] * y[static_cast<size_t>(e - i)];
                    if (!c.is_zero()) {
                        y[static_cast<size_t>(e)] = acc / c;
                    } else if (acc.is_zero()) {
                        y[static_cast<size_t>(e)] = seen ? GaussianRational(0) : GaussianRational(1);
                        free.emplace_back(Rational(e), y[static_cast<size_t>(e)]);
                    } else {
                        throw Resonance(Rational(e));
                    }
                    if (!y[static_cast<size_t>(e)].is_zero()) seen = true;
                    qe *= q;
                }
                PuiseuxSeries ys(1, 0, std::move(y), N);
                Order1Solution sol{ys, GaussianRational(1), Rational(0), eq, std::move(free)};
                if (!residual_check(eq, ys).zero) throw std::logic_error("2Q homogeneous solver residual");
                return sol;
            }
            long vb = b.valuation_at_zero();
            long E0 = va < 0 ? vb - va : vb;
            if (E0 >= N) throw InsufficientOrder("requested order at or below the solution valuation");
            std::vector<GaussianRational> y(static_cast<size_t>(N - E0));
            std::vector<GaussianRational> aw = sdetail::rf_window(a, va, N - E0 + std::abs(va) + 1, Locus::at_zero);
            std::vector<GaussianRational> bw = sdetail::rf_window(b, vb, std::max<long>(N - vb + std::abs(va) + 1, 1), Locus::at_zero);
            auto bcoef = [&](long g) {
                long i = g - vb;
                return (i >= 0 && i < static_cast<long>(bw.size())) ? bw[static_cast<size_t>(i)] : GaussianRational(0);
            };
            auto ycoef = [&](long e) {
                long i = e - E0;
                return (i >= 0 && i < static_cast<long>(y.size())) ? y[static_cast<size_t>(i)] : GaussianRational(0);
            };
            if (va > 0) {
                // q^g y_g = sum_{i>=va} a_i y_{g-i} + b_g
                GaussianRational qg = q.pow(E0);
                for (long g = E0; g < N; ++g) {
                    GaussianRational acc = bcoef(g);
                    for (long i = va; i <= g - E0; ++i)
                        if (!aw[static_cast<size_t>(i - va)].is_zero()) acc += aw[static_cast<size_t>(i - va)] * ycoef(g - i);
                    y[static_cast<size_t>(g - E0)] = acc / qg;
                    qg *= q;
                }
            } else if (va < 0) {
                // a_{va} y_{g-va} = q^g y_g - sum_{i>va} a_i y_{g-i} - b_g, ascend m = g - va
                for (long m = E0; m < N; ++m) {
                    long g = m + va;
                    GaussianRational acc = q.pow(g) * ycoef(g) - bcoef(g);
                    for (long i = va + 1; i <= m - E0 + va; ++i) {
                        size_t ai = static_cast<size_t>(i - va);
                        if (ai < aw.size() && !aw[ai].is_zero()) acc -= aw[ai] * ycoef(g - i);
                    }
                    y[static_cast<size_t>(m - E0)] = acc / aw[0];
                }
            } else {
                // (q^e - rho) y_e = sum_{i>=1} a_i y_{e-i} + b_e
                GaussianRational qe = q.pow(E0);
                for (long e = E0; e < N; ++e) {
                    GaussianRational acc = bcoef(e);
                    for (long i = 1; i <= e - E0; ++i)
                        if (!aw[static_cast<size_t>(i)].is_zero()) acc += aw[static_cast<size_t>(i)] * ycoef(e - i);
                    GaussianRational c = qe - rho;
                    if (!c.is_zero()) {
                        y[static_cast<size_t>(e - E0)] = acc / c;
                    } else if (acc.is_zero()) {
                        y[static_cast<size_t>(e - E0)] = GaussianRational(0);
                        free.emplace_back(Rational(e), GaussianRational(0));
                    } else {
                        throw Resonance(Rational(e));
                    }
                    qe *= q;
                }
            }
            PuiseuxSeries ys(1, E0, std::move(y), N);
            Order1Solution sol{ys, GaussianRational(1), Rational(0), eq, std::move(free)};
            if (!residual_check(eq, ys).zero) throw std::logic_error("2Q affine solver residual");
            return sol;
        }

        default: { // 2S, at infinity in t = 1/x
            const GaussianRational& h = pair.param(role);
            long va = a.valuation_at_infinity();
            ScalarEquation eq = ScalarEquation::order1(role, pair, a, b);
            long N = order;
            std::vector<std::pair<Rational, GaussianRational>> free;
            std::vector<GaussianRational> aw = sdetail::rf_window(a, va, 2 * N + 2 * std::abs(va) + 4, Locus::at_infinity);
            GaussianRational a0 = va == 0 ? aw[0] : GaussianRational(0);
            bool shifted_mode = (va == 0) && (a0 == GaussianRational(1));
            long vb = 0;
            std::vector<GaussianRational> bw;
            if (!b.is_zero()) {
                vb = b.valuation_at_infinity();
                bw = sdetail::rf_window(b, vb, 2 * N + 2 * std::abs(va) + std::abs(vb) + 4, Locus::at_infinity);
            } else {
                if (va != 0)
                    throw NoFormalSolution("shift-case exponent equation k = k + " + std::to_string(va) +
                                           " has no solution at infinity");
                if (!shifted_mode)
                    throw NoFormalSolution("homogeneous shift equation with a(infinity) != 1 admits only the zero "
                                           "Laurent solution at infinity");
            }
            // resonant index in shifted mode: m* with m*h + a_1 = 0
            std::optional<long> mstar;
            if (shifted_mode) {
                GaussianRational a1 = aw.size() > 1 ? aw[1] : GaussianRational(0);
                GaussianRational m = -(a1 / h);
                if (m.is_integer()) mstar = static_cast<long>(m.re().get_num().get_si());
            }
            long E0;
            if (!b.is_zero()) {
                if (va > 0) E0 = vb;
                else if (va < 0) E0 = vb - va;
                else if (!shifted_mode) E0 = vb;
                else E0 = std::min(vb - 1, mstar ? *mstar : vb - 1);
            } else {
                if (!mstar) throw NoFormalSolution("homogeneous shift equation has no Laurent solution at infinity");
                E0 = *mstar;
            }
            long W = N - E0;
            if (W < 1) throw InsufficientOrder("requested order below the solution valuation");
            std::vector<GaussianRational> y(static_cast<size_t>(W));
            // accumulated contributions of finalized coefficients; equations can
            // sit below E0 when val(a) < 0, so the accumulators start lower
            long GMAX = N + std::abs(va) + 2;
            long GLO = std::min({E0, E0 + va, b.is_zero() ? E0 : vb}) - 1;
            std::vector<GaussianRational> lhs_acc(static_cast<size_t>(GMAX - GLO), GaussianRational(0));
            std::vector<GaussianRational> ays_acc(static_cast<size_t>(GMAX - GLO), GaussianRational(0));
            auto bcoef = [&](long g) {
                if (b.is_zero()) return GaussianRational(0);
                long i = g - vb;
                return (i >= 0 && i < static_cast<long>(bw.size())) ? bw[static_cast<size_t>(i)] : GaussianRational(0);
            };
            auto finalize = [&](long e, const GaussianRational& v) {
                y[static_cast<size_t>(e - E0)] = v;
                if (v.is_zero()) return;
                // phi(y) contribution: v * C(-e, m) h^m at exponent e+m
                GaussianRational binom(1);
                for (long m = 0; e + m < GMAX; ++m) {
                    if (!binom.is_zero()) lhs_acc[static_cast<size_t>(e + m - GLO)] += v * binom;
                    binom *= GaussianRational(make_rational(-e - m, m + 1)) * h;
                }
                // a*y contribution: v * a_i at exponent e+i
                for (size_t k = 0; k < aw.size(); ++k) {
                    long g = e + va + static_cast<long>(k);
                    if (g >= GMAX) break;
                    if (g >= GLO && !aw[k].is_zero()) ays_acc[static_cast<size_t>(g - GLO)] += v * aw[k];
                }
            };
            auto lhs_at = [&](long g) { return g >= GLO ? lhs_acc[static_cast<size_t>(g - GLO)] : GaussianRational(0); };
            auto ays_at = [&](long g) { return g >= GLO ? ays_acc[static_cast<size_t>(g - GLO)] : GaussianRational(0); };

            if (va > 0) {
                for (long g = E0; g < N; ++g) {
                    GaussianRational v = ays_at(g) + bcoef(g) - lhs_at(g);
                    finalize(g, v);
                }
            } else if (va < 0) {
                for (long m = E0; m < N; ++m) {
                    long g = m + va;
                    GaussianRational v = (lhs_at(g) - ays_at(g) - bcoef(g)) / aw[0];
                    finalize(m, v);
                }
            } else if (!shifted_mode) {
                GaussianRational c = GaussianRational(1) - a0;
                for (long g = E0; g < N; ++g) {
                    GaussianRational v = (ays_at(g) + bcoef(g) - lhs_at(g)) / c;
                    finalize(g, v);
                }
            } else {
                bool seen = false;
                for (long m = E0; m < N; ++m) {
                    long g = m + 1;
                    // coefficient of y_m at equation g: -(m*h + a_1)
                    GaussianRational c = -(GaussianRational(m) * h + (aw.size() > 1 ? aw[1] : GaussianRational(0)));
                    GaussianRational rhsv = ays_at(g) + bcoef(g) - lhs_at(g);
                    if (!c.is_zero()) {
                        finalize(m, rhsv / c);
                    } else if (rhsv.is_zero()) {
                        GaussianRational pick = (!seen && b.is_zero()) ? GaussianRational(1) : GaussianRational(0);
                        free.emplace_back(Rational(m), pick);
                        finalize(m, pick);
                    } else {
                        throw Resonance(Rational(m));
                    }
                    if (!y[static_cast<size_t>(m - E0)].is_zero()) seen = true;
                }
            }
            InfinitySeries ys(1, E0, std::move(y), N);
            Order1Solution sol{ys, GaussianRational(1), Rational(0), eq, std::move(free)};
            if (!residual_check(eq, ys).zero) throw std::logic_error("2S solver residual");
            return sol;
        }
    }
}

// ---- minimal scalar annihilators of system coordinates -----------------------

// For each coordinate of a system solution, finds by exact linear algebra a
// minimal-order scalar equation of order <= n consistent to the trusted
// order, residual-verified. Sweep is order-first then coefficient degree;
// ties resolved by the canonical nullspace vector.
template <Locus L>
std::vector<ScalarEquation> scalar_from_coordinates(const DiffSystem& sys, const std::vector<BasicSeries<L>>& coords,
                                                    long degree_bound = 8) {
    if (!sdetail::locus_matches<L>(sys.pair.op_case()))
        throw std::invalid_argument("series locus does not match the operator case");
    if (static_cast<long>(coords.size()) != sys.dim()) throw DimensionMismatch("coordinate count mismatch");
    std::vector<ScalarEquation> out;
    for (const auto& u : coords) {
        if (u.is_zero_to_order()) throw InsufficientOrder("zero-to-order coordinate has no informative annihilator");
        std::optional<ScalarEquation> found;
        std::vector<BasicSeries<L>> twists = {u};
        // at infinity the coefficient x^dd is t^{-dd}: it shifts the grid the
        // other way and lowers the trusted order
        constexpr long dir = L == Locus::at_zero ? 1 : -1;
        for (long m = 1; m <= sys.dim() && !found; ++m) {
            twists.push_back(apply_op(sys.role, sys.pair, twists.back()));
            // common grid
            long j = 1;
            for (const auto& t : twists) j = std::lcm(j, t.ram());
            for (long d = 0; d <= degree_bound && !found; ++d) {
                long cols = (m + 1) * (d + 1);
                // usable exponent range on the common grid
                long lo = 0, hi = 0;
                bool first = true;
                for (long i = 0; i <= m; ++i) {
                    const auto& t = twists[static_cast<size_t>(i)];
                    long mul = j / t.ram();
                    for (long dd = 0; dd <= d; ++dd) {
                        long tlo = t.val_index() * mul + dir * dd * j;
                        long thi = t.order_index() * mul + dir * dd * j;
                        if (first) {
                            lo = tlo;
                            hi = thi;
                            first = false;
                        } else {
                            lo = std::min(lo, tlo);
                            hi = std::min(hi, thi);
                        }
                    }
                }
                long rows = hi - lo;
                if (rows < cols + std::max<long>(4, cols / 4)) continue;
                Matrix<GaussianRational> M(rows, cols);
                for (long i = 0; i <= m; ++i) {
                    const auto& t = twists[static_cast<size_t>(i)];
                    long mul = j / t.ram();
                    for (long dd = 0; dd <= d; ++dd) {
                        long col = i * (d + 1) + dd;
                        for (long g = lo; g < hi; ++g) {
                            long idx = g - dir * dd * j;
                            if (idx % mul != 0) continue;
                            GaussianRational c = t.coeff_index(idx / mul);
                            if (!c.is_zero()) M.at(g - lo, col) = c;
                        }
                    }
                }
                auto ns = nullspace(M);
                for (const auto& v : ns.basis) {
                    std::vector<Polynomial> cpolys(static_cast<size_t>(m) + 1);
                    for (long i = 0; i <= m; ++i) {
                        std::vector<GaussianRational> pc(static_cast<size_t>(d) + 1);
                        for (long dd = 0; dd <= d; ++dd) pc[static_cast<size_t>(dd)] = v[static_cast<size_t>(i * (d + 1) + dd)];
                        cpolys[static_cast<size_t>(i)] = Polynomial(pc);
                    }
                    if (cpolys.back().is_zero()) continue;
                    std::vector<RationalFunction> coeffs(cpolys.size());
                    for (size_t i = 0; i < cpolys.size(); ++i)
                        coeffs[i] = RationalFunction(cpolys[i]) / RationalFunction(cpolys.back());
                    ScalarEquation eq(sys.role, sys.pair, std::move(coeffs));
                    try {
                        if (residual_check(eq, u).zero) {
                            found = eq;
                            break;
                        }
                    } catch (const InsufficientOrder&) {
                    }
                }
            }
        }
        if (!found) throw InsufficientOrder("no annihilating scalar equation found within the order/degree bounds");
        out.push_back(*found);
    }
    return out;
}

} // namespace diffalg

#endif
