#ifndef DIFFALG_SPECIAL_FUNCTIONS_HPP
#define DIFFALG_SPECIAL_FUNCTIONS_HPP

#include "systems.hpp"

namespace diffalg {

// A series packaged with an annihilating difference equation; the residual of
// the equation at the series is checked at construction.
struct NamedSeries {
    PuiseuxSeries series;
    ScalarEquation equation;
    std::vector<ScalarEquation> extra_equations;
    std::string provenance;

    NamedSeries(PuiseuxSeries s, ScalarEquation eq, std::vector<ScalarEquation> extra, std::string label)
        : series(std::move(s)), equation(std::move(eq)), extra_equations(std::move(extra)),
          provenance(std::move(label)) {
        if (!residual_check(equation, series).zero)
            throw std::logic_error(provenance + ": series does not satisfy its annihilator");
        for (const auto& e : extra_equations)
            if (!residual_check(e, series).zero)
                throw std::logic_error(provenance + ": series does not satisfy an attached equation");
    }
};

namespace spdetail {

// smallest prime multiplicatively independent from q (exists for every
// nonzero q in Q(i) that is not a root of unity)
inline GaussianRational independent_partner(const GaussianRational& q) {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        if (!multiplicative_relation(q, GaussianRational(p)).dependent) return GaussianRational(p);
    }
    throw std::logic_error("no small independent partner found");
}

inline long independent_mahler_partner(long p) {
    long q = (p & (p - 1)) == 0 ? 3 : 2; // powers of two pair with 3
    return q;
}

} // namespace spdetail

// sum_{n >= 0} x^{p^n}, with the inhomogeneous order-1 equation
// F(x^p) = F(x) - x and its derived homogeneous order-2 form attached.
inline NamedSeries mahler_power_sum(long p, long order) {
    if (p < 2) throw std::invalid_argument("mahler_power_sum needs p >= 2");
    OperatorPair pair = OperatorPair::mahler(p, spdetail::independent_mahler_partner(p));
    std::vector<GaussianRational> w(static_cast<size_t>(std::max<long>(order, 2)));
    for (long e = 1; e < order; e *= p) w[static_cast<size_t>(e)] = GaussianRational(1);
    PuiseuxSeries F(1, 0, std::move(w), order);
    // phi(F) - F = -x
    ScalarEquation order1(OpRole::phi, pair, {RationalFunction(-1), RationalFunction(1)},
                          -RationalFunction(Polynomial::x()));
    // x^{p-1} F - (x^{p-1} + 1) phi(F) + phi^2(F) = 0
    Polynomial xp1 = Polynomial::monomial(GaussianRational(1), p - 1);
    ScalarEquation order2(OpRole::phi, pair,
                          {RationalFunction(xp1), RationalFunction(-(xp1 + Polynomial(1))), RationalFunction(1)});
    return NamedSeries(std::move(F), std::move(order1), {std::move(order2)},
                       "mahler_power_sum(p=" + std::to_string(p) + ")");
}

// [n]!_q = prod_{i=1..n} (1-q^i)/(1-q)
inline GaussianRational q_factorial(long n, const GaussianRational& q) {
    if (n < 0) throw std::invalid_argument("q_factorial needs n >= 0");
    if (q.is_one()) throw QIsOne();
    GaussianRational geom = GaussianRational(1) - q;
    GaussianRational qi(1), acc(1);
    for (long i = 1; i <= n; ++i) {
        qi *= q;
        acc *= (GaussianRational(1) - qi) / geom;
    }
    return acc;
}

// (a; q)_n = prod_{i=0..n-1} (1 - a q^i)
inline GaussianRational q_pochhammer(const GaussianRational& a, const GaussianRational& q, long n) {
    if (n < 0) throw std::invalid_argument("q_pochhammer needs n >= 0");
    GaussianRational acc(1), qi(1);
    for (long i = 0; i < n; ++i) {
        acc *= GaussianRational(1) - a * qi;
        qi *= q;
    }
    return acc;
}

// Basic hypergeometric series with alphas = (alpha_1..alpha_{r+1}) and betas
// = (beta_1..beta_s):
//   sum_n  prod (alpha_i;q)_n / prod (beta_i;q)_n * ((-1)^n q^C(n,2))^{s-r} * x^n/[n]!_q
// The attached q-difference equation comes from the coefficient ratio
// c_{n+1}/c_n = A(q^n)/B(q^n) via the diagonal action of sigma_q, keeping the
// inhomogeneous constant from the n = 0 boundary.
inline NamedSeries basic_hypergeometric(const std::vector<GaussianRational>& alphas,
                                        const std::vector<GaussianRational>& betas, const GaussianRational& q,
                                        long order) {
    if (q.is_one()) throw QIsOne();
    if (is_root_of_unity(q)) throw std::invalid_argument("q must not be a root of unity");
    long r = static_cast<long>(alphas.size()) - 1;
    long s = static_cast<long>(betas.size());
    // beta_i not in q^{Z<=0}, checked for exponents down to -order
    {
        GaussianRational qpow(1);
        for (long m = 0; m <= order; ++m) {
            for (size_t i = 0; i < betas.size(); ++i)
                if (betas[i] == qpow) throw InvalidBeta(i, -m);
            qpow /= q;
        }
    }

    // ratio polynomials: c_{n+1}/c_n = A(q^n)/B(q^n)
    Polynomial z = Polynomial::x();
    Polynomial A(GaussianRational(1) - q);
    for (const auto& al : alphas) A = A * (Polynomial(1) - al * z);
    Polynomial B = Polynomial(1) - q * z;
    for (const auto& be : betas) B = B * (Polynomial(1) - be * z);
    long t = s - r;
    if (t > 0) A = A * (-z).pow(t);
    if (t < 0) B = B * (-z).pow(-t);

    // coefficients by the recurrence
    std::vector<GaussianRational> c(static_cast<size_t>(std::max<long>(order, 1)));
    c[0] = GaussianRational(1);
    GaussianRational qn(1);
    for (long n = 0; n + 1 < order; ++n) {
        c[static_cast<size_t>(n + 1)] = c[static_cast<size_t>(n)] * A.eval(qn) / B.eval(qn);
        qn *= q;
    }
    PuiseuxSeries f(1, 0, std::move(c), order);

    // annihilator: Btilde(sigma) f - x A(sigma) f = Btilde(1), Btilde(w) = B(w/q)
    Polynomial Btilde;
    {
        std::vector<GaussianRational> bc(B.coeffs());
        GaussianRational qk(1);
        for (size_t k = 0; k < bc.size(); ++k) {
            bc[k] = bc[k] / qk;
            qk *= q;
        }
        Btilde = Polynomial(bc);
    }
    long n_eq = std::max(Btilde.degree(), A.degree());
    std::vector<RationalFunction> coeffs(static_cast<size_t>(n_eq) + 1);
    for (long k = 0; k <= n_eq; ++k)
        coeffs[static_cast<size_t>(k)] =
            RationalFunction(Polynomial(Btilde.coeff(k)) - Polynomial::monomial(A.coeff(k), 1));
    OperatorPair pair = OperatorPair::q_difference(q, spdetail::independent_partner(q));
    ScalarEquation eq =
        ScalarEquation(OpRole::phi, pair, std::move(coeffs), RationalFunction(Btilde.eval(GaussianRational(1))))
            .normalized();
    std::string label = "basic_hypergeometric(r+1=" + std::to_string(alphas.size()) +
                        ", s=" + std::to_string(betas.size()) + ")";
    return NamedSeries(std::move(f), std::move(eq), {}, std::move(label));
}

} // namespace diffalg

#endif
