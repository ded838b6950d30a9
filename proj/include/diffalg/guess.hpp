#ifndef DIFFALG_GUESS_HPP
#define DIFFALG_GUESS_HPP

#include <optional>
#include <vector>

#include "series.hpp"

namespace diffalg {

// Berlekamp-Massey over Q(i): returns the connection polynomial C (constant
// term 1, ascending) of the minimal LFSR with
//   sum_{i=0..L} C[i] * s[n-i] = 0  for all L <= n < len(s).
inline std::vector<GaussianRational> berlekamp_massey(const std::vector<GaussianRational>& s) {
    std::vector<GaussianRational> C = {GaussianRational(1)}, B = {GaussianRational(1)};
    long L = 0, m = 1;
    GaussianRational b(1);
    for (size_t n = 0; n < s.size(); ++n) {
        GaussianRational d(0);
        for (size_t i = 0; i < C.size() && i <= n; ++i) d += C[i] * s[n - i];
        if (d.is_zero()) {
            ++m;
        } else if (2 * L <= static_cast<long>(n)) {
            std::vector<GaussianRational> T = C;
            GaussianRational coef = d / b;
            if (C.size() < B.size() + static_cast<size_t>(m)) C.resize(B.size() + static_cast<size_t>(m));
            for (size_t i = 0; i < B.size(); ++i) C[i + static_cast<size_t>(m)] -= coef * B[i];
            L = static_cast<long>(n) + 1 - L;
            B = std::move(T);
            b = d;
            m = 1;
        } else {
            GaussianRational coef = d / b;
            if (C.size() < B.size() + static_cast<size_t>(m)) C.resize(B.size() + static_cast<size_t>(m));
            for (size_t i = 0; i < B.size(); ++i) C[i + static_cast<size_t>(m)] -= coef * B[i];
            ++m;
        }
    }
    C.resize(static_cast<size_t>(L) + 1);
    return C;
}

// Minimal-linear-recurrence rationality guess. A returned function re-expands
// to every trusted coefficient of f; that is agreement to order, never a
// proof of rationality.
inline std::optional<RationalFunction> rationality_guess(const PuiseuxSeries& f, long degree_bound) {
    if (f.ram() != 1)
        throw RamificationMismatch("rationality_guess needs an unramified series");
    if (f.is_zero_to_order()) return RationalFunction();
    long val = f.val_index();
    long m = f.order_index() - val;
    if (m < 2 * degree_bound + 2)
        throw InsufficientOrder("rationality_guess needs at least 2*bound+2 trusted coefficients");

    std::vector<GaussianRational> stream(static_cast<size_t>(m));
    for (long k = 0; k < m; ++k) stream[static_cast<size_t>(k)] = f.coeff_index(val + k);

    std::vector<GaussianRational> C = berlekamp_massey(stream);
    long L = static_cast<long>(C.size()) - 1;
    // the LFSR length bounds both numerator and denominator degree of the
    // shifted stream; reject anything bigger than the allowed bound
    if (L > degree_bound) return std::nullopt;
    if (2 * L > m) return std::nullopt; // not enough data to pin the recurrence

    // stream generating function = P / C with deg P < L (or P = stream for L = 0)
    Polynomial Cpoly{std::vector<GaussianRational>(C.begin(), C.end())};
    std::vector<GaussianRational> pcoeffs(static_cast<size_t>(std::max<long>(L, 1)));
    for (long k = 0; k < static_cast<long>(pcoeffs.size()) && k < m; ++k) {
        GaussianRational acc(0);
        for (long i = 0; i <= k && i < static_cast<long>(C.size()); ++i) acc += C[static_cast<size_t>(i)] * stream[static_cast<size_t>(k - i)];
        pcoeffs[static_cast<size_t>(k)] = acc;
    }
    Polynomial P{std::move(pcoeffs)};
    RationalFunction g(P, Cpoly);
    // fold the valuation x^val back in
    if (val >= 0)
        g = g * RationalFunction(Polynomial::monomial(GaussianRational(1), val));
    else
        g = g / RationalFunction(Polynomial::monomial(GaussianRational(1), -val));

    // exact re-expansion over the full trusted window is the acceptance oracle
    PuiseuxSeries back = to_series_at_zero(g, f.order_index());
    if (!back.agrees_with(f)) return std::nullopt;
    return g;
}

} // namespace diffalg

#endif
