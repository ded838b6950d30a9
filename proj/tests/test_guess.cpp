#include <doctest.h>

#include <diffalg/guess.hpp>

#include <random>

using namespace diffalg;

namespace {

PuiseuxSeries power_sum_brute(long p, long N) {
    std::vector<GaussianRational> v(static_cast<size_t>(N), GaussianRational(0));
    for (long e = 1; e < N; e *= p) v[static_cast<size_t>(e)] = GaussianRational(1);
    return PuiseuxSeries(1, 0, std::move(v), N);
}

RationalFunction random_rf(std::mt19937& rng, int dn, int dd) {
    std::uniform_int_distribution<long> c(-7, 7);
    std::vector<GaussianRational> n(static_cast<size_t>(dn) + 1), d(static_cast<size_t>(dd));
    for (auto& e : n) e = GaussianRational(c(rng));
    for (auto& e : d) e = GaussianRational(c(rng));
    Polynomial den = Polynomial(d) + Polynomial::x().pow(dd);
    if (den.coeff(0).is_zero()) den = den + Polynomial(1);
    return RationalFunction(Polynomial(n), den);
}

// brute oracle independent of berlekamp_massey: does any recurrence
// c_n = a_1 c_{n-1} + ... + a_L c_{n-L} fit the whole stream? Decided by
// consistency of the full overdetermined linear system under plain
// Gauss-Jordan elimination.
bool recurrence_fits(const std::vector<GaussianRational>& s, long L) {
    if (L + 1 > static_cast<long>(s.size())) return false;
    std::vector<std::vector<GaussianRational>> M;
    for (long n = L; n < static_cast<long>(s.size()); ++n) {
        std::vector<GaussianRational> row;
        for (long i = 1; i <= L; ++i) row.push_back(s[static_cast<size_t>(n - i)]);
        row.push_back(s[static_cast<size_t>(n)]);
        M.push_back(row);
    }
    long rows = static_cast<long>(M.size()), cols = L;
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long pr = -1;
        for (long k = r; k < rows; ++k)
            if (!M[static_cast<size_t>(k)][static_cast<size_t>(c)].is_zero()) { pr = k; break; }
        if (pr < 0) continue;
        std::swap(M[static_cast<size_t>(pr)], M[static_cast<size_t>(r)]);
        for (long k = 0; k < rows; ++k) {
            if (k == r) continue;
            GaussianRational f = M[static_cast<size_t>(k)][static_cast<size_t>(c)] / M[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (f.is_zero()) continue;
            for (long j = c; j <= cols; ++j)
                M[static_cast<size_t>(k)][static_cast<size_t>(j)] -= f * M[static_cast<size_t>(r)][static_cast<size_t>(j)];
        }
        ++r;
    }
    // consistent iff no eliminated row reads 0 = nonzero
    for (long k = r; k < rows; ++k)
        if (!M[static_cast<size_t>(k)].back().is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("berlekamp-massey on a geometric sequence") {
    std::vector<GaussianRational> s;
    GaussianRational v(1);
    for (int k = 0; k < 12; ++k) {
        s.push_back(v);
        v = v * GaussianRational(2);
    }
    auto C = berlekamp_massey(s);
    REQUIRE(C.size() == 2);
    CHECK(C[0].is_one());
    CHECK(C[1] == GaussianRational(-2));
}

TEST_CASE("guess recovers 1/(1-2x): recurrence c_n = 2 c_{n-1}") {
    Polynomial x = Polynomial::x();
    RationalFunction f(Polynomial(1), Polynomial(1) - Polynomial(2) * x);
    PuiseuxSeries s = to_series_at_zero(f, 40);
    auto g = rationality_guess(s, 10);
    REQUIRE(g.has_value());
    CHECK(*g == f);
}

TEST_CASE("2-Mahler power sum to order 200, bound 20: NoGuess") {
    PuiseuxSeries F = power_sum_brute(2, 200);
    CHECK(!rationality_guess(F, 20).has_value());

    // brute cross-check: no recurrence of order <= 20 fits the coefficients
    std::vector<GaussianRational> stream(F.coeff_window().begin(), F.coeff_window().end());
    for (long L = 1; L <= 20; ++L) CHECK(!recurrence_fits(stream, L));
}

TEST_CASE("zero series guesses zero") {
    auto g = rationality_guess(PuiseuxSeries::zero(50), 5);
    REQUIRE(g.has_value());
    CHECK(g->is_zero());
}

TEST_CASE("insufficient order is reported") {
    PuiseuxSeries s = to_series_at_zero(RationalFunction(Polynomial(1), Polynomial(1) - Polynomial::x()), 10);
    CHECK_THROWS_AS(rationality_guess(s, 10), InsufficientOrder);
}

TEST_CASE("round-trip on 200 random rational functions of degree <= 8") {
    std::mt19937 rng(2024);
    int done = 0;
    while (done < 200) {
        RationalFunction f = random_rf(rng, 8, 8);
        if (f.is_zero()) continue;
        // degree <= 8 bounds the minimal LFSR length by 9
        PuiseuxSeries s = to_series_at_zero(f, 40);
        auto g = rationality_guess(s, 9);
        REQUIRE(g.has_value());
        CHECK(*g == f);
        ++done;
    }
}

TEST_CASE("guess handles poles at the origin") {
    Polynomial x = Polynomial::x();
    RationalFunction f(Polynomial(3), x * x * (Polynomial(1) + x));
    PuiseuxSeries s = to_series_at_zero(f, 30);
    CHECK(s.valuation() == -2);
    auto g = rationality_guess(s, 8);
    REQUIRE(g.has_value());
    CHECK(*g == f);
}
