#include <doctest.h>

#include <diffalg/series.hpp>

#include <random>

using namespace diffalg;

namespace {

PuiseuxSeries from_ints(std::vector<long> coeffs, long val, long order, long ram = 1) {
    std::vector<GaussianRational> v(coeffs.size());
    for (size_t k = 0; k < coeffs.size(); ++k) v[k] = GaussianRational(coeffs[k]);
    return PuiseuxSeries(ram, val, std::move(v), order);
}

// brute expansion of sum x^{p^n} below order N
PuiseuxSeries power_sum_brute(long p, long N) {
    std::vector<GaussianRational> v(static_cast<size_t>(N), GaussianRational(0));
    for (long e = 1; e < N; e *= p) v[static_cast<size_t>(e)] = GaussianRational(1);
    return PuiseuxSeries(1, 0, std::move(v), N);
}

PuiseuxSeries random_series(std::mt19937& rng, long order, long ram = 1, long val_lo = -3) {
    std::uniform_int_distribution<long> c(-6, 6);
    std::uniform_int_distribution<long> v(val_lo, 3);
    long val = v(rng);
    std::vector<GaussianRational> w(static_cast<size_t>(order * ram - val));
    for (auto& e : w) e = GaussianRational(Rational(c(rng)), Rational(c(rng)));
    return PuiseuxSeries(ram, val, std::move(w), order * ram);
}

} // namespace

TEST_CASE("series add: cancellation renormalizes the valuation") {
    PuiseuxSeries a = from_ints({1, 1}, 1, 10); // x + x^2
    PuiseuxSeries b = from_ints({-1}, 1, 10);   // -x
    PuiseuxSeries s = a + b;
    CHECK(s.valuation() == 2);
    CHECK(s.order() == 10);
    CHECK(s == from_ints({1}, 2, 10));
}

TEST_CASE("series add: lcm ramification") {
    PuiseuxSeries half = PuiseuxSeries::monomial(GaussianRational(1), make_rational(1, 2), Rational(5)); // x^{1/2}
    PuiseuxSeries x = from_ints({1}, 1, 5);
    PuiseuxSeries s = half + x;
    CHECK(s.ram() == 2);
    CHECK(s.coeff_at(make_rational(1, 2)) == GaussianRational(1));
    CHECK(s.coeff_at(Rational(1)) == GaussianRational(1));
    CHECK(s.coeff_at(make_rational(3, 2)) == GaussianRational(0));
    // identity
    PuiseuxSeries f = from_ints({3, 0, -2}, 0, 7);
    CHECK(f + PuiseuxSeries::zero(7) == f);
}

TEST_CASE("series mul and invert") {
    // (1-x) * (1+x+x^2+...) = 1 (mod x^8)
    PuiseuxSeries one_minus_x = from_ints({1, -1}, 0, 8);
    PuiseuxSeries geom = from_ints({1, 1, 1, 1, 1, 1, 1, 1}, 0, 8);
    PuiseuxSeries prod = one_minus_x * geom;
    CHECK(prod == PuiseuxSeries::one(8));
    CHECK(one_minus_x.inverse() == geom);

    // x^{1/2} * x^{1/2} = x
    PuiseuxSeries half = PuiseuxSeries::monomial(GaussianRational(1), make_rational(1, 2), Rational(5));
    PuiseuxSeries sq = half * half;
    CHECK(sq.valuation() == 1);
    CHECK(sq.leading_coeff().is_one());
    CHECK(sq.agrees_with(PuiseuxSeries::monomial(GaussianRational(1), Rational(1), Rational(5))));

    CHECK_THROWS_AS(PuiseuxSeries::zero(5).inverse(), InvertZeroSeries);
}

TEST_CASE("invert soundness on 500 random invertible series") {
    std::mt19937 rng(500);
    for (int t = 0; t < 500; ++t) {
        long ram = 1 + (t % 3);
        PuiseuxSeries f = random_series(rng, 12, ram);
        if (f.is_zero_to_order()) continue;
        PuiseuxSeries p = f * f.inverse();
        PuiseuxSeries one = PuiseuxSeries::one(1);
        CHECK(p.agrees_with(one));
        CHECK(!p.is_zero_to_order());
        CHECK(p.leading_coeff().is_one());
    }
}

TEST_CASE("ring axioms to truncation") {
    std::mt19937 rng(42);
    for (int t = 0; t < 120; ++t) {
        PuiseuxSeries f = random_series(rng, 10), g = random_series(rng, 10), h = random_series(rng, 10);
        CHECK(((f + g) + h) == (f + (g + h)));
        CHECK((f * g) == (g * f));
        CHECK((f * (g + h)).agrees_with(f * g + f * h));
    }
}

TEST_CASE("substitute_power basics") {
    PuiseuxSeries p = from_ints({1, 0, 1}, 1, 5); // x + x^3
    PuiseuxSeries q = substitute_power(p, 2);
    CHECK(q.coeff_at(Rational(2)) == GaussianRational(1));
    CHECK(q.coeff_at(Rational(6)) == GaussianRational(1));
    CHECK(q.order() == 10);

    // x^{1/2} under p=2 becomes x with ramification 1 after normalization
    PuiseuxSeries half = PuiseuxSeries::monomial(GaussianRational(1), make_rational(1, 2), Rational(3));
    PuiseuxSeries sq = substitute_power(half, 2);
    CHECK(sq.ram() == 1);
    CHECK(sq.valuation() == 1);
}

TEST_CASE("Mahler identity F(x^2) = F(x) - x by brute expansion") {
    PuiseuxSeries F = power_sum_brute(2, 32);
    PuiseuxSeries lhs = substitute_power(F, 2); // trusted to 64
    PuiseuxSeries rhs = F - from_ints({1}, 1, 32);
    CHECK(lhs.agrees_with(rhs));
    CHECK(lhs.order() == 64);
}

TEST_CASE("substitute_scale") {
    PuiseuxSeries f = from_ints({1, 1, 1}, 0, 3); // 1 + x + x^2
    PuiseuxSeries g = substitute_scale(f, GaussianRational(2));
    CHECK(g == from_ints({1, 2, 4}, 0, 3));

    PuiseuxSeries x = from_ints({1}, 1, 9);
    CHECK(substitute_scale(x, GaussianRational::i()).coeff_at(Rational(1)) == GaussianRational::i());

    // scale by q then q^{-1} is the identity
    std::mt19937 rng(3);
    GaussianRational q(Rational(3), Rational(2));
    for (int t = 0; t < 50; ++t) {
        PuiseuxSeries s = random_series(rng, 8);
        CHECK(substitute_scale(substitute_scale(s, q), q.inverse()) == s);
    }

    // ramified scaling needs a declared root
    PuiseuxSeries half = PuiseuxSeries::monomial(GaussianRational(1), make_rational(1, 2), Rational(3));
    CHECK_THROWS_AS(substitute_scale(half, GaussianRational(4)), RootUnavailable);
    PuiseuxSeries scaled = substitute_scale(half, GaussianRational(4), GaussianRational(2));
    CHECK(scaled.leading_coeff() == GaussianRational(2)); // 4^{1/2} = 2 at exponent 1/2
}

TEST_CASE("substitute_shift matches brute long division of 1/(x+h)") {
    // 1/(x+h) = t/(1+ht) = t - h t^2 + h^2 t^3 - ...
    GaussianRational h(Rational(3), Rational(1));
    InfinitySeries tser(1, 1, {GaussianRational(1)}, 8); // t
    InfinitySeries shifted = substitute_shift(tser, h);
    for (long k = 1; k < 8; ++k)
        CHECK(shifted.coeff_index(k) == (-h).pow(k - 1));

    // shift by 0 is the identity
    std::mt19937 rng(8);
    for (int t = 0; t < 20; ++t) {
        std::vector<GaussianRational> w(10);
        for (auto& e : w) e = GaussianRational(Rational(rng() % 13) - 6);
        InfinitySeries f(1, -2, std::move(w), 8);
        CHECK(substitute_shift(f, GaussianRational(0)) == f);
        // inverse shifts compose to the identity to order
        InfinitySeries g = substitute_shift(substitute_shift(f, h), -h);
        CHECK(g.agrees_with(f));
    }
}

TEST_CASE("substitution homomorphisms") {
    std::mt19937 rng(77);
    GaussianRational q(Rational(5), Rational(1));
    for (int t = 0; t < 40; ++t) {
        PuiseuxSeries f = random_series(rng, 9), g = random_series(rng, 9);
        CHECK(substitute_power(f * g, 2).agrees_with(substitute_power(f, 2) * substitute_power(g, 2)));
        CHECK(substitute_power(f + g, 3).agrees_with(substitute_power(f, 3) + substitute_power(g, 3)));
        CHECK(substitute_scale(f * g, q).agrees_with(substitute_scale(f, q) * substitute_scale(g, q)));
        CHECK(substitute_scale(f + g, q).agrees_with(substitute_scale(f, q) + substitute_scale(g, q)));
    }
    GaussianRational h(Rational(-2), Rational(1));
    for (int t = 0; t < 25; ++t) {
        std::vector<GaussianRational> w1(8), w2(8);
        for (auto& e : w1) e = GaussianRational(Rational(rng() % 9) - 4);
        for (auto& e : w2) e = GaussianRational(Rational(rng() % 9) - 4);
        InfinitySeries f(1, 0, std::move(w1), 8), g(1, 1, std::move(w2), 8);
        CHECK(substitute_shift(f * g, h).agrees_with(substitute_shift(f, h) * substitute_shift(g, h)));
        CHECK(substitute_shift(f + g, h).agrees_with(substitute_shift(f, h) + substitute_shift(g, h)));
    }
}

TEST_CASE("rational_to_series") {
    Polynomial x = Polynomial::x();
    // 1/(1-x) at zero
    PuiseuxSeries s = to_series_at_zero(RationalFunction(Polynomial(1), Polynomial(1) - x), 5);
    CHECK(s == from_ints({1, 1, 1, 1, 1}, 0, 5));
    // x/(x-1) at infinity = 1/(1 - t) = 1 + t + t^2 (brute division)
    InfinitySeries si = to_series_at_infinity(RationalFunction(x, x - Polynomial(1)), 3);
    CHECK(si.val_index() == 0);
    for (long k = 0; k < 3; ++k) CHECK(si.coeff_index(k) == GaussianRational(1));
    // x^2 at zero has valuation 2
    PuiseuxSeries m = to_series_at_zero(RationalFunction(x * x), 9);
    CHECK(m.valuation() == 2);
}

TEST_CASE("rational_to_series commutes with arithmetic") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<long> c(-5, 5);
    auto rand_rf = [&] {
        std::vector<GaussianRational> n(4), d(3);
        for (auto& e : n) e = GaussianRational(c(rng));
        for (auto& e : d) e = GaussianRational(c(rng));
        Polynomial den = Polynomial(d) + Polynomial::x().pow(3);
        return RationalFunction(Polynomial(n), den);
    };
    for (int t = 0; t < 50; ++t) {
        RationalFunction a = rand_rf(), b = rand_rf();
        CHECK(to_series_at_zero(a + b, 12).agrees_with(to_series_at_zero(a, 12) + to_series_at_zero(b, 12)));
        CHECK(to_series_at_zero(a * b, 12).agrees_with(to_series_at_zero(a, 12) * to_series_at_zero(b, 12)));
        CHECK(to_series_at_infinity(a + b, 12).agrees_with(to_series_at_infinity(a, 12) + to_series_at_infinity(b, 12)));
        CHECK(to_series_at_infinity(a * b, 12).agrees_with(to_series_at_infinity(a, 12) * to_series_at_infinity(b, 12)));
    }
}

TEST_CASE("re-ramification round trip is the identity") {
    std::mt19937 rng(55);
    for (int t = 0; t < 60; ++t) {
        PuiseuxSeries f = random_series(rng, 7, 1 + (t % 4));
        for (long m : {2L, 3L, 6L}) CHECK(f.re_ramified(m).normalized() == f);
    }
}

TEST_CASE("coefficient access past the trusted order throws") {
    PuiseuxSeries f = from_ints({1, 2}, 0, 4);
    CHECK(f.coeff_at(Rational(3)) == GaussianRational(0));
    CHECK_THROWS_AS(f.coeff_at(Rational(4)), InsufficientOrder);
}
