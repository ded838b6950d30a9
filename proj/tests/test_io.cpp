#include <doctest.h>

#include <diffalg/io.hpp>

#include <random>

using namespace diffalg;

namespace {

RationalFunction random_rf(std::mt19937& rng) {
    std::uniform_int_distribution<long> c(-9, 9);
    std::uniform_int_distribution<long> d(1, 6);
    std::vector<GaussianRational> n(4), den(3);
    for (auto& e : n) e = GaussianRational(make_rational(c(rng), d(rng)), make_rational(c(rng), d(rng)));
    for (auto& e : den) e = GaussianRational(make_rational(c(rng), d(rng)));
    return RationalFunction(Polynomial(n), Polynomial(den) + Polynomial::x().pow(3));
}

} // namespace

TEST_CASE("expression parser basics") {
    CHECK(parse_rational_function("(x^2+1)/(x^3-2)") ==
          RationalFunction(Polynomial::x().pow(2) + Polynomial(1), Polynomial::x().pow(3) - Polynomial(2)));
    CHECK(parse_rational_function("3/4") == RationalFunction(GaussianRational(make_rational(3, 4))));
    CHECK(parse_rational_function("1/2 - 2/3*i") ==
          RationalFunction(GaussianRational(make_rational(1, 2), make_rational(-2, 3))));
    CHECK(parse_rational_function("x^-2") == RationalFunction(Polynomial(1), Polynomial::x().pow(2)));
    CHECK(parse_rational_function("-x") == -RationalFunction::x());
    CHECK(parse_rational_function("(1+i)*(1-i)") == RationalFunction(2));
    CHECK_THROWS_AS(parse_rational_function("x +"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational_function("y"), std::invalid_argument);
}

TEST_CASE("print-parse round trip for rational functions") {
    std::mt19937 rng(74);
    for (int t = 0; t < 150; ++t) {
        RationalFunction f = random_rf(rng);
        CHECK(parse_rational_function(f.str()) == f);
    }
}

TEST_CASE("series JSON round trip") {
    std::mt19937 rng(75);
    std::uniform_int_distribution<long> c(-9, 9);
    for (int t = 0; t < 60; ++t) {
        std::vector<GaussianRational> w(10);
        for (auto& e : w) e = GaussianRational(make_rational(c(rng), 3), Rational(c(rng)));
        PuiseuxSeries s(1 + (t % 3), -4 + (t % 5), std::move(w), 30);
        PuiseuxSeries back = series_from_json<Locus::at_zero>(to_json(s));
        CHECK(back == s);
    }
    InfinitySeries inf(1, -2, {GaussianRational(1), GaussianRational(0), GaussianRational(make_rational(5, 7))}, 9);
    CHECK(series_from_json<Locus::at_infinity>(to_json(inf)) == inf);
    CHECK_THROWS(series_from_json<Locus::at_zero>(to_json(inf)));
}

TEST_CASE("pair, equation, certificate round trips") {
    OperatorPair pair = OperatorPair::q_difference(GaussianRational(make_rational(3, 5), make_rational(4, 5)),
                                                   GaussianRational(2));
    CHECK(pair_from_json(to_json(pair)) == pair);

    ScalarEquation eq(OpRole::phi, pair,
                      {parse_rational_function("(x+1)/(x-2)"), RationalFunction(1)},
                      parse_rational_function("x^2/3"));
    ScalarEquation back = equation_from_json(to_json(eq));
    CHECK(back.coeffs == eq.coeffs);
    CHECK(back.rhs == eq.rhs);
    CHECK(back.pair == eq.pair);

    Certificate cert{GaussianRational(make_rational(2, 3), Rational(1)), make_rational(-2, 1),
                     parse_rational_function("(x^2+i)/(x-3)"), 2};
    Certificate cback = certificate_from_json(to_json(cert));
    CHECK(cback.c == cert.c);
    CHECK(cback.n == cert.n);
    CHECK(cback.b == cert.b);
    CHECK(cback.b_ramification == cert.b_ramification);
}

TEST_CASE("report serialization is deterministic") {
    NamedSeries f = mahler_power_sum(2, 40);
    Json a = to_json(f.equation);
    Json b = to_json(mahler_power_sum(2, 40).equation);
    CHECK(a.dump(2) == b.dump(2));

    ValidationReport rep = validate_pair(OperatorPair::mahler(4, 8));
    Json j = to_json(rep);
    CHECK(j["hard_ok"] == false);
    CHECK(j.dump() == to_json(validate_pair(OperatorPair::mahler(4, 8))).dump());
}
