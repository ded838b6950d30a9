#include <doctest.h>

#include <diffalg/rational.hpp>

#include <random>

using namespace diffalg;

namespace {

GaussianRational random_elem(std::mt19937& rng, int span = 20) {
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, span);
    return {make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))};
}

} // namespace

TEST_CASE("gaussian rational basics") {
    GaussianRational a(make_rational(3, 5), make_rational(4, 5)); // (3+4i)/5
    CHECK(a.norm() == 1);
    CHECK(a * a.conj() == GaussianRational(1));
    CHECK(a.inverse() == a.conj()); // norm one
    CHECK((a * a.inverse()).is_one());

    GaussianRational i = GaussianRational::i();
    CHECK(i * i == GaussianRational(-1));
    CHECK(i.pow(4).is_one());
    CHECK(i.pow(-1) == -i);
}

TEST_CASE("field axioms on random elements") {
    std::mt19937 rng(12345);
    for (int t = 0; t < 200; ++t) {
        GaussianRational a = random_elem(rng), b = random_elem(rng), c = random_elem(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("string round-trip") {
    std::mt19937 rng(99);
    for (int t = 0; t < 200; ++t) {
        GaussianRational a = random_elem(rng);
        CHECK(parse_field_elem(a.str()) == a);
    }
    CHECK(parse_field_elem("3/5+4/5*i") == GaussianRational(make_rational(3, 5), make_rational(4, 5)));
    CHECK(parse_field_elem("-i") == -GaussianRational::i());
    CHECK(parse_field_elem("7") == GaussianRational(7));
    CHECK(parse_field_elem("1/2-2/3*i") == GaussianRational(make_rational(1, 2), make_rational(-2, 3)));
}

TEST_CASE("rational floor") {
    CHECK(rational_floor(make_rational(7, 2)) == 3);
    CHECK(rational_floor(make_rational(-7, 2)) == -4);
    CHECK(rational_floor(make_rational(4, 2)) == 2);
}
