#ifndef DIFFALG_ERRORS_HPP
#define DIFFALG_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace diffalg {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvertZeroSeries : Error {
    InvertZeroSeries() : Error("cannot invert a series that is zero modulo its trusted order") {}
};

struct RootUnavailable : Error {
    explicit RootUnavailable(const std::string& what) : Error(what) {}
};

struct InsufficientOrder : Error {
    explicit InsufficientOrder(const std::string& what) : Error(what) {}
};

struct RamificationMismatch : Error {
    explicit RamificationMismatch(const std::string& what) : Error(what) {}
};

// q-resonance: the coefficient recursion hits q^e = rho with a nonzero
// right-hand side at exponent e.
struct Resonance : Error {
    explicit Resonance(Rational e)
        : Error("resonance obstructs the coefficient at exponent " + rational_str(e)), exponent(std::move(e)) {}
    Rational exponent;
};

struct NoFormalSolution : Error {
    explicit NoFormalSolution(const std::string& why) : Error("no formal solution: " + why) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct SingularGauge : Error {
    SingularGauge() : Error("gauge transformation matrix is singular") {}
};

struct SingularLeadingCoefficient : Error {
    SingularLeadingCoefficient() : Error("companion matrix requires a_0 != 0") {}
};

struct QIsOne : Error {
    QIsOne() : Error("q = 1 is rejected (no limit interpretation is taken)") {}
};

struct InvalidBeta : Error {
    InvalidBeta(size_t index, long exponent)
        : Error("beta parameter #" + std::to_string(index + 1) + " equals q^(" + std::to_string(exponent) +
                "), so the series coefficients do not exist"),
          beta_index(index), q_exponent(exponent) {}
    size_t beta_index;
    long q_exponent;
};

} // namespace diffalg

#endif
