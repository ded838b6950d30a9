#ifndef DIFFALG_DIFFALG_HPP
#define DIFFALG_DIFFALG_HPP

// Umbrella header for the exact difference-algebra toolkit.

#include "rational.hpp"
#include "polynomial.hpp"
#include "rational_function.hpp"
#include "series.hpp"
#include "guess.hpp"
#include "gaussian_integers.hpp"
#include "factor.hpp"
#include "operators.hpp"
#include "matrix.hpp"
#include "systems.hpp"
#include "divisor.hpp"
#include "certificates.hpp"
#include "relations.hpp"
#include "special_functions.hpp"
#include "io.hpp"

#endif
