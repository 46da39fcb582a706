#pragma once

#include <gmpxx.h>

#include <array>

#include "trifilt/types.hpp"

namespace trifilt {

using Rational = mpq_class;
using ExactPoint = std::array<Rational, kMaxDim>;

// Every finite double is a dyadic rational, so this conversion is lossless.
inline Rational to_rational(double x) { return Rational(x); }

inline ExactPoint to_exact(const Coords& c) { return {Rational(c[0]), Rational(c[1]), Rational(c[2])}; }

/// Nearest double to q, ties to even.
double nearest_double(const Rational& q);

/// Nearest double to the square root of q >= 0, ties to even.
double sqrt_nearest(const Rational& q);

/// Same for num / den * 2^exp2 with den > 0, without forming the fraction.
double sqrt_nearest(const mpz_class& num, const mpz_class& den, long exp2);

}  // namespace trifilt
