#include "trifilt/exact.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace trifilt {
namespace {

bool mantissa_even(double x) { return (std::bit_cast<std::uint64_t>(x) & 1u) == 0; }

// A positive double as m * 2^e with an integer mantissa.
struct Dyadic {
  std::int64_t m;
  long e;
};

Dyadic split(double x) {
  int ex = 0;
  const double f = std::frexp(x, &ex);
  return {static_cast<std::int64_t>(std::ldexp(f, 53)), static_cast<long>(ex) - 53};
}

// Midpoint of two positive doubles, exactly.
Dyadic midpoint(double lo, double hi) {
  Dyadic a = split(lo), b = split(hi);
  const long e = std::min(a.e, b.e);
  a.m <<= (a.e - e);
  b.m <<= (b.e - e);
  return {a.m + b.m, e - 1};
}

// Sign of num/den * 2^exp2 - (mid)^2 with den > 0.
int cmp_square(const mpz_class& num, const mpz_class& den, long exp2, const Dyadic& mid) {
  mpz_class sq(static_cast<long>(mid.m));
  sq *= sq;
  sq *= den;
  mpz_class lhs = num;
  const long t = exp2 - 2 * mid.e;
  if (t >= 0)
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(t));
  else
    mpz_mul_2exp(sq.get_mpz_t(), sq.get_mpz_t(), static_cast<mp_bitcnt_t>(-t));
  return cmp(lhs, sq);
}

double approx_ratio(const mpz_class& num, const mpz_class& den, long exp2) {
  long en = 0, ed = 0;
  const double a = mpz_get_d_2exp(&en, num.get_mpz_t());
  const double b = mpz_get_d_2exp(&ed, den.get_mpz_t());
  return std::ldexp(a / b, static_cast<int>(en - ed + exp2));
}

}  // namespace

double nearest_double(const Rational& q) {
  const double d = q.get_d();
  const Rational dq(d);
  const int c = cmp(dq, q);
  if (c == 0) return d;
  const double lo = c < 0 ? d : std::nextafter(d, -std::numeric_limits<double>::infinity());
  const double hi = c < 0 ? std::nextafter(d, std::numeric_limits<double>::infinity()) : d;
  const Rational mid = (Rational(lo) + Rational(hi)) / 2;
  const int m = cmp(q, mid);
  if (m < 0) return lo;
  if (m > 0) return hi;
  return mantissa_even(lo) ? lo : hi;
}

double sqrt_nearest(const mpz_class& num, const mpz_class& den, long exp2) {
  if (sgn(den) <= 0) throw Error("square root with a non-positive denominator");
  if (sgn(num) < 0) throw Error("square root of a negative number");
  if (sgn(num) == 0) return 0.0;
  constexpr double inf = std::numeric_limits<double>::infinity();
  double s = std::sqrt(approx_ratio(num, den, exp2));
  if (!(s > 0)) s = std::numeric_limits<double>::denorm_min();
  // The true root lies within a few ulps of s; walk until s is the nearest.
  for (;;) {
    const double up = std::nextafter(s, inf);
    const int c = cmp_square(num, den, exp2, midpoint(s, up));
    if (c > 0 || (c == 0 && !mantissa_even(s))) {
      s = up;
      continue;
    }
    const double down = std::nextafter(s, -inf);
    if (down > 0) {
      const int e = cmp_square(num, den, exp2, midpoint(down, s));
      if (e < 0 || (e == 0 && !mantissa_even(s))) {
        s = down;
        continue;
      }
    }
    return s;
  }
}

double sqrt_nearest(const Rational& q) {
  if (sgn(q) < 0) throw Error("square root of a negative number");
  if (sgn(q) == 0) return 0.0;
  return sqrt_nearest(q.get_num(), q.get_den(), 0);
}

}  // namespace trifilt
