#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <cstdio>
#include <string>

namespace ndisco {

/// Exact probability / expected-time arithmetic.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r)
{
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// "49/18", or "3" for integers.
inline std::string to_fraction_string(const Rational& r)
{
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Decimal rendering with `digits` significant digits (printf %g semantics).
inline std::string to_significant(double value, int digits = 12)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

inline std::string to_significant(const Rational& r, int digits = 12)
{
  return to_significant(to_double(r), digits);
}

/// Decimal rendering with a fixed number of fractional digits.
inline std::string to_fixed(const Rational& r, int decimals = 12)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, to_double(r));
  return buf;
}

/// Exact decimal expansion when the denominator has only the prime factors
/// 2 and 5; otherwise the closest 17-significant-digit decimal.
inline std::string to_exact_decimal(const Rational& r)
{
  std::int64_t den = r.denominator();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return to_significant(r, 17);

  const int places = twos > fives ? twos : fives;
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const std::int64_t scaled_abs =
      (r.numerator() < 0 ? -r.numerator() : r.numerator()) * (scale / r.denominator());
  std::string digits = std::to_string(scaled_abs);
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places)
      digits.insert(0, static_cast<std::size_t>(places + 1 - static_cast<int>(digits.size())), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return (r.numerator() < 0 ? "-" : "") + digits;
}

}  // namespace ndisco
