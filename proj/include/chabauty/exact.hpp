#pragma once

// Exact scalars: arbitrary-precision rationals and elements of the
// multiquadratic field Q(sqrt 2, sqrt 3, sqrt 5, ...), written as
// finite sums  q_1 + q_2 sqrt(d_2) + ...  over squarefree d.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace chabauty {

// Expression templates off: results are plain values, safe with auto.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// Parses "p", "p/q", "-1.25", "3e-2" exactly. Throws ParseError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// gcd of two rationals: the positive generator of qZ + rZ (0 if both zero).
Rational rational_gcd(const Rational& q, const Rational& r);

class SurdNumber {
 public:
  using Terms = std::map<std::uint64_t, Rational>;

  SurdNumber() = default;
  SurdNumber(const Rational& q);  // NOLINT(google-explicit-constructor)
  SurdNumber(long long n) : SurdNumber(Rational(n)) {}  // NOLINT

  /// q * sqrt(radicand); the radicand is reduced to squarefree form.
  static SurdNumber sqrt_of(std::uint64_t radicand, const Rational& q = 1);

  /// Grammar: term (('+'|'-') term)*, term := [rational '*'] 'sqrt(' int ')' ['/' int]
  /// | rational. Whitespace is ignored.
  static SurdNumber parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  Rational rational_part() const;

  /// Evaluated in long double; exact zero tests go through is_zero().
  long double to_long_double() const;
  double to_double() const { return static_cast<double>(to_long_double()); }

  /// Sign of the real number; exact for zero.
  int sign() const;

  SurdNumber operator-() const;
  SurdNumber& operator+=(const SurdNumber& o);
  SurdNumber& operator-=(const SurdNumber& o);
  friend SurdNumber operator+(SurdNumber a, const SurdNumber& b) { return a += b; }
  friend SurdNumber operator-(SurdNumber a, const SurdNumber& b) { return a -= b; }
  friend SurdNumber operator*(const SurdNumber& a, const SurdNumber& b);
  friend bool operator==(const SurdNumber& a, const SurdNumber& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(std::uint64_t d, const Rational& q);
  Terms terms_;
};

/// Splits n = s^2 * d with d squarefree; returns {s, d}.
std::pair<std::uint64_t, std::uint64_t> squarefree_split(std::uint64_t n);

}  // namespace chabauty
