#include "chabauty/exact.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

#include "chabauty/errors.hpp"

namespace chabauty {

namespace {

std::string strip(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

BigInt pow10(long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

std::uint64_t parse_uint(std::string_view s) {
  if (s.empty()) throw ParseError("expected an integer");
  std::uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad integer '" + std::string(s) + "'");
    std::uint64_t next = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (next / 10 != v) throw ParseError("integer overflow in '" + std::string(s) + "'");
    v = next;
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw ParseError("empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(std::string_view(s).substr(0, slash));
    Rational den = parse_rational(std::string_view(s).substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  BigInt mantissa = 0;
  long frac_digits = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw ParseError("bad number '" + s + "'");
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw ParseError("bad number '" + s + "'");
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    auto e = parse_uint(std::string_view(s).substr(i));
    if (e > 4000) throw ParseError("exponent too large in '" + s + "'");
    exponent = eneg ? -static_cast<long>(e) : static_cast<long>(e);
  }
  exponent -= frac_digits;
  Rational r = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational rational_gcd(const Rational& q, const Rational& r) {
  if (q == 0) return abs(r);
  if (r == 0) return abs(q);
  BigInt g = gcd(numerator(q), numerator(r));
  BigInt l = lcm(denominator(q), denominator(r));
  return Rational(abs(g), l);
}

std::pair<std::uint64_t, std::uint64_t> squarefree_split(std::uint64_t n) {
  std::uint64_t square = 1, free = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    for (int j = 0; j < k / 2; ++j) square *= p;
    if (k % 2) free *= p;
  }
  return {square, free * n};
}

SurdNumber::SurdNumber(const Rational& q) { add_term(1, q); }

SurdNumber SurdNumber::sqrt_of(std::uint64_t radicand, const Rational& q) {
  SurdNumber out;
  if (radicand == 0 || q == 0) return out;
  auto [s, d] = squarefree_split(radicand);
  out.add_term(d, q * s);
  return out;
}

void SurdNumber::add_term(std::uint64_t d, const Rational& q) {
  if (q == 0) return;
  auto [it, inserted] = terms_.emplace(d, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) terms_.erase(it);
  }
}

bool SurdNumber::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1); }

Rational SurdNumber::rational_part() const {
  auto it = terms_.find(1);
  return it == terms_.end() ? Rational(0) : it->second;
}

long double SurdNumber::to_long_double() const {
  long double v = 0;
  for (const auto& [d, q] : terms_) v += q.convert_to<long double>() * std::sqrt(static_cast<long double>(d));
  return v;
}

int SurdNumber::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return rational_part() > 0 ? 1 : -1;
  // Nonzero in the field; the long double value is far from cancellation
  // for the coefficient sizes accepted by the parser.
  return to_long_double() > 0 ? 1 : -1;
}

SurdNumber SurdNumber::operator-() const {
  SurdNumber out = *this;
  for (auto& [d, q] : out.terms_) q = -q;
  return out;
}

SurdNumber& SurdNumber::operator+=(const SurdNumber& o) {
  for (const auto& [d, q] : o.terms_) add_term(d, q);
  return *this;
}

SurdNumber& SurdNumber::operator-=(const SurdNumber& o) {
  for (const auto& [d, q] : o.terms_) add_term(d, -q);
  return *this;
}

SurdNumber operator*(const SurdNumber& a, const SurdNumber& b) {
  SurdNumber out;
  for (const auto& [d1, q1] : a.terms_)
    for (const auto& [d2, q2] : b.terms_) {
      std::uint64_t g = std::gcd(d1, d2);
      // sqrt(d1) sqrt(d2) = g sqrt(d1 d2 / g^2), and d1 d2 / g^2 is squarefree.
      out.add_term((d1 / g) * (d2 / g), q1 * q2 * g);
    }
  return out;
}

SurdNumber SurdNumber::parse(std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw ParseError("empty surd expression");
  SurdNumber out;
  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    // A term ends at the next sign that is not part of an exponent.
    std::size_t j = i;
    while (j < s.size()) {
      char c = s[j];
      if ((c == '+' || c == '-') && j > i && s[j - 1] != 'e' && s[j - 1] != 'E') break;
      ++j;
    }
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw ParseError("dangling sign in '" + s + "'");
    Rational coeff = 1;
    std::uint64_t radicand = 1;
    if (auto pos = term.find("sqrt("); pos != std::string::npos) {
      auto close = term.find(')', pos);
      if (close == std::string::npos) throw ParseError("unclosed sqrt( in '" + s + "'");
      std::string before = term.substr(0, pos);
      if (!before.empty()) {
        if (before.back() != '*') throw ParseError("expected '*' before sqrt in '" + term + "'");
        before.pop_back();
        coeff = parse_rational(before);
      }
      radicand = parse_uint(std::string_view(term).substr(pos + 5, close - pos - 5));
      std::string after = term.substr(close + 1);
      if (!after.empty()) {
        if (after.front() != '/') throw ParseError("unexpected text after sqrt(...) in '" + term + "'");
        Rational den = parse_rational(after.substr(1));
        if (den == 0) throw ParseError("zero denominator in '" + term + "'");
        coeff /= den;
      }
    } else {
      coeff = parse_rational(term);
    }
    out += sqrt_of(radicand, negative ? Rational(-coeff) : coeff);
    i = j;
  }
  return out;
}

std::string SurdNumber::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [d, q] : terms_) {
    std::string term = d == 1 ? chabauty::to_string(q) : chabauty::to_string(q) + "*sqrt(" + std::to_string(d) + ")";
    if (!out.empty() && term.front() != '-') out += "+";
    out += term;
  }
  return out;
}

}  // namespace chabauty
