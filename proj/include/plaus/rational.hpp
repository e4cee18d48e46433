#pragma once

// Exact rational arithmetic. All decision procedures in this library run on
// canonical big rationals: gcd(|num|, den) = 1, den > 0, zero is 0/1.
// mpq_class maintains that normal form through every arithmetic operator.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace plaus {

using Integer = mpz_class;
using Rational = mpq_class;

class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Canonical text form: "p/q", with "/q" omitted when q == 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "p" or "p/q" (optional leading '-'). Rejects anything else.
inline Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  std::size_t slash = text.find('/');
  auto digits_ok = [](const std::string& s, bool sign) {
    if (s.empty()) return false;
    std::size_t i = (sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string num = text.substr(0, slash);
  if (!digits_ok(num, true)) throw ParseError("bad rational literal: " + text);
  if (num[0] == '+') num.erase(0, 1);
  Rational r;
  if (slash == std::string::npos) {
    r = Rational(Integer(num));
  } else {
    std::string den = text.substr(slash + 1);
    if (!digits_ok(den, false)) throw ParseError("bad rational literal: " + text);
    Integer d(den);
    if (d == 0) throw ParseError("zero denominator: " + text);
    r = Rational(Integer(num), d);
  }
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace plaus
