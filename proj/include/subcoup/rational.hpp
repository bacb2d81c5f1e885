#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>

namespace subcoup {

// Exact arbitrary-precision rational. All set-function values, weights and
// interval endpoints are of this type; no floating point leaks into results.
using Rat = mpq_class;

// Canonical text form: lowest terms, positive denominator, "p" when the
// denominator is 1 and "p/q" otherwise.
inline std::string rat_to_string(const Rat& v) { return v.get_str(); }

inline bool rat_is_integer(const Rat& v) { return v.get_den() == 1; }

// Accepts "p", "p/q" and plain decimals like "-1.25". Throws
// std::invalid_argument on anything else.
inline Rat parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') ++i;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    ++i;
    ++digits;
  }
  if (digits == 0) throw std::invalid_argument("bad rational literal: " + text);

  if (i == text.size()) {  // integer
    Rat v(text);
    v.canonicalize();
    return v;
  }

  if (text[i] == '/') {
    std::size_t j = i + 1;
    std::size_t den_digits = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      ++j;
      ++den_digits;
    }
    if (den_digits == 0 || j != text.size())
      throw std::invalid_argument("bad rational literal: " + text);
    Rat v(text);
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    v.canonicalize();
    return v;
  }

  if (text[i] == '.') {
    std::size_t j = i + 1;
    std::size_t frac_digits = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      ++j;
      ++frac_digits;
    }
    if (frac_digits == 0 || j != text.size())
      throw std::invalid_argument("bad rational literal: " + text);
    std::string digits_only = text.substr(0, i) + text.substr(i + 1, frac_digits);
    mpz_class num(digits_only);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
    Rat v(num, den);
    v.canonicalize();
    return v;
  }

  throw std::invalid_argument("bad rational literal: " + text);
}

}  // namespace subcoup
