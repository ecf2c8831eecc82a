#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace escops {

// Exact rational scalar used everywhere; no floating point in any
// computational path.
using Rat = boost::multiprecision::mpq_rational;

inline std::string rat_to_string(const Rat& q) {
  return q.str();
}

// Parses "p" or "p/q" with optional leading '-'. Denominators must be
// nonzero; the result is stored in lowest terms with positive denominator.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(boost::multiprecision::mpz_int(s));
    }
    boost::multiprecision::mpz_int num(s.substr(0, slash));
    boost::multiprecision::mpz_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rat(num) / Rat(den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

}  // namespace escops
