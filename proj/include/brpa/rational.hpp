#ifndef BRPA_RATIONAL_HPP_
#define BRPA_RATIONAL_HPP_

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace brpa {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// "p/q" in lowest terms, or "p" when q = 1.
inline std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

}  // namespace brpa

#endif  // BRPA_RATIONAL_HPP_
