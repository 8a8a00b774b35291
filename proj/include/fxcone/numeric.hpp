#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fxcone {

using Complex = std::complex<double>;
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "a/b", or "a" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}
inline std::string to_string(const Integer& v) { return v.str(); }
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

enum class ArithMode { exact, floating };
inline const char* mode_name(ArithMode m) noexcept { return m == ArithMode::exact ? "exact" : "float"; }

}  // namespace fxcone
