#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace griddraw {

/// Exact rational used for every reported λ value. Always kept in lowest terms.
using Rational = boost::rational<std::int64_t>;

/// Raised when an exhaustive search or enumeration would exceed its state limit.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline double to_double(const Rational& q) {
  return boost::rational_cast<double>(q);
}

/// Parses "p/q" or a bare integer "p".
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(std::stoll(std::string(text)));
    }
    const auto num = std::stoll(std::string(text.substr(0, slash)));
    const auto den = std::stoll(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
}

}  // namespace griddraw
