#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <system_error>

#include "torusctl/errors.hpp"

namespace torusctl {

// Exact rationals for saturation work, doubles for dynamics.
using Rational = mpq_class;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  // Coefficient pairs below this fraction of the largest coefficient are
  // dropped from a field's normal form.
  static constexpr double kPruneRelative = 1e-14;
  // Divergence residual allowed relative to |coefficient|*|l|.
  static constexpr double kDivergenceRelative = 1e-12;

  static double from_int(long v) { return static_cast<double>(v); }
  static double to_double(double v) { return v; }
  static double abs(double v) { return std::fabs(v); }
  static bool is_zero(double v) { return v == 0.0; }

  // Shortest decimal that round-trips.
  static std::string format(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }

  static double parse(std::string_view s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw ParseError("not a floating-point number: '" + std::string(s) + "'");
    }
    return v;
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;

  static Rational from_int(long v) { return Rational(v); }
  static double to_double(const Rational& v) { return v.get_d(); }
  static Rational abs(const Rational& v) { return ::abs(v); }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }

  // Always "p/q", including q = 1.
  static std::string format(const Rational& v) {
    return v.get_num().get_str() + "/" + v.get_den().get_str();
  }

  static Rational parse(std::string_view s) {
    Rational v;
    std::string str(s);
    if (str.empty() || v.set_str(str, 10) != 0) {
      throw ParseError("not a rational number: '" + str + "'");
    }
    if (v.get_den() == 0) throw ParseError("zero denominator in '" + str + "'");
    v.canonicalize();
    return v;
  }
};

}  // namespace torusctl
