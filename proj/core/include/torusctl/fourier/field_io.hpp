#pragma once

#include <istream>
#include <sstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "torusctl/fourier/trig_field.hpp"

namespace torusctl {

// Splits on blanks and tabs; '#' starts a comment.
std::vector<std::string_view> split_fields(std::string_view line);

// One line per canonical mode: "l1 l2 l3  a1 a2 a3  b1 b2 b3".
template <class S>
void write_field(std::ostream& os, const TrigField<S>& u) {
  using T = ScalarTraits<S>;
  for (const auto& [l, c] : u.modes()) {
    os << l[0] << ' ' << l[1] << ' ' << l[2] << "  ";
    os << T::format(c.cos[0]) << ' ' << T::format(c.cos[1]) << ' ' << T::format(c.cos[2]) << "  ";
    os << T::format(c.sin[0]) << ' ' << T::format(c.sin[1]) << ' ' << T::format(c.sin[2]) << '\n';
  }
}

template <class S>
std::string format_field(const TrigField<S>& u) {
  std::ostringstream os;
  write_field(os, u);
  return os.str();
}

int parse_int(std::string_view s);

// Reads lines until EOF. Non-canonical wave vectors are folded; repeated
// modes accumulate. Blank and comment lines are skipped.
template <class S>
TrigField<S> read_field(std::istream& is) {
  TrigField<S> u;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto tok = split_fields(line);
    if (tok.empty()) continue;
    if (tok.size() != 9) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 9 fields, got " +
                       std::to_string(tok.size()));
    }
    try {
      const auto l = WaveVector::try_make({parse_int(tok[0]), parse_int(tok[1]), parse_int(tok[2])});
      if (!l) throw ParseError("zero wave vector");
      Vec3<S> a, b;
      for (int i = 0; i < 3; ++i) {
        a[i] = ScalarTraits<S>::parse(tok[3 + i]);
        b[i] = ScalarTraits<S>::parse(tok[6 + i]);
      }
      u.add_mode(*l, a, b);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const DivergenceViolation& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return u;
}

template <class S>
TrigField<S> parse_field(const std::string& text) {
  std::istringstream is(text);
  return read_field<S>(is);
}

}  // namespace torusctl
