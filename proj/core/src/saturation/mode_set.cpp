#include "torusctl/saturation/mode_set.hpp"

#include <sstream>

#include "torusctl/errors.hpp"
#include "torusctl/fourier/field_io.hpp"

namespace torusctl {

ModeSet::ModeSet(const std::vector<WaveVector>& vectors) : vectors_(vectors.begin(), vectors.end()) {
  for (const auto& l : vectors_) {
    if (!vectors_.count(-l)) {
      std::ostringstream os;
      os << "mode set is not symmetric: contains " << l << " but not " << -l;
      throw NonSymmetricModeSet(os.str());
    }
  }
}

ModeSet ModeSet::symmetrized(const std::vector<WaveVector>& vectors, bool* completed) {
  std::set<WaveVector> in(vectors.begin(), vectors.end());
  std::vector<WaveVector> all(in.begin(), in.end());
  bool added = false;
  for (const auto& l : in) {
    if (!in.count(-l)) {
      all.push_back(-l);
      added = true;
    }
  }
  if (completed) *completed = added;
  return ModeSet(all);
}

ModeSet ModeSet::unit_axes() {
  return ModeSet({WaveVector(1, 0, 0), WaveVector(-1, 0, 0), WaveVector(0, 1, 0),
                  WaveVector(0, -1, 0), WaveVector(0, 0, 1), WaveVector(0, 0, -1)});
}

std::vector<WaveVector> ModeSet::canonical_pairs() const {
  std::vector<WaveVector> out;
  for (const auto& l : vectors_) {
    if (l.is_canonical()) out.push_back(l);
  }
  return out;
}

ModeSet ModeSet::expansion(int j) const {
  ModeSet cur = *this;
  for (int step = 0; step < j; ++step) {
    std::set<WaveVector> next = cur.vectors_;
    for (const auto& l1 : cur.vectors_) {
      for (const auto& l2 : vectors_) {
        if (parallel(l1, l2)) continue;
        if (auto s = sum(l1, l2)) next.insert(*s);
      }
    }
    cur.vectors_ = std::move(next);
  }
  return cur;
}

ModeSet read_mode_set(std::istream& is, bool* completed) {
  std::vector<WaveVector> vs;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto tok = split_fields(line);
    if (tok.empty()) continue;
    if (tok.size() != 3) {
      throw ParseError("mode set line " + std::to_string(lineno) + ": expected 3 integers");
    }
    try {
      auto l = WaveVector::try_make({parse_int(tok[0]), parse_int(tok[1]), parse_int(tok[2])});
      if (!l) throw ParseError("zero wave vector");
      vs.push_back(*l);
    } catch (const ParseError& e) {
      throw ParseError("mode set line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return ModeSet::symmetrized(vs, completed);
}

std::string format_mode_set(const ModeSet& k) {
  std::ostringstream os;
  for (const auto& l : k.vectors()) os << l[0] << ' ' << l[1] << ' ' << l[2] << '\n';
  return os.str();
}

}  // namespace torusctl
