#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace torusctl::cli {

struct IdentityCheck {
  std::string name;
  long cases = 0;
  long failures = 0;
  double worst = 0.0;  // worst residual; 0 for exact checks that pass
  double tolerance = 0.0;
  bool pass() const { return failures == 0; }
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool vacuous() const;
  bool pass() const;
  double worst_float_residual() const;
  std::string to_csv() const;
};

struct IdentityOptions {
  int exact_box = 2;  // rational checks over canonical pairs with |l|_inf <= exact_box
  int oracle_pairs = 100;
  int oracle_box = 4;
  std::uint64_t seed = 1;
  bool flip_cos_cos_sign = false;
};

// Closed-form single-mode identities against the bilinear form (exact),
// the bilinear form against the grid oracle (relative 1e-10), symmetry of Q
// (exact) and <B(u,v),v> = 0 on random fields.
IdentityReport run_identity_suite(const IdentityOptions& opt);

}  // namespace torusctl::cli
