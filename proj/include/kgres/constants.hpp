#pragma once

// Small/large constants closing the a priori estimate. The twelve strict
// inequalities are, with slack = lhs - rhs > 0:
//
//   1  d3 (N - 2) + 1/2 + 3 d1 > 1
//   2  9 d1 > d3 (A + 3/2 - 3 d1)
//   3  1/2 + 9 d1 > d3 (A + 13/6 - 2 d1)
//   4  3 d1 > d3 (A + 2) > 0
//   5  d2 / 24 > 3 d1
//   6  3 d1 + A d2 < 1
//   7  A d2 < 1/2
//   8  A d2 + 3 d1 < 1
//   9  d3 (N - 3/2) > 21/16
//  10  d3 (A + 1) < 5/16
//  11  (A + 2) d3 < 3/16
//  12  d3 (A + 1) < 3/16

#include <array>
#include <optional>

namespace kgres {

inline constexpr int kConstraintCount = 12;

struct ConstantsBudget {
  double A = 0.0;
  int n = 1;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta3 = 0.0;
  double N = 0.0;  // integer valued
  std::array<double, kConstraintCount> slack{};
};

/// Slack of every inequality; entry i corresponds to inequality i + 1.
std::array<double, kConstraintCount> constraint_slack(double A, double delta1, double delta2, double delta3,
                                                      double N);
bool all_constraints_hold(const std::array<double, kConstraintCount>& slack);

struct ConstantsSearch {
  std::optional<ConstantsBudget> budget;
  int binding_inequality = 0;  // 1-based; the tightest constraint of the best candidate
  double binding_slack = 0.0;
};

/// Logarithmic grid search over (d1, d2, d3) in [1e-8, 0.5] with the smallest
/// admissible integer N for each triple. Requires A > 0 and n >= 1.
ConstantsSearch find_admissible_constants(double A, int n);

}  // namespace kgres
