#include "kgres/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace kgres {

std::array<double, kConstraintCount> constraint_slack(double A, double d1, double d2, double d3, double N) {
  return {
      d3 * (N - 2.0) + 0.5 + 3.0 * d1 - 1.0,
      9.0 * d1 - d3 * (A + 1.5 - 3.0 * d1),
      0.5 + 9.0 * d1 - d3 * (A + 13.0 / 6.0 - 2.0 * d1),
      std::min(3.0 * d1 - d3 * (A + 2.0), d3 * (A + 2.0)),
      d2 / 24.0 - 3.0 * d1,
      1.0 - 3.0 * d1 - A * d2,
      0.5 - A * d2,
      1.0 - A * d2 - 3.0 * d1,
      d3 * (N - 1.5) - 21.0 / 16.0,
      5.0 / 16.0 - d3 * (A + 1.0),
      3.0 / 16.0 - (A + 2.0) * d3,
      3.0 / 16.0 - d3 * (A + 1.0),
  };
}

bool all_constraints_hold(const std::array<double, kConstraintCount>& slack) {
  return std::all_of(slack.begin(), slack.end(), [](double s) { return s > 0.0; });
}

namespace {

// Slack relative to the size of the quantities compared, so that constraints
// of very different scales can be ranked against each other.
double relative_slack(const std::array<double, kConstraintCount>& slack, double d1, double d2, int& tightest) {
  const std::array<double, kConstraintCount> scale = {1.0, 9 * d1, 0.5, 3 * d1, d2 / 24, 1.0,
                                                      0.5, 1.0,    21.0 / 16, 5.0 / 16, 3.0 / 16, 3.0 / 16};
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kConstraintCount; ++i) {
    const double r = slack[static_cast<std::size_t>(i)] / scale[static_cast<std::size_t>(i)];
    if (r < worst) {
      worst = r;
      tightest = i + 1;
    }
  }
  return worst;
}

}  // namespace

ConstantsSearch find_admissible_constants(double A, int n) {
  if (!(A > 0.0) || n < 1) throw std::invalid_argument("find_admissible_constants needs A > 0 and n >= 1");

  std::vector<double> grid;
  constexpr int kPerDecade = 8;
  for (int i = 0;; ++i) {
    const double d = 1e-8 * std::pow(10.0, static_cast<double>(i) / kPerDecade);
    if (d > 0.5) break;
    grid.push_back(d);
  }

  ConstantsSearch result;
  double best = -std::numeric_limits<double>::infinity();
  ConstantsBudget best_budget;
  int best_tightest = 0;

  for (double d2 : grid) {
    for (double d1 : grid) {
      if (d1 >= d2) break;
      for (double d3 : grid) {
        if (d3 >= d1) break;
        // Smallest integer N satisfying inequalities 1 and 9.
        const double n_min = std::max(2.0 + (0.5 - 3.0 * d1) / d3, 1.5 + (21.0 / 16.0) / d3);
        const double N = std::floor(n_min) + 1.0;
        const auto slack = constraint_slack(A, d1, d2, d3, N);
        int tightest = 0;
        const double score = relative_slack(slack, d1, d2, tightest);
        if (score > best) {
          best = score;
          best_budget = {A, n, d1, d2, d3, N, slack};
          best_tightest = tightest;
        }
      }
    }
  }

  result.binding_inequality = best_tightest;
  result.binding_slack = best_budget.slack[static_cast<std::size_t>(std::max(best_tightest, 1) - 1)];
  if (all_constraints_hold(best_budget.slack)) result.budget = best_budget;
  return result;
}

}  // namespace kgres
