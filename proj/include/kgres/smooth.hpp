#pragma once

// Smooth cut-off primitives built from e^{-1/t}. All of them are C-infinity
// and take exact 0/1 values outside their transition intervals.

namespace kgres::smooth {

/// e^{-1/t} for t > 0, 0 otherwise.
double primitive(double t);

/// 0 for t <= 0, 1 for t >= 1, monotone in between.
double step(double t);

/// 0 on (-inf, -1], 1 on [1, inf).
double transition(double x);

/// Standard mollifier e * exp(-1 / (1 - x^2)) on (-1, 1), equal to 1 at 0.
double mollifier(double x);

/// Radial plateau profile: 1 for |x| <= plateau, 0 for |x| >= support.
struct BumpProfile {
  double plateau = 0.5;
  double support = 1.0;

  double operator()(double x) const;
};

}  // namespace kgres::smooth
