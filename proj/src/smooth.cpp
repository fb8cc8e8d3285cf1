#include "kgres/smooth.hpp"

#include <cmath>

namespace kgres::smooth {

double primitive(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = primitive(t);
  const double b = primitive(1.0 - t);
  return a / (a + b);
}

double transition(double x) { return step(0.5 * (x + 1.0)); }

double mollifier(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

double BumpProfile::operator()(double x) const {
  const double a = std::abs(x);
  return 1.0 - step((a - plateau) / (support - plateau));
}

}  // namespace kgres::smooth
