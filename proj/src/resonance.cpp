#include "kgres/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>

#include "kgres/kernels.hpp"

namespace kgres {

namespace {

constexpr double kRootTolerance = 1e-12;
constexpr double kTangentThreshold = 1e-9;

kernels::GapParams gap_params(const SpeedPair& speeds, const PhaseIndex& idx) {
  return {speeds.speed(idx.k), speeds.speed(idx.l), speeds.speed(idx.m),
          value(idx.s0),       value(idx.s1),       value(idx.s2)};
}

// Pointwise Z through the scalar reference kernel so that single evaluations
// agree exactly with the batched grid scan.
double gap_or_nan(const kernels::GapParams& params, double r) {
  double out = 0.0;
  kernels::scalar::time_resonance_gap(params, std::span<const double>(&r, 1), std::span<double>(&out, 1));
  return out;
}

double bisect(const kernels::GapParams& params, double lo, double hi, double f_lo) {
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = gap_or_nan(params, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double newton_polish(const kernels::GapParams& params, double r, double lo, double hi) {
  const double f = gap_or_nan(params, r);
  if (f == 0.0) return r;
  const double h = 1e-7 * std::max(r, 1e-3);
  if (r - h <= lo - 1e-14 || r + h >= hi + 1e-14) return r;
  const double df = (gap_or_nan(params, r + h) - gap_or_nan(params, r - h)) / (2.0 * h);
  if (!std::isfinite(df) || df == 0.0) return r;
  const double cand = r - f / df;
  if (!(cand >= lo && cand <= hi)) return r;
  const double f_cand = gap_or_nan(params, cand);
  return std::abs(f_cand) <= std::abs(f) ? cand : r;
}

// Golden-section minimisation of |Z| on [a, b].
double minimise_abs_gap(const kernels::GapParams& params, double a, double b) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = std::abs(gap_or_nan(params, c));
  double fd = std::abs(gap_or_nan(params, d));
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = std::abs(gap_or_nan(params, c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = std::abs(gap_or_nan(params, d));
    }
  }
  return 0.5 * (a + b);
}

void sorted_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || std::abs(x - out.back()) > 1e-9 * std::max(1.0, std::abs(x))) out.push_back(x);
  }
  v = std::move(out);
}

}  // namespace

double ResonantComponent::outcome_radius() const { return std::abs(lambda) * radius; }

std::array<double, 2> ResonantComponent::source_radii() const {
  return {radius, std::abs(lambda - 1.0) * radius};
}

FrequencyPair ResonantComponent::point(const Vec3& w) const {
  const Vec3 eta = radius * w;
  return {lambda * eta, eta};
}

std::vector<PhaseIndex> ResonanceReport::resonant_phases() const {
  std::vector<PhaseIndex> out;
  for (const auto& comp : components) out.push_back(comp.idx);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<double> space_resonance_lambda(const SpeedPair& speeds, const PhaseIndex& idx, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("space_resonance_lambda requires r > 0");
  const double cl = speeds.speed(idx.l);
  const double cm = speeds.speed(idx.m);
  const double g = value(product(idx.s1, idx.s2)) * cl * cl * r / std::sqrt(1.0 + cl * cl * r * r);
  const double u = g / cm;
  const double one_minus = 1.0 - u * u;
  if (!(one_minus > 0.0)) return std::nullopt;
  const double s = (u / std::sqrt(one_minus)) / cm;
  return 1.0 + s / r;
}

double space_resonance_limit(const SpeedPair& speeds, const PhaseIndex& idx) {
  const double cl = speeds.speed(idx.l);
  const double cm = speeds.speed(idx.m);
  if (cl <= cm) return std::numeric_limits<double>::infinity();
  return cm / (cl * std::sqrt(cl * cl - cm * cm));
}

std::optional<double> time_resonance_gap(const SpeedPair& speeds, const PhaseIndex& idx, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("time_resonance_gap requires r > 0");
  const double z = gap_or_nan(gap_params(speeds, idx), r);
  if (std::isnan(z)) return std::nullopt;
  return z;
}

ComponentScan find_resonant_components(const SpeedPair& speeds, const PhaseIndex& idx,
                                       const ScanOptions& options) {
  if (!(options.r_max > 0.0) || !(options.grid_step > 0.0)) {
    throw std::invalid_argument("r_max and grid_step must be positive");
  }
  const auto params = gap_params(speeds, idx);
  const double r_lim = space_resonance_limit(speeds, idx);
  const bool bounded = r_lim < options.r_max;

  ComponentScan scan;
  scan.r_end = bounded ? r_lim : options.r_max;

  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor(scan.r_end / options.grid_step));
  grid.reserve(count + 2);
  for (std::size_t i = 1; i <= count; ++i) {
    const double r = static_cast<double>(i) * options.grid_step;
    if (r < scan.r_end) grid.push_back(r);
  }
  grid.push_back(bounded ? r_lim * (1.0 - 1e-10) : options.r_max);

  std::vector<double> z(grid.size());
  kernels::time_resonance_gap(params, grid, z);

  auto make_component = [&](double root, bool tangent) {
    ResonantComponent comp;
    comp.idx = idx;
    comp.radius = root;
    comp.lambda = *space_resonance_lambda(speeds, idx, root);
    comp.tangent = tangent;
    const auto fit = intersection_order(speeds, comp);
    comp.order = std::max(fit.order, 1);
    comp.order_fit_ok = fit.ok;
    return comp;
  };

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::isnan(z[i])) continue;
    if (z[i] == 0.0) {
      scan.components.push_back(make_component(grid[i], false));
      continue;
    }
    if (i + 1 < grid.size() && !std::isnan(z[i + 1]) && z[i + 1] != 0.0 && (z[i] < 0.0) != (z[i + 1] < 0.0)) {
      double root = bisect(params, grid[i], grid[i + 1], z[i]);
      root = newton_polish(params, root, grid[i], grid[i + 1]);
      scan.components.push_back(make_component(root, false));
      continue;
    }
    // Touching zero: local minimum of |Z| without a sign change.
    if (i > 0 && i + 1 < grid.size() && !std::isnan(z[i - 1]) && !std::isnan(z[i + 1]) &&
        (z[i - 1] < 0.0) == (z[i] < 0.0) && (z[i + 1] < 0.0) == (z[i] < 0.0) &&
        std::abs(z[i]) < std::abs(z[i - 1]) && std::abs(z[i]) <= std::abs(z[i + 1])) {
      const double r_min = minimise_abs_gap(params, grid[i - 1], grid[i + 1]);
      if (std::abs(gap_or_nan(params, r_min)) < kTangentThreshold) {
        scan.components.push_back(make_component(r_min, true));
      }
    }
  }

  if (!bounded) {
    const double z_end = z.back();
    scan.asymptote_warning = std::isnan(z_end) || std::abs(z_end) <= 10.0 * kRootTolerance;
  }
  return scan;
}

SeparationVerdict check_separation(const ResonanceReport& report, double tau_sep) {
  SeparationVerdict v;
  if (report.outcome_radii.empty() || report.source_radii.empty()) return v;
  double gap = std::numeric_limits<double>::infinity();
  for (double o : report.outcome_radii) {
    for (double s : report.source_radii) gap = std::min(gap, std::abs(o - s));
  }
  v.min_gap = gap;
  v.separated = gap > tau_sep;
  v.delta0 = v.separated ? gap / 10.0 : 0.0;
  return v;
}

ResonanceReport scan_all(double c, const ScanOptions& options) {
  const SpeedPair speeds(c);
  ResonanceReport report;
  report.c = c;
  report.options = options;

  const auto reps = canonical_phases();
  std::vector<std::future<ComponentScan>> jobs;
  jobs.reserve(reps.size());
  for (const auto& idx : reps) {
    jobs.push_back(std::async(std::launch::async, [&speeds, idx, &options] {
      return find_resonant_components(speeds, idx, options);
    }));
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    auto scan = jobs[i].get();
    if (scan.asymptote_warning) {
      report.warnings.push_back(to_string(reps[i]) + ": |Z(r_max)| is near zero; roots beyond r_max may be missed");
    }
    for (auto& comp : scan.components) {
      if (!comp.order_fit_ok) {
        report.warnings.push_back(to_string(reps[i]) + ": zero-order fit is not close to an integer");
      }
      report.components.push_back(comp);
    }
  }

  for (const auto& comp : report.components) {
    report.outcome_radii.push_back(comp.outcome_radius());
    for (double s : comp.source_radii()) report.source_radii.push_back(s);
  }
  sorted_unique(report.outcome_radii);
  sorted_unique(report.source_radii);

  const auto verdict = check_separation(report, options.tau_sep);
  report.separated = verdict.separated;
  report.min_gap = verdict.min_gap;
  report.delta0 = verdict.delta0;
  return report;
}

std::vector<SweepRow> sweep_speed(double c_min, double c_max, int steps, const ScanOptions& options) {
  if (steps < 1) throw std::invalid_argument("sweep needs at least one step");
  if (!(c_min > 0.0) || !(c_max >= c_min)) throw std::invalid_argument("sweep needs 0 < c_min <= c_max");
  if (c_min <= 1.0 && c_max >= 1.0) throw std::invalid_argument("sweep range must not contain c = 1");

  std::vector<double> speeds(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    speeds[static_cast<std::size_t>(i)] =
        steps == 1 ? c_min : c_min + (c_max - c_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  speeds.back() = steps == 1 ? c_min : c_max;

  std::vector<SweepRow> rows(speeds.size());
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    const auto report = scan_all(speeds[i], options);
    rows[i] = {speeds[i], report.separated, report.min_gap, report.min_gap <= options.tau_sep};
  }
  return rows;
}

double dist_to_R(const FrequencyPair& p, const ResonantComponent& comp) {
  const double R = comp.radius;
  const double lam = comp.lambda;
  const Vec3 mixed = lam * p.xi + p.eta;
  const double sq = dot(p.xi, p.xi) + dot(p.eta, p.eta) + R * R * (lam * lam + 1.0) - 2.0 * R * norm(mixed);
  return std::sqrt(std::max(sq, 0.0));
}

ZeroOrderFit estimate_zero_order(const std::function<double(double)>& f, double root, double d_min,
                                 double d_max, double lo, double hi) {
  ZeroOrderFit fit;
  if (!(d_min > 0.0) || !(d_max > d_min)) return fit;
  constexpr int kSamples = 9;
  double slope_sum = 0.0;
  int sides = 0;
  for (double dir : {-1.0, 1.0}) {
    std::vector<double> xs, ys;
    for (int j = 0; j < kSamples; ++j) {
      const double t = static_cast<double>(j) / (kSamples - 1);
      const double d = d_min * std::pow(d_max / d_min, t);
      const double x = root + dir * d;
      if (!(x > lo && x < hi)) continue;
      const double v = std::abs(f(x));
      if (!(v > 0.0) || !std::isfinite(v)) continue;
      xs.push_back(std::log(d));
      ys.push_back(std::log(v));
    }
    if (xs.size() < 3) continue;
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    slope_sum += sxy / sxx;
    ++sides;
  }
  if (sides == 0) return fit;
  fit.slope = slope_sum / sides;
  fit.order = static_cast<int>(std::lround(fit.slope));
  fit.ok = fit.order >= 1 && std::abs(fit.slope - fit.order) <= 0.2;
  return fit;
}

ZeroOrderFit intersection_order(const SpeedPair& speeds, const ResonantComponent& comp) {
  const double R = comp.radius;
  const double r_lim = space_resonance_limit(speeds, comp.idx);
  double d_max = std::min(0.1, 0.5 * R);
  if (std::isfinite(r_lim)) d_max = std::min(d_max, 0.5 * (r_lim - R));
  const double d_min = std::min(1e-3, d_max / 10.0);
  const auto params = gap_params(speeds, comp.idx);
  return estimate_zero_order([&](double r) { return gap_or_nan(params, r); }, R, d_min, d_max, 0.0,
                             std::isfinite(r_lim) ? r_lim : std::numeric_limits<double>::infinity());
}

}  // namespace kgres
