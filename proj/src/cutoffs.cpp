#include "kgres/cutoffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "kgres/report_io.hpp"

namespace kgres {

namespace {

constexpr double kGradFloor = 1e-8;
constexpr std::array<std::string_view, 6> kKindNames = {"theta", "chi_O", "chi_O_tilde",
                                                        "chi_R", "chi_S", "chi_T"};

double norm6(const FrequencyPair& p) { return std::sqrt(dot(p.xi, p.xi) + dot(p.eta, p.eta)); }

// Component of swap_arguments(idx) corresponding to `comp` of idx.
ResonantComponent swapped_component(const ResonantComponent& comp, const PhaseIndex& target) {
  ResonantComponent out = comp;
  out.idx = target;
  out.radius = std::abs(comp.lambda - 1.0) * comp.radius;
  out.lambda = comp.lambda / (comp.lambda - 1.0);
  return out;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den > 0 ? (n * sxy - sx * sy) / den : 0.0;
}

}  // namespace

std::string_view to_string(CutoffKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

CutoffKind parse_cutoff_kind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<CutoffKind>(i);
  }
  throw std::invalid_argument("unknown cutoff '" + std::string(name) + "'");
}

CutoffFamily::CutoffFamily(ResonanceReport report, PhaseIndex phase, CutoffOptions options)
    : report_(std::move(report)), phase_(phase), speeds_(report_.c), bump_(options.bump) {
  const auto canon = symmetry_reduce(phase);
  for (const auto& comp : report_.components) {
    if (comp.idx != canon.canonical) continue;
    if (canon.transform.swapped) {
      components_.push_back(swapped_component(comp, phase));
    } else {
      auto c = comp;
      c.idx = phase;
      components_.push_back(c);
    }
  }

  double extent = 0.0;
  int order = 1;
  for (const auto& comp : report_.components) {
    extent = std::max(extent, comp.radius * std::sqrt(1.0 + comp.lambda * comp.lambda));
    extent = std::max(extent, std::abs(comp.lambda - 1.0) * comp.radius *
                                  std::sqrt(1.0 + std::pow(comp.lambda / (comp.lambda - 1.0), 2)));
  }
  for (const auto& comp : components_) order = std::max(order, comp.order);

  M_ = options.M > 0.0 ? options.M : std::max(1.0, 2.5 * extent);
  delta0_ = options.delta0 > 0.0 ? options.delta0 : report_.delta0;
  if (!(delta0_ > 0.0)) delta0_ = 1.0;
  n_ = options.n > 0 ? options.n : order;

  const double cl = speeds_.speed(phase.l);
  const double cm = speeds_.speed(phase.m);
  if (cl < cm) {
    asymptote_ = Asymptote::xi_minus_eta;
    asymptote_radius_ = cl / (cm * std::sqrt(cm * cm - cl * cl));
  } else if (cl > cm) {
    asymptote_ = Asymptote::eta;
    asymptote_radius_ = space_resonance_limit(speeds_, phase);
  }
}

double CutoffFamily::theta(const FrequencyPair& p) const { return 1.0 - smooth::step(norm6(p) - M_); }

double CutoffFamily::chi_O(const Vec3& xi) const {
  if (!report_.separated) throw std::logic_error("chi_O needs a separated resonance report");
  const double r = norm(xi);
  double d = std::numeric_limits<double>::infinity();
  for (double o : report_.outcome_radii) d = std::min(d, std::abs(r - o));
  const double half = 0.5 * delta0_;
  return 1.0 - smooth::step((d - half) / half);
}

double CutoffFamily::chi_O_tilde(const Vec3& xi) const { return 1.0 - chi_O(xi); }

double CutoffFamily::chi_R_component(const FrequencyPair& p, const ResonantComponent& comp,
                                     double rho) const {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  const double d = dist_to_R(p, comp);
  const smooth::BumpProfile local{0.25, 0.5};
  const double kappa = local(d / delta0_);
  if (kappa == 0.0) return 0.0;
  const double a = bump_((norm(p.eta) - comp.radius) / rho);
  if (a == 0.0) return 0.0;
  const double b = bump_(norm(p.xi - comp.lambda * p.eta) / rho);
  return kappa * a * b;
}

double CutoffFamily::chi_R(const FrequencyPair& p, double rho) const {
  double miss = 1.0;
  for (const auto& comp : components_) miss *= 1.0 - chi_R_component(p, comp, rho);
  return 1.0 - miss;
}

double CutoffFamily::dist_to_resonant(const FrequencyPair& p) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& comp : components_) d = std::min(d, dist_to_R(p, comp));
  return d;
}

double CutoffFamily::dist_time_surrogate(const FrequencyPair& p) const {
  const double ph = std::abs(kgres::phase(speeds_, phase_, p));
  const Vec3 gx = grad_xi_phase(speeds_, phase_, p);
  const Vec3 ge = grad_eta_phase(speeds_, phase_, p);
  const double g = std::sqrt(dot(gx, gx) + dot(ge, ge));
  return std::min(ph / std::max(g, kGradFloor), 1.0);
}

double CutoffFamily::dist_space_surrogate(const FrequencyPair& p) const {
  const double cl = speeds_.speed(phase_.l);
  const double cm = speeds_.speed(phase_.m);
  const double h = cl * cl / bracket(speeds_, phase_.l, p.eta) +
                   2.0 * cm * cm / bracket(speeds_, phase_.m, p.xi - p.eta);
  return std::min(norm(grad_eta_phase(speeds_, phase_, p)) / std::max(h, kGradFloor), 1.0);
}

double CutoffFamily::chi_S_low(const FrequencyPair& p, double chi_r) const {
  if (chi_r >= 1.0) return 0.0;
  const double dr = dist_to_resonant(p);
  const double denom = std::isfinite(dr) ? std::pow(std::min(dr, 1.0), n_ + 1) : 1.0;
  return smooth::transition((dist_time_surrogate(p) - dist_space_surrogate(p)) / denom);
}

double CutoffFamily::chi_S_high(const FrequencyPair& p) const {
  switch (asymptote_) {
    case Asymptote::xi_minus_eta:
      return bump_((norm(p.xi - p.eta) - asymptote_radius_) / (0.5 * asymptote_radius_));
    case Asymptote::eta:
      return bump_((norm(p.eta) - asymptote_radius_) / (0.5 * asymptote_radius_));
    case Asymptote::none:
      break;
  }
  return smooth::transition(dist_time_surrogate(p) - dist_space_surrogate(p));
}

CutoffValues CutoffFamily::partition(const FrequencyPair& p, double rho) const {
  CutoffValues v;
  v.R = chi_R(p, rho);
  if (v.R < 1.0) {
    const double th = theta(p);
    const double low = th > 0.0 ? chi_S_low(p, v.R) : 0.0;
    const double high = th < 1.0 ? chi_S_high(p) : 0.0;
    v.S = (1.0 - v.R) * (th * low + (1.0 - th) * high);
  }
  v.T = 1.0 - v.R - v.S;
  return v;
}

double CutoffFamily::chi_S(const FrequencyPair& p, double rho) const { return partition(p, rho).S; }
double CutoffFamily::chi_T(const FrequencyPair& p, double rho) const { return partition(p, rho).T; }

double CutoffFamily::evaluate(CutoffKind kind, const FrequencyPair& p, double rho) const {
  switch (kind) {
    case CutoffKind::theta: return theta(p);
    case CutoffKind::chi_O: return chi_O(p.xi);
    case CutoffKind::chi_O_tilde: return chi_O_tilde(p.xi);
    case CutoffKind::chi_R: return chi_R(p, rho);
    case CutoffKind::chi_S: return chi_S(p, rho);
    case CutoffKind::chi_T: return chi_T(p, rho);
  }
  return 0.0;
}

double CutoffFamily::support_radius(const ResonantComponent& comp, double rho) const {
  const double a = 1.0 + std::abs(comp.lambda);
  return std::min(bump_.support * rho * std::sqrt(1.0 + a * a), 0.5 * delta0_);
}

namespace {

Vec3 random_unit3(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    Vec3 v{g(rng), g(rng), g(rng)};
    const double n = norm(v);
    if (n > 1e-12) return (1.0 / n) * v;
  }
}

FrequencyPair random_direction6(std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> g;
  FrequencyPair p{{g(rng), g(rng), g(rng)}, {g(rng), g(rng), g(rng)}};
  const double n = norm6(p);
  return {(radius / n) * p.xi, (radius / n) * p.eta};
}

struct Weighted {
  double s = 0.0;
  double t = 0.0;
};

Weighted weighted_values(const CutoffFamily& f, const SpeedPair& speeds, const FrequencyPair& p, double rho) {
  const auto v = f.partition(p, rho);
  Weighted w;
  if (v.S > 0.0) w.s = v.S / std::abs(phase(speeds, f.phase(), p));
  if (v.T > 0.0) w.t = v.T / norm(grad_eta_phase(speeds, f.phase(), p));
  return w;
}

}  // namespace

BoundProbe bound_probe(const CutoffFamily& family, const std::vector<double>& rhos, int sample_count,
                       std::uint64_t seed, double high_radius) {
  if (rhos.empty() || sample_count < 2) throw std::invalid_argument("bound_probe needs rhos and samples");
  const SpeedPair speeds(family.report().c);
  const double M = family.M();
  const double rho_min = *std::min_element(rhos.begin(), rhos.end());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<FrequencyPair> points;
  points.reserve(static_cast<std::size_t>(sample_count));
  const auto& comps = family.components();
  for (int i = 0; i < sample_count; ++i) {
    if (comps.empty() || i % 2 == 0) {
      points.push_back(random_direction6(rng, M * std::pow(unif(rng), 1.0 / 6.0)));
    } else {
      const auto& comp = comps[static_cast<std::size_t>(i / 2) % comps.size()];
      const auto base = comp.point(random_unit3(rng));
      const double d = rho_min * std::pow(1.0 / rho_min, unif(rng));
      const auto off = random_direction6(rng, d);
      FrequencyPair p{base.xi + off.xi, base.eta + off.eta};
      if (norm6(p) <= M) points.push_back(p);
    }
  }

  BoundProbe probe;
  probe.n = family.n();
  std::vector<double> lx, ls, lt;
  for (double rho : rhos) {
    BoundProbeRow row{rho, 0.0, 0.0};
    for (const auto& p : points) {
      const auto w = weighted_values(family, speeds, p, rho);
      row.sup_S_over_phi = std::max(row.sup_S_over_phi, w.s);
      row.sup_T_over_grad = std::max(row.sup_T_over_grad, w.t);
    }
    probe.rows.push_back(row);
    if (row.sup_S_over_phi > 0.0 && row.sup_T_over_grad > 0.0) {
      lx.push_back(std::log(1.0 / rho));
      ls.push_back(std::log(row.sup_S_over_phi));
      lt.push_back(std::log(row.sup_T_over_grad));
    }
  }
  probe.exponent_S = least_squares_slope(lx, ls);
  probe.exponent_T = least_squares_slope(lx, lt);

  // High shell, binned by decade fractions of |p|.
  probe.high_radius = high_radius;
  if (high_radius > M) {
    constexpr int kBins = 8;
    std::array<double, kBins> sup{};
    const double span = std::log(high_radius / M);
    for (int i = 0; i < sample_count; ++i) {
      const double t = unif(rng);
      const auto p = random_direction6(rng, M * std::exp(t * span));
      const auto w = weighted_values(family, speeds, p, rhos.front());
      probe.high_sup_S_over_phi = std::max(probe.high_sup_S_over_phi, w.s);
      probe.high_sup_T_over_grad = std::max(probe.high_sup_T_over_grad, w.t);
      auto& s = sup[static_cast<std::size_t>(std::min(kBins - 1, static_cast<int>(t * kBins)))];
      s = std::max({s, w.s, w.t});
    }
    std::vector<double> bx, by;
    for (int b = 0; b < kBins; ++b) {
      if (sup[static_cast<std::size_t>(b)] <= 0.0) continue;
      bx.push_back(std::log(M) + (b + 0.5) / kBins * span);
      by.push_back(std::log(sup[static_cast<std::size_t>(b)]));
    }
    probe.high_exponent = least_squares_slope(bx, by);
  }
  return probe;
}

void export_cutoff_grid(std::ostream& out, const CutoffFamily& family, CutoffKind kind, double rho,
                        const CutoffGrid& grid) {
  if (grid.nu < 1 || grid.nv < 1) throw std::invalid_argument("grid counts must be positive");
  out << "xi1,xi2,xi3,eta1,eta2,eta3,value\n";
  for (int i = 0; i < grid.nu; ++i) {
    const double a = grid.nu > 1 ? static_cast<double>(i) / (grid.nu - 1) : 0.0;
    for (int j = 0; j < grid.nv; ++j) {
      const double b = grid.nv > 1 ? static_cast<double>(j) / (grid.nv - 1) : 0.0;
      std::array<double, 6> x{};
      for (int k = 0; k < 6; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        x[kk] = grid.origin[kk] + a * grid.u[kk] + b * grid.v[kk];
      }
      const FrequencyPair p{{x[0], x[1], x[2]}, {x[3], x[4], x[5]}};
      for (double c : x) out << io::format_double(c) << ',';
      out << io::format_double(family.evaluate(kind, p, rho)) << '\n';
    }
  }
}

}  // namespace kgres
