#include "kgres/simulator.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "kgres/kernels.hpp"

namespace kgres::sim {

namespace {

using Stack = std::array<std::vector<cplx>, 4>;  // plus0, minus0, plus1, minus1

constexpr cplx I{0.0, 1.0};

std::vector<double> brackets(const Grid& grid, double speed) {
  std::vector<double> b(grid.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double k = norm(grid.wavevector(i));
    b[i] = std::sqrt(1.0 + speed * speed * k * k);
  }
  return b;
}

std::array<std::vector<double>, 2> species_brackets(const Grid& grid, double c) {
  return {brackets(grid, 1.0), brackets(grid, c)};
}

std::vector<double> dealias_mask(const Grid& grid) {
  std::vector<double> mask(grid.size(), 1.0);
  const long keep = static_cast<long>(grid.n() / 3);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    std::size_t flat = i;
    for (int a = 0; a < grid.dims(); ++a) {
      if (std::labs(grid.signed_index(flat % grid.n())) > keep) mask[i] = 0.0;
      flat /= grid.n();
    }
  }
  return mask;
}

// Physical u^s from the diagonal variables.
std::vector<cplx> physical_field(const Grid& grid, const std::vector<cplx>& plus, const std::vector<cplx>& minus,
                                 const std::vector<double>& br) {
  SpectralField u(grid);
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) u.coeffs[i] = (plus[i] - minus[i]) / (2.0 * I * br[i]);
  return inverse(u);
}

std::array<std::vector<cplx>, 2> quadratic_physical(const NonlinearityCoefficients& q, const std::vector<cplx>& u1,
                                                    const std::vector<cplx>& uc) {
  std::array<std::vector<cplx>, 2> out{std::vector<cplx>(u1.size()), std::vector<cplx>(u1.size())};
  for (std::size_t i = 0; i < u1.size(); ++i) {
    const cplx a = u1[i], b = uc[i];
    out[0][i] = q.alpha * a * a + q.beta * b * b + q.gamma * a * b;
    out[1][i] = q.delta * a * a + q.epsilon * b * b + q.zeta * a * b;
  }
  return out;
}

struct Context {
  const Grid& grid;
  const NonlinearityCoefficients& coeffs;
  std::array<std::vector<double>, 2> br;
  std::vector<double> mask;
};

Stack nonlinear(const Context& ctx, const Stack& u) {
  const auto u1 = physical_field(ctx.grid, u[0], u[1], ctx.br[0]);
  const auto uc = physical_field(ctx.grid, u[2], u[3], ctx.br[1]);
  const auto q = quadratic_physical(ctx.coeffs, u1, uc);
  Stack out;
  for (std::size_t s = 0; s < 2; ++s) {
    auto qh = forward(ctx.grid, q[s]).coeffs;
    for (std::size_t i = 0; i < qh.size(); ++i) qh[i] *= ctx.mask[i];
    out[2 * s] = qh;
    out[2 * s + 1] = std::move(qh);
  }
  return out;
}

// Diagonal propagators e^{+- i <xi> h} for the four components.
Stack propagator(const Context& ctx, double h) {
  Stack e;
  for (std::size_t j = 0; j < 4; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const auto& br = ctx.br[j / 2];
    e[j].resize(br.size());
    for (std::size_t i = 0; i < br.size(); ++i) e[j][i] = std::polar(1.0, sign * br[i] * h);
  }
  return e;
}

Stack propagate(const Stack& e, const Stack& u) {
  Stack out = u;
  for (std::size_t j = 0; j < 4; ++j) kernels::complex_multiply(out[j], e[j]);
  return out;
}

// a + s b
Stack axpy(const Stack& a, double s, const Stack& b) {
  Stack out = a;
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < out[j].size(); ++i) out[j][i] += s * b[j][i];
  }
  return out;
}

Stack unpack(const SystemState& s) {
  return {s.plus[0].coeffs, s.minus[0].coeffs, s.plus[1].coeffs, s.minus[1].coeffs};
}

double stack_energy(const Grid& grid, const Stack& u) {
  double e = 0.0;
  for (const auto& v : u) e += kernels::squared_norm(v);
  return e * grid.frequency_cell_volume();
}

}  // namespace

double NonlinearityCoefficients::pair(SpeedTag k, SpeedTag l, SpeedTag m) const {
  const bool slow_out = k == SpeedTag::one;
  if (l == SpeedTag::one && m == SpeedTag::one) return slow_out ? alpha : delta;
  if (l == SpeedTag::c && m == SpeedTag::c) return slow_out ? beta : epsilon;
  return 0.5 * (slow_out ? gamma : zeta);
}

SystemState diagonalize(double c, const std::array<SpectralField, 2>& u0, const std::array<SpectralField, 2>& u1) {
  const Grid& grid = u0[0].grid;
  for (const auto* f : {&u0[1], &u1[0], &u1[1]}) {
    if (!(f->grid == grid)) throw std::invalid_argument("initial data on different grids");
  }
  const auto br = species_brackets(grid, c);
  SystemState s{0.0, c, {SpectralField(grid), SpectralField(grid)}, {SpectralField(grid), SpectralField(grid)}};
  for (std::size_t sp = 0; sp < 2; ++sp) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const cplx w = I * br[sp][i] * u0[sp].coeffs[i];
      s.plus[sp].coeffs[i] = u1[sp].coeffs[i] + w;
      s.minus[sp].coeffs[i] = u1[sp].coeffs[i] - w;
    }
  }
  return s;
}

PhysicalPair reconstruct(const SystemState& state, SpeedTag species) {
  const std::size_t sp = slot(species);
  const Grid& grid = state.plus[sp].grid;
  const auto br = brackets(grid, species == SpeedTag::one ? 1.0 : state.c);
  PhysicalPair out{SpectralField(grid), SpectralField(grid)};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx p = state.plus[sp].coeffs[i], m = state.minus[sp].coeffs[i];
    out.u.coeffs[i] = (p - m) / (2.0 * I * br[i]);
    out.u_t.coeffs[i] = 0.5 * (p + m);
  }
  return out;
}

std::size_t QuadraticTable::index(SpeedTag k, SpeedTag l, SpeedTag m, Sign e0, Sign e1, Sign e2) {
  return (slot(k) << 5) | (slot(l) << 4) | (slot(m) << 3) | (static_cast<std::size_t>(e0) << 2) |
         (static_cast<std::size_t>(e1) << 1) | static_cast<std::size_t>(e2);
}

double QuadraticTable::operator()(SpeedTag k, SpeedTag l, SpeedTag m, Sign e0, Sign e1, Sign e2) const {
  return a_[index(k, l, m, e0, e1, e2)];
}

double& QuadraticTable::at(SpeedTag k, SpeedTag l, SpeedTag m, Sign e0, Sign e1, Sign e2) {
  return a_[index(k, l, m, e0, e1, e2)];
}

bool QuadraticTable::is_zero() const {
  for (double v : a_) {
    if (v != 0.0) return false;
  }
  return true;
}

QuadraticTable expand_quadratic(const NonlinearityCoefficients& coeffs) {
  QuadraticTable t;
  constexpr std::array<SpeedTag, 2> tags{SpeedTag::one, SpeedTag::c};
  constexpr std::array<Sign, 2> signs{Sign::plus, Sign::minus};
  for (auto k : tags)
    for (auto l : tags)
      for (auto m : tags)
        for (auto e0 : signs)
          for (auto e1 : signs)
            for (auto e2 : signs) t.at(k, l, m, e0, e1, e2) = -0.25 * value(e1) * value(e2) * coeffs.pair(k, l, m);
  return t;
}

std::array<std::vector<cplx>, 2> quadratic_direct(const NonlinearityCoefficients& coeffs, const SystemState& state) {
  const Grid& grid = state.plus[0].grid;
  const auto br = species_brackets(grid, state.c);
  const auto u1 = physical_field(grid, state.plus[0].coeffs, state.minus[0].coeffs, br[0]);
  const auto uc = physical_field(grid, state.plus[1].coeffs, state.minus[1].coeffs, br[1]);
  return quadratic_physical(coeffs, u1, uc);
}

std::array<std::vector<cplx>, 2> quadratic_from_table(const QuadraticTable& table, const SystemState& state) {
  const Grid& grid = state.plus[0].grid;
  const auto br = species_brackets(grid, state.c);
  // v[slot][sign] = u^s_{sign} / <D>_s in physical space.
  std::array<std::array<std::vector<cplx>, 2>, 2> v;
  for (std::size_t sp = 0; sp < 2; ++sp) {
    for (std::size_t e = 0; e < 2; ++e) {
      SpectralField w = e == 0 ? state.plus[sp] : state.minus[sp];
      for (std::size_t i = 0; i < grid.size(); ++i) w.coeffs[i] /= br[sp][i];
      v[sp][e] = inverse(w);
    }
  }
  std::array<std::vector<cplx>, 2> out{std::vector<cplx>(grid.size()), std::vector<cplx>(grid.size())};
  constexpr std::array<SpeedTag, 2> tags{SpeedTag::one, SpeedTag::c};
  for (auto k : tags) {
    auto& q = out[slot(k)];
    for (auto l : tags)
      for (auto m : tags)
        for (std::size_t e1 = 0; e1 < 2; ++e1)
          for (std::size_t e2 = 0; e2 < 2; ++e2) {
            const double a = table(k, l, m, Sign::plus, static_cast<Sign>(e1), static_cast<Sign>(e2));
            if (a == 0.0) continue;
            const auto& x = v[slot(l)][e1];
            const auto& y = v[slot(m)][e2];
            for (std::size_t i = 0; i < q.size(); ++i) q[i] += a * x[i] * y[i];
          }
  }
  return out;
}

StepRejected::StepRejected(double t, double jump)
    : std::runtime_error("blow-up guard: relative energy jump " + std::to_string(jump) + " at t = " +
                         std::to_string(t)),
      t_(t),
      jump_(jump) {}

double linear_energy(const SystemState& state) { return stack_energy(state.plus[0].grid, unpack(state)); }

SystemState step(const SystemState& state, double dt, const NonlinearityCoefficients& coeffs, Scheme scheme) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  (void)scheme;
  const Grid& grid = state.plus[0].grid;
  const Context ctx{grid, coeffs, species_brackets(grid, state.c), dealias_mask(grid)};
  const Stack e_full = propagator(ctx, dt);
  const Stack e_half = propagator(ctx, 0.5 * dt);

  const Stack u = unpack(state);
  const Stack k1 = nonlinear(ctx, u);
  const Stack k2 = nonlinear(ctx, propagate(e_half, axpy(u, 0.5 * dt, k1)));
  const Stack eu_half = propagate(e_half, u);
  const Stack k3 = nonlinear(ctx, axpy(eu_half, 0.5 * dt, k2));
  const Stack eu = propagate(e_full, u);
  const Stack k4 = nonlinear(ctx, axpy(eu, dt, propagate(e_half, k3)));

  Stack next = eu;
  const Stack ek1 = propagate(e_full, k1);
  const Stack ek23 = propagate(e_half, axpy(k2, 1.0, k3));
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < next[j].size(); ++i) {
      next[j][i] += dt / 6.0 * (ek1[j][i] + 2.0 * ek23[j][i] + k4[j][i]);
    }
  }

  const double before = stack_energy(grid, u);
  const double after = stack_energy(grid, next);
  if (before > 0.0) {
    const double jump = std::abs(after - before) / before;
    if (!(jump <= 0.1)) throw StepRejected(state.t + dt, jump);
  }

  SystemState out{state.t + dt, state.c,
                  {SpectralField(grid, std::move(next[0])), SpectralField(grid, std::move(next[2]))},
                  {SpectralField(grid, std::move(next[1])), SpectralField(grid, std::move(next[3]))}};
  return out;
}

ProfileState profile_of(const SystemState& state) {
  const Grid& grid = state.plus[0].grid;
  const auto br = species_brackets(grid, state.c);
  ProfileState p{state.t, state.plus, state.minus};
  for (std::size_t sp = 0; sp < 2; ++sp) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const cplx rot = std::polar(1.0, -state.t * br[sp][i]);
      p.plus[sp].coeffs[i] *= rot;
      p.minus[sp].coeffs[i] *= std::conj(rot);
    }
  }
  return p;
}

double band_energy(const SystemState& state, double lo, double hi, std::optional<SpeedTag> species) {
  if (!(lo < hi)) throw std::invalid_argument("band_energy needs lo < hi");
  const Grid& grid = state.plus[0].grid;
  double e = 0.0;
  for (std::size_t sp = 0; sp < 2; ++sp) {
    if (species && slot(*species) != sp) continue;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double k = norm(grid.wavevector(i));
      if (k < lo || k >= hi) continue;
      e += std::norm(state.plus[sp].coeffs[i]) + std::norm(state.minus[sp].coeffs[i]);
    }
  }
  return e * grid.frequency_cell_volume();
}

}  // namespace kgres::sim
