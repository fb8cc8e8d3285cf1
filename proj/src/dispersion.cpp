#include "kgres/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kgres {

SpeedPair::SpeedPair(double c_fast) : c_fast_(c_fast) {
  if (!std::isfinite(c_fast) || c_fast <= 0.0) {
    throw std::invalid_argument("speed c must be positive and finite");
  }
  if (c_fast == 1.0) {
    throw std::invalid_argument("degenerate speeds: c = 1 equals the slow speed");
  }
}

namespace {

char tag_char(SpeedTag t) { return t == SpeedTag::c ? 'c' : '1'; }
char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

// Weighted field x / <x>_j scaled by c_j^2: the gradient of <x>_j.
Vec3 bracket_gradient(double cj, const Vec3& x) {
  const double b = std::sqrt(1.0 + cj * cj * dot(x, x));
  return (cj * cj / b) * x;
}

}  // namespace

std::string to_string(const PhaseIndex& idx) {
  return {tag_char(idx.k), tag_char(idx.l), tag_char(idx.m),
          sign_char(idx.s0), sign_char(idx.s1), sign_char(idx.s2)};
}

PhaseIndex parse_phase_index(std::string_view label) {
  // Normalise the UTF-8 minus sign to ASCII.
  std::string s;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label.substr(i, 3) == "\xE2\x88\x92") {
      s.push_back('-');
      i += 2;
    } else {
      s.push_back(label[i]);
    }
  }
  if (s.size() != 6) {
    throw std::invalid_argument("phase label must have 6 characters: " + std::string(label));
  }
  auto tag = [&](char ch) {
    if (ch == 'c') return SpeedTag::c;
    if (ch == '1') return SpeedTag::one;
    throw std::invalid_argument("bad speed tag in phase label: " + s);
  };
  auto sign = [&](char ch) {
    if (ch == '+') return Sign::plus;
    if (ch == '-') return Sign::minus;
    throw std::invalid_argument("bad sign in phase label: " + s);
  };
  return {tag(s[0]), tag(s[1]), tag(s[2]), sign(s[3]), sign(s[4]), sign(s[5])};
}

PhaseIndex negate(const PhaseIndex& idx) {
  return {idx.k, idx.l, idx.m, flip(idx.s0), flip(idx.s1), flip(idx.s2)};
}

PhaseIndex swap_arguments(const PhaseIndex& idx) {
  return {idx.k, idx.m, idx.l, idx.s0, idx.s2, idx.s1};
}

FrequencyPair SymmetryTransform::apply(const FrequencyPair& p) const {
  if (!swapped) return p;
  return {p.xi, p.xi - p.eta};
}

CanonicalForm symmetry_reduce(const PhaseIndex& idx) {
  CanonicalForm best{idx, {1.0, false}};
  const CanonicalForm candidates[] = {
      {negate(idx), {-1.0, false}},
      {swap_arguments(idx), {1.0, true}},
      {negate(swap_arguments(idx)), {-1.0, true}},
  };
  for (const auto& cand : candidates) {
    if (cand.canonical < best.canonical) best = cand;
  }
  return best;
}

std::vector<PhaseEntry> enumerate_phases() {
  std::vector<PhaseEntry> out;
  out.reserve(64);
  for (int code = 0; code < 64; ++code) {
    const PhaseIndex idx{static_cast<SpeedTag>((code >> 5) & 1), static_cast<SpeedTag>((code >> 4) & 1),
                         static_cast<SpeedTag>((code >> 3) & 1), static_cast<Sign>((code >> 2) & 1),
                         static_cast<Sign>((code >> 1) & 1),     static_cast<Sign>(code & 1)};
    const auto cf = symmetry_reduce(idx);
    out.push_back({idx, cf.canonical, cf.transform});
  }
  return out;
}

std::vector<PhaseIndex> canonical_phases() {
  std::vector<PhaseIndex> reps;
  for (const auto& e : enumerate_phases()) reps.push_back(e.canonical);
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

std::vector<PhaseIndex> orbit(const PhaseIndex& idx) {
  std::vector<PhaseIndex> members{idx, negate(idx), swap_arguments(idx),
                                  negate(swap_arguments(idx))};
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

double bracket(const SpeedPair& speeds, SpeedTag tag, double r) {
  const double cj = speeds.speed(tag);
  return std::sqrt(1.0 + cj * cj * r * r);
}

double bracket(const SpeedPair& speeds, SpeedTag tag, const Vec3& x) {
  const double cj = speeds.speed(tag);
  return std::sqrt(1.0 + cj * cj * dot(x, x));
}

double phase(const SpeedPair& speeds, const PhaseIndex& idx, const FrequencyPair& p) {
  return value(idx.s0) * bracket(speeds, idx.k, p.xi) +
         value(idx.s1) * bracket(speeds, idx.l, p.eta) +
         value(idx.s2) * bracket(speeds, idx.m, p.xi - p.eta);
}

Vec3 grad_eta_phase(const SpeedPair& speeds, const PhaseIndex& idx, const FrequencyPair& p) {
  const Vec3 a = bracket_gradient(speeds.speed(idx.l), p.eta);
  const Vec3 b = bracket_gradient(speeds.speed(idx.m), p.xi - p.eta);
  return value(idx.s1) * a - value(idx.s2) * b;
}

Vec3 grad_xi_phase(const SpeedPair& speeds, const PhaseIndex& idx, const FrequencyPair& p) {
  const Vec3 a = bracket_gradient(speeds.speed(idx.k), p.xi);
  const Vec3 b = bracket_gradient(speeds.speed(idx.m), p.xi - p.eta);
  return value(idx.s0) * a + value(idx.s2) * b;
}

}  // namespace kgres
