#ifndef TWLAB_WKB_HPP
#define TWLAB_WKB_HPP

// Quantization condition from the leading-order WKB matching of the
// parabolic-cylinder solutions in the wells to the barrier solution:
//
//   (sqrt2/(pi g^2)) e^{-1/(2g^2)} (((-1)^{E-1/2-eps/2} +- 1)/2)
//     (2/g^2)^{E-1/2-eps/2} Gamma(-E+1/2+eps/2)
//     (-1/g^2)^{E/2-1/2+eps/2} Gamma(-E/2+1/2-eps/2)  =  1 ,
//
// with + (-) for even (odd) parity and branch-controlled complex powers.
// Energy levels are the sign changes of the real part of LHS - 1; roots sit
// exponentially close to the harmonic values, which are Gamma poles of the
// condition, so the solver works in the displacement delta = E - E_pole and
// feeds the pole Gamma its argument exactly.

#include <twlab/model.hpp>
#include <twlab/nonpert.hpp>
#include <twlab/numerics.hpp>
#include <twlab/spectral.hpp>

#include <cmath>
#include <vector>

namespace twlab {

struct WkbLevelSpec {
  SpectralParity parity = SpectralParity::even;
  Real g;
  Real epsilon;
  Real seed_energy;
  int branch = default_branch;

  /// State n0 of the central well: seed n0 + 1/2 + eps/2, parity of n0.
  static WkbLevelSpec central(unsigned n0, const WellParams& p, int branch = default_branch) {
    return {n0 % 2 == 0 ? SpectralParity::even : SpectralParity::odd, p.g, p.epsilon,
            Real(n0) + Real("0.5") + p.epsilon / 2, branch};
  }
  /// State n of the side wells: seed 2n + 1 - eps; parity is the +- of the
  /// projector (the odd member lies lower at eps = 0).
  static WkbLevelSpec side(unsigned n, SpectralParity parity, const WellParams& p,
                           int branch = default_branch) {
    return {parity, p.g, p.epsilon, 2 * Real(n) + 1 - p.epsilon, branch};
  }
};

struct QuantizationResidual {
  Complex value;  // LHS - 1
  int branch = default_branch;
};

namespace detail {

struct PoleAnchor {
  int family = 0;  // 1: E = 1/2 + eps/2 + k;  2: E = 1 - eps + 2k;  0: none
  long k = 0;
  Real energy;
};

/// LHS of the condition at E = anchor + delta; when the anchor is a Gamma
/// pole the offending argument is formed from delta alone (no cancellation).
inline Complex wkb_lhs(const WkbLevelSpec& spec, const PoleAnchor& pole, const Real& delta) {
  const Real half("0.5");
  const Real E = pole.energy + delta;
  const Real g2 = spec.g * spec.g;

  Real e1 = E - half - spec.epsilon / 2;
  Real a1 = (pole.family == 1) ? -Real(pole.k) - delta : half + spec.epsilon / 2 - E;
  Real e2 = E / 2 - half + spec.epsilon / 2;
  Real a2 = (pole.family == 2) ? -Real(pole.k) - delta / 2 : half - spec.epsilon / 2 - E / 2;

  Real pref = sqrt(Real{2}) / (pi() * g2) * exp(-1 / (2 * g2));
  Real t1 = pow(2 / g2, e1);
  Real scalar = pref * t1 * gamma(a1) * gamma(a2);

  Complex pf = (unit_phase_pi(e1, spec.branch) +
                Complex(Real{spec.parity == SpectralParity::even ? 1 : -1})) *
               half;
  Complex p2 = complex_pow_negative_base(1 / g2, e2, spec.branch).value;
  return scalar * (pf * p2);
}

/// Harmonic values are Gamma poles of the condition; the root solver anchors
/// at the pole nearest the seed.
inline PoleAnchor nearest_pole(const WkbLevelSpec& spec) {
  PoleAnchor best;
  Real best_dist{-1};
  auto consider = [&](int family, long k, const Real& energy) {
    if (k < 0) return;
    Real d = abs(spec.seed_energy - energy);
    if (best_dist < 0 || d < best_dist) {
      best_dist = d;
      best = {family, k, energy};
    }
  };
  const Real half("0.5");
  long k1 = static_cast<long>(
      std::llround(static_cast<double>(spec.seed_energy - half - spec.epsilon / 2)));
  for (long k = k1 - 1; k <= k1 + 1; ++k)
    consider(1, k, half + spec.epsilon / 2 + Real(k));
  long k2 = static_cast<long>(
      std::llround(static_cast<double>((spec.seed_energy - 1 + spec.epsilon) / 2)));
  for (long k = k2 - 1; k <= k2 + 1; ++k)
    consider(2, k, 1 - spec.epsilon + 2 * Real(k));
  if (best_dist < 0 || !(best_dist < Real("0.4")))
    throw NoRootError("wkb: seed energy is not within 0.4 of a harmonic value");
  return best;
}

/// Largest |delta| the scan may reach without running into the next pole.
inline Real scan_radius(const WkbLevelSpec& spec, const PoleAnchor& pole) {
  Real nearest{-1};
  auto consider = [&](const Real& energy) {
    Real d = abs(energy - pole.energy);
    if (d > Real("1e-6") && (nearest < 0 || d < nearest)) nearest = d;
  };
  const Real half("0.5");
  for (long k = std::max(0L, pole.k - 2); k <= pole.k + 2; ++k) {
    consider(half + spec.epsilon / 2 + Real(k));
    consider(1 - spec.epsilon + 2 * Real(k));
  }
  Real r("0.4");
  if (nearest > 0 && Real("0.45") * nearest < r) r = Real("0.45") * nearest;
  return r;
}

}  // namespace detail

/// LHS - 1 of the quantization condition, evaluated directly.
inline QuantizationResidual quantization_residual(const Real& energy, const WkbLevelSpec& spec) {
  check_branch(spec.branch);
  detail::PoleAnchor none{0, 0, energy};
  return {detail::wkb_lhs(spec, none, Real{0}) - Complex(Real{1}), spec.branch};
}

struct WkbRoot {
  Real energy;
  Real shift;          // energy - anchoring harmonic value, full relative precision
  Real residual_imag;  // Borel-ambiguity remnant at the root
  bool multiple_roots = false;
};

/// Solves the quantization condition near the seed: scans the displacement
/// from the anchoring harmonic value on a geometric ladder, brackets the sign
/// change of Re(LHS) - 1, and bisects.  Throws NoRootError when no bracket
/// exists (e.g. parity-suppressed states).
inline WkbRoot solve_level(const WkbLevelSpec& spec) {
  check_branch(spec.branch);
  auto pole = detail::nearest_pole(spec);
  const Real radius = detail::scan_radius(spec, pole);

  auto h = [&](const Real& delta) -> Real {
    return detail::wkb_lhs(spec, pole, delta).re - 1;
  };

  const int ladder_steps = static_cast<int>(Real::default_precision() * 4 + 60);
  Real bracket_lo, bracket_hi;  // h(lo) and h(hi) of opposite signs
  int sign_changes = 0;

  for (int side = 0; side < 2; ++side) {
    Real step = (side == 0 ? -radius : radius);
    Real prev_delta = step;
    Real prev_h = h(prev_delta);
    for (int j = 1; j < ladder_steps; ++j) {
      Real cur_delta = step / pow(Real{2}, j);
      Real cur_h = h(cur_delta);
      if ((prev_h < 0 && cur_h > 0) || (prev_h > 0 && cur_h < 0)) {
        ++sign_changes;
        if (sign_changes == 1) {
          bracket_lo = prev_delta;
          bracket_hi = cur_delta;
        }
      }
      prev_delta = cur_delta;
      prev_h = cur_h;
    }
  }
  if (sign_changes == 0)
    throw NoRootError("wkb: no sign change of the real residual within the bracket");

  Real lo = bracket_lo, hi = bracket_hi;
  Real h_lo = h(lo);
  for (int i = 0; i < 2000; ++i) {
    Real mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    if (abs(hi - lo) <= abs(mid) * pow(Real{10}, -static_cast<int>(Real::default_precision())))
      break;
    Real h_mid = h(mid);
    if ((h_lo < 0) == (h_mid < 0)) {
      lo = mid;
      h_lo = h_mid;
    } else {
      hi = mid;
    }
  }

  WkbRoot root;
  root.shift = (lo + hi) / 2;
  root.energy = pole.energy + root.shift;
  root.residual_imag = detail::wkb_lhs(spec, pole, root.shift).im;
  root.multiple_roots = sign_changes > 1;
  return root;
}

}  // namespace twlab

#endif  // TWLAB_WKB_HPP
