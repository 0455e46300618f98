#ifndef TWLAB_NONPERT_HPP
#define TWLAB_NONPERT_HPP

// Closed-form nonperturbative energy corrections for the triple well: the
// valley-method results (complex coefficients E^(2), general asymmetry) and
// the dilute-gas results, plus the derived level shifts and splittings.
//
// Valley method, g-frame (leading nonperturbative order only; the O(e^{-1/g^2})
// tail is dropped):
//
//   E_{n0}     = n0 + 1/2 + eps/2 + (sqrt2/(pi g^2)) e^{-1/(2g^2)} E2_{n0}
//   E_{n,+-}   = 2n + 1 - eps     + (sqrt2/(pi g^2)) e^{-1/(2g^2)} E2_{n,+-}
//
//   E2_{n0}    = -(1/n0!) (2/g^2)^{n0} (-1/g^2)^{n0/2 - 1/4 + 3 eps/4}
//                  Gamma(-n0/2 + 1/4 - 3 eps/4)
//   E2_{n,+-}  = -(((-1)^{(1-3 eps)/2} +- 1)/n!) (2/g^2)^{2n + 1/2 - 3 eps/2}
//                  (1/g^2)^n Gamma(-2n - 1/2 + 3 eps/2)
//
// The complex powers use the fixed-branch convention of numerics.hpp; the
// real parts are the spectral shifts, the imaginary parts the Borel remnant
// that cancels against the perturbation series.

#include <twlab/model.hpp>
#include <twlab/numerics.hpp>

#include <optional>
#include <string>

namespace twlab {

struct WellParams {
  Real omega;    // frequency of the scaled Hamiltonian; omega * g^2 = 1
  Real g;        // coupling, g = omega^{-1/2}
  Real epsilon;  // asymmetry parameter
  std::optional<Rational> epsilon_exact;  // set when eps is known exactly

  static WellParams from_omega(const Real& omega, const Rational& eps = Rational(0)) {
    if (!(omega > 0)) throw std::domain_error("WellParams: omega must be positive");
    return {omega, 1 / sqrt(omega), to_real(eps), eps};
  }
  static WellParams from_g(const Real& g, const Rational& eps = Rational(0)) {
    if (!(g > 0)) throw std::domain_error("WellParams: g must be positive");
    return {1 / (g * g), g, to_real(eps), eps};
  }
  static WellParams from_omega_real(const Real& omega, const Real& eps) {
    if (!(omega > 0)) throw std::domain_error("WellParams: omega must be positive");
    return {omega, 1 / sqrt(omega), eps, std::nullopt};
  }

  /// The formulas assume eps * g^2 << 1; callers surface this as a warning.
  bool asymmetry_flagged() const { return abs(epsilon) * g * g >= Real("0.1"); }
};

enum class Formula { al, st };

inline const char* to_string(Formula f) { return f == Formula::al ? "AL" : "ST"; }

namespace detail {

inline Real factorial_real(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return Real(f);
}

/// Gamma with the pole reported as a spectral degeneracy.  When the argument
/// is known exactly the pole test is exact; otherwise it falls back to the
/// representable-value test.
inline Real gamma_checked(const Real& x, const std::optional<Rational>& x_exact,
                          const char* where) {
  bool degenerate = x_exact ? (denominator(*x_exact) == 1 && *x_exact <= 0)
                            : is_nonpositive_integer(x);
  if (degenerate)
    throw DegeneracyError(std::string(where) +
                          ": Gamma argument at a non-positive integer "
                          "(central/side spectra degenerate at this asymmetry)");
  return gamma(x);
}

}  // namespace detail

/// Central-well coefficient E^(2)_{n0}(g, eps).
inline Complex e2_central(unsigned n0, const WellParams& p, int branch = default_branch) {
  check_branch(branch);
  Real inv_g2 = 1 / (p.g * p.g);
  Real gamma_arg = -Real(n0) / 2 + Real("0.25") - 3 * p.epsilon / 4;
  std::optional<Rational> gamma_arg_exact;
  if (p.epsilon_exact)
    gamma_arg_exact = -Rational(n0) / 2 + Rational(1, 4) - 3 * (*p.epsilon_exact) / 4;
  Real gam = detail::gamma_checked(gamma_arg, gamma_arg_exact, "e2_central");

  Real power_exp = Real(n0) / 2 - Real("0.25") + 3 * p.epsilon / 4;
  BranchedComplex phase = complex_pow_negative_base(inv_g2, power_exp, branch);
  Real real_scale = -pow(2 * inv_g2, static_cast<int>(n0)) / detail::factorial_real(n0) * gam;
  return real_scale * phase.value;
}

/// Side-well coefficient E^(2)_{n,+-}(g, eps); parity_sign is the +- in the
/// parity projector ((-1)^{(1-3 eps)/2} +- 1).
inline Complex e2_side(unsigned n, int parity_sign, const WellParams& p,
                       int branch = default_branch) {
  check_branch(branch);
  if (parity_sign != +1 && parity_sign != -1)
    throw std::invalid_argument("e2_side: parity sign must be +1 or -1");
  Real inv_g2 = 1 / (p.g * p.g);
  Real gamma_arg = -2 * Real(n) - Real("0.5") + 3 * p.epsilon / 2;
  std::optional<Rational> gamma_arg_exact;
  if (p.epsilon_exact)
    gamma_arg_exact = -2 * Rational(n) - Rational(1, 2) + 3 * (*p.epsilon_exact) / 2;
  Real gam = detail::gamma_checked(gamma_arg, gamma_arg_exact, "e2_side");

  Complex projector = unit_phase_pi((1 - 3 * p.epsilon) / 2, branch) + Complex(Real{parity_sign});
  Real scale = -pow(2 * inv_g2, 2 * Real(n) + Real("0.5") - 3 * p.epsilon / 2) *
               pow(inv_g2, static_cast<int>(n)) / detail::factorial_real(n) * gam;
  return scale * projector;
}

/// Level selector for the valley-method spectrum.
struct LevelSpec {
  Well well = Well::central;
  unsigned index = 0;   // n0 (central) or n (side)
  int parity_sign = 0;  // +-1 for side levels, ignored for central

  static LevelSpec central(unsigned n0) { return {Well::central, n0, 0}; }
  static LevelSpec side(unsigned n, int sign) { return {Well::side, n, sign}; }
};

/// Assembled leading-plus-shift energy in g-frame units.
struct NonpertValue {
  Real leading;     // harmonic term
  Complex e2;       // valley coefficient
  Real shift_real;  // (sqrt2/(pi g^2)) e^{-1/(2g^2)} Re E2
  Real shift_imag;  // same prefactor, Im E2
  Real total_real;  // leading + shift_real;  O(e^{-1/g^2}) dropped
};

inline NonpertValue energy_st(const LevelSpec& level, const WellParams& p,
                              int branch = default_branch) {
  NonpertValue out;
  if (level.well == Well::central) {
    out.leading = Real(level.index) + Real("0.5") + p.epsilon / 2;
    out.e2 = e2_central(level.index, p, branch);
  } else {
    out.leading = 2 * Real(level.index) + 1 - p.epsilon;
    out.e2 = e2_side(level.index, level.parity_sign, p, branch);
  }
  Real g2 = p.g * p.g;
  Real prefactor = sqrt(Real{2}) / (pi() * g2) * exp(-1 / (2 * g2));
  out.shift_real = prefactor * out.e2.re;
  out.shift_imag = prefactor * out.e2.im;
  out.total_real = out.leading + out.shift_real;
  return out;
}

/// Valley-method energies in the omega frame, closed forms for the three
/// lowest levels at eps = 0 (E = omega * Re E_st(omega^{-1/2})).
inline Real energy_st_omega(const Real& omega, int level) {
  if (!(omega > 0)) throw std::domain_error("energy_st_omega: omega must be positive");
  Real damp = exp(-omega / 2);
  switch (level) {
    case 0:
      return omega * (Real("0.5") - gamma(Real("0.25")) / pi() * pow(omega, Real("0.75")) * damp);
    case 1:
      return omega * (1 - 4 / sqrt(pi()) * pow(omega, Real("1.5")) * damp);
    case 2:
      return omega * (1 + 4 / sqrt(pi()) * pow(omega, Real("1.5")) * damp);
    default:
      throw std::invalid_argument("energy_st_omega: level must be 0, 1 or 2");
  }
}

/// Dilute-gas energies in the omega frame for the three lowest levels.
inline Real energy_al(const Real& omega, int level) {
  if (!(omega > 0)) throw std::domain_error("energy_al: omega must be positive");
  switch (level) {
    case 1:
      return omega;
    case 0:
    case 2: {
      Real root = sqrt(1 + Real(1024) / (3 * pi()) * omega * exp(-omega / 2));
      return omega * (Real("0.75") + (level == 0 ? -root : root) / 4);
    }
    default:
      throw std::invalid_argument("energy_al: level must be 0, 1 or 2");
  }
}

inline Real e0_formula(const Real& omega, Formula f) {
  return f == Formula::al ? energy_al(omega, 0) : energy_st_omega(omega, 0);
}

/// Splitting E2 - E1 of the purely nonperturbative doublet.
inline Real delta21(const Real& omega, Formula f) {
  if (!(omega > 0)) throw std::domain_error("delta21: omega must be positive");
  if (f == Formula::st)
    return 8 / sqrt(pi()) * pow(omega, Real("2.5")) * exp(-omega / 2);
  return energy_al(omega, 2) - energy_al(omega, 1);
}

}  // namespace twlab

#endif  // TWLAB_NONPERT_HPP
