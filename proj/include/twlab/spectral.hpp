#ifndef TWLAB_SPECTRAL_HPP
#define TWLAB_SPECTRAL_HPP

// Reference eigensolver for H = -d^2/dx^2 / 2 + (omega^2/2) x^2 (x^2-1)^2:
// Rayleigh-Ritz in a parity-resolved harmonic-oscillator basis of frequency
// Omega, with matrix elements assembled exactly (rational x sqrt(integer),
// rounded once) and eigenvalues extracted by inertia bisection on the banded
// LDL^T factorisation.  Convergence is certified by basis doubling.
//
// Ladder bookkeeping uses the scaled components w_j = v_j / sqrt(j!):
//   (a + a~)   : w'_j = (j+1) w_{j+1} + w_{j-1}
//   (a~ - a)   : w'_j = w_{j-1} - (j+1) w_{j+1}
// so column n of x^{2k} carries integer weights W_m times sqrt(m!/n!), and
//   <m| x^{2k} |n> = (2 Omega)^{-k} W_m sqrt(m!/n!),
//   p^2/2 = -(Omega/4) (a~ - a)^2.

#include <twlab/model.hpp>
#include <twlab/nonpert.hpp>
#include <twlab/numerics.hpp>

#include <algorithm>
#include <array>
#include <string>
#include <vector>

namespace twlab {

enum class SpectralParity { even, odd };

inline const char* to_string(SpectralParity p) { return p == SpectralParity::even ? "even" : "odd"; }

struct BasisConfig {
  unsigned basis_size = 48;        // per-parity starting dimension (>= 4)
  unsigned max_basis_size = 1536;  // escalation cap for the doubling probe
  Rational basis_frequency{0};     // oscillator scale; 0 selects the E0 scan
  unsigned target_digits = 10;     // digits that must survive basis doubling
  bool harmonic_selftest = false;  // replace the potential by (Omega^2/2) x^2
};

struct SpectrumEstimate {
  unsigned level = 0;
  Real value;
  int stable_digits = 0;
  SpectralParity parity = SpectralParity::even;
};

struct CertifiedValue {
  Real value;
  int stable_digits = 0;
  unsigned basis_used = 0;
};

namespace detail {

/// Integer ladder window around column index n (global indices n-6 .. n+6).
struct LadderWindow {
  long base;                      // global index of slot 0
  std::array<long long, 13> w{};  // exact integer weights

  explicit LadderWindow(long n) : base(n - 6) { w[6] = 1; }

  long long at(long global) const {
    long s = global - base;
    return (s >= 0 && s < 13) ? w[static_cast<std::size_t>(s)] : 0;
  }

  void apply(bool minus_a) {  // (a~ + a) or (a~ - a)
    std::array<long long, 13> out{};
    for (long s = 0; s < 13; ++s) {
      long j = base + s;
      if (j < 0) continue;
      long long acc = 0;
      if (s + 1 < 13) acc += (minus_a ? -(j + 1) : (j + 1)) * w[static_cast<std::size_t>(s + 1)];
      if (s - 1 >= 0) acc += w[static_cast<std::size_t>(s - 1)];
      out[static_cast<std::size_t>(s)] = acc;
    }
    w = out;
  }
};

/// Symmetric banded matrix, lower storage by columns: bands[d][i] = A(i+d, i).
struct BandedMatrix {
  unsigned n = 0;
  unsigned halfband = 0;
  std::vector<std::vector<Real>> bands;
};

/// sqrt(m!/n!) for m >= n (a product of at most `halfband*step` integers).
inline Real sqrt_factorial_ratio(long n, long m) {
  Integer f = 1;
  for (long t = n + 1; t <= m; ++t) f *= t;
  return sqrt(Real(f));
}

/// One parity sector (full index n = 2i + parity), exact assembly.
inline BandedMatrix assemble_sector(const Rational& omega, const Rational& basis_freq,
                                    unsigned N, int parity, bool harmonic_selftest) {
  if (N < 4) throw std::invalid_argument("assemble_sector: basis size must be at least 4");
  if (!(basis_freq > 0)) throw std::invalid_argument("assemble_sector: basis frequency must be positive");
  BandedMatrix A;
  A.n = N;
  A.halfband = 3;
  A.bands.assign(4, std::vector<Real>(N, Real{0}));

  const Rational w2_half = omega * omega / 2;
  const Rational inv2f = Rational(1) / (2 * basis_freq);
  const Rational kin = -basis_freq / 4;

  for (unsigned i = 0; i < N; ++i) {
    const long n = 2 * static_cast<long>(i) + parity;
    if (n > 90000) throw std::invalid_argument("assemble_sector: basis index too large");

    LadderWindow x2(n), kin2(n);
    x2.apply(false);
    x2.apply(false);
    LadderWindow x4 = x2;
    x4.apply(false);
    x4.apply(false);
    LadderWindow x6 = x4;
    x6.apply(false);
    x6.apply(false);
    kin2.apply(true);
    kin2.apply(true);

    for (unsigned d = 0; d <= 3 && i + d < N; ++d) {
      const long m = n + 2 * static_cast<long>(d);
      Rational r = kin * kin2.at(m);
      if (harmonic_selftest) {
        r += basis_freq * basis_freq / 2 * inv2f * x2.at(m);
      } else {
        r += w2_half *
             (inv2f * inv2f * inv2f * x6.at(m) - 2 * inv2f * inv2f * x4.at(m) + inv2f * x2.at(m));
      }
      if (!r.is_zero()) A.bands[d][i] = to_real(r) * sqrt_factorial_ratio(n, m);
    }
  }
  return A;
}

/// Joint (both-parity) assembly in the plain oscillator basis, halfband 6;
/// the potential couples only like parities, so this must reproduce the
/// merged sector spectra.  Kept as a validation path.
inline BandedMatrix assemble_joint(const Rational& omega, const Rational& basis_freq, unsigned N,
                                   bool harmonic_selftest) {
  if (N < 4) throw std::invalid_argument("assemble_joint: basis size must be at least 4");
  BandedMatrix A;
  A.n = N;
  A.halfband = 6;
  A.bands.assign(7, std::vector<Real>(N, Real{0}));

  const Rational w2_half = omega * omega / 2;
  const Rational inv2f = Rational(1) / (2 * basis_freq);
  const Rational kin = -basis_freq / 4;

  for (unsigned i = 0; i < N; ++i) {
    const long n = i;
    LadderWindow x2(n), kin2(n);
    x2.apply(false);
    x2.apply(false);
    LadderWindow x4 = x2;
    x4.apply(false);
    x4.apply(false);
    LadderWindow x6 = x4;
    x6.apply(false);
    x6.apply(false);
    kin2.apply(true);
    kin2.apply(true);

    for (unsigned d = 0; d <= 6 && i + d < N; ++d) {
      const long m = n + static_cast<long>(d);
      Rational r = kin * kin2.at(m);
      if (harmonic_selftest) {
        r += basis_freq * basis_freq / 2 * inv2f * x2.at(m);
      } else {
        r += w2_half *
             (inv2f * inv2f * inv2f * x6.at(m) - 2 * inv2f * inv2f * x4.at(m) + inv2f * x2.at(m));
      }
      if (!r.is_zero()) A.bands[d][i] = to_real(r) * sqrt_factorial_ratio(n, m);
    }
  }
  return A;
}

/// Number of eigenvalues strictly below lambda (Sylvester inertia of the
/// shifted LDL^T factorisation; a vanishing pivot is counted as negative).
inline unsigned count_below(const BandedMatrix& A, const Real& lambda) {
  const unsigned n = A.n, h = A.halfband;
  std::vector<Real> d(n);
  std::vector<std::vector<Real>> L(h + 1, std::vector<Real>(n, Real{0}));
  unsigned neg = 0;
  for (unsigned j = 0; j < n; ++j) {
    Real dj = A.bands[0][j] - lambda;
    const unsigned k0 = j > h ? j - h : 0;
    for (unsigned k = k0; k < j; ++k) {
      const Real& ljk = L[j - k][k];
      dj -= ljk * ljk * d[k];
    }
    if (dj <= 0) {
      ++neg;
      if (dj == 0) dj = -Real("1e-200");  // keep the factorisation moving
    }
    d[j] = dj;
    for (unsigned r = 1; r <= h && j + r < n; ++r) {
      Real x = A.bands[r][j];
      const unsigned i = j + r;
      const unsigned kk0 = i > h ? i - h : 0;
      for (unsigned k = kk0; k < j; ++k) x -= L[i - k][k] * d[k] * L[j - k][k];
      L[r][j] = x / dj;
    }
  }
  return neg;
}

struct GershgorinBounds {
  Real lo, hi;
};

inline GershgorinBounds gershgorin(const BandedMatrix& A) {
  GershgorinBounds g{A.bands[0][0], A.bands[0][0]};
  for (unsigned i = 0; i < A.n; ++i) {
    Real radius{0};
    for (unsigned d = 1; d <= A.halfband; ++d) {
      if (i + d < A.n) radius += abs(A.bands[d][i]);
      if (i >= d) radius += abs(A.bands[d][i - d]);
    }
    Real lo = A.bands[0][i] - radius, hi = A.bands[0][i] + radius;
    if (lo < g.lo) g.lo = lo;
    if (hi > g.hi) g.hi = hi;
  }
  return g;
}

/// index-th smallest eigenvalue (0-based) by inertia bisection.
inline Real eigenvalue_bisect(const BandedMatrix& A, unsigned index, const Real& abs_tol) {
  auto g = gershgorin(A);
  Real lo = g.lo, hi = g.hi;
  while (hi - lo > abs_tol) {
    Real mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;  // working precision exhausted
    if (count_below(A, mid) >= index + 1)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2;
}

inline std::vector<Real> sector_eigenvalues(const Rational& omega, const Rational& freq,
                                            unsigned N, int parity, unsigned count,
                                            const Real& abs_tol, bool harmonic_selftest) {
  BandedMatrix A = assemble_sector(omega, freq, N, parity, harmonic_selftest);
  std::vector<Real> out;
  out.reserve(count);
  for (unsigned idx = 0; idx < count; ++idx) out.push_back(eigenvalue_bisect(A, idx, abs_tol));
  return out;
}

struct MergedLevel {
  Real value;
  SpectralParity parity;
};

inline std::vector<MergedLevel> merged_levels(const Rational& omega, const Rational& freq,
                                              unsigned N, unsigned count, const Real& abs_tol,
                                              bool harmonic_selftest) {
  const unsigned per_sector = count / 2 + 2;
  auto even = sector_eigenvalues(omega, freq, N, 0, per_sector, abs_tol, harmonic_selftest);
  auto odd = sector_eigenvalues(omega, freq, N, 1, per_sector, abs_tol, harmonic_selftest);
  std::vector<MergedLevel> all;
  for (auto& e : even) all.push_back({e, SpectralParity::even});
  for (auto& o : odd) all.push_back({o, SpectralParity::odd});
  std::sort(all.begin(), all.end(),
            [](const MergedLevel& a, const MergedLevel& b) { return a.value < b.value; });
  all.resize(count);
  return all;
}

}  // namespace detail

/// Variationally optimal oscillator frequency: coarse scan of E0 over simple
/// rational multiples of omega at a small basis size.
inline Rational default_basis_frequency(const Rational& omega) {
  static const std::array<Rational, 7> factors = {
      Rational(1), Rational(5, 4), Rational(3, 2), Rational(7, 4),
      Rational(2), Rational(9, 4), Rational(5, 2)};
  Rational best_f = factors[0] * omega;
  Real best_e;
  bool first = true;
  for (const auto& f : factors) {
    Rational candidate = f * omega;
    Real e0 = detail::sector_eigenvalues(omega, candidate, 24, 0, 1, Real("1e-12"), false)[0];
    if (first || e0 < best_e) {
      best_e = e0;
      best_f = candidate;
      first = false;
    }
  }
  return best_f;
}

/// Lowest `count` eigenvalues with convergence certificates from basis
/// doubling; throws ConvergenceError if the certificate cannot be met within
/// config.max_basis_size.
inline std::vector<SpectrumEstimate> eigenvalues(const Rational& omega, unsigned count,
                                                 const BasisConfig& config) {
  if (!(omega > 0)) throw std::domain_error("eigenvalues: omega must be positive");
  if (count < 1) throw std::invalid_argument("eigenvalues: count must be at least 1");
  const Rational freq =
      config.basis_frequency > 0 ? config.basis_frequency : default_basis_frequency(omega);
  const Real abs_tol =
      pow(Real{10}, -static_cast<int>(config.target_digits + 8)) * (1 + 3 * to_real(omega));

  std::vector<detail::MergedLevel> prev;
  unsigned N = std::max(4u, config.basis_size);
  for (; N <= config.max_basis_size; N *= 2) {
    auto cur = detail::merged_levels(omega, freq, N, count, abs_tol, config.harmonic_selftest);
    if (!prev.empty()) {
      std::vector<int> stable(count);
      int worst = 1 << 30;
      for (unsigned i = 0; i < count; ++i) {
        stable[i] = matching_digits(prev[i].value, cur[i].value);
        worst = std::min(worst, stable[i]);
      }
      if (worst >= static_cast<int>(config.target_digits)) {
        std::vector<SpectrumEstimate> out;
        for (unsigned i = 0; i < count; ++i)
          out.push_back({i, cur[i].value, stable[i], cur[i].parity});
        return out;
      }
    }
    prev = std::move(cur);
  }
  throw ConvergenceError("eigenvalues: certificate not reached at basis size " +
                         std::to_string(config.max_basis_size) + " (target " +
                         std::to_string(config.target_digits) + " digits)");
}

/// E2 - E1 with the stability certificate applied to the difference itself.
inline CertifiedValue delta21_exact(const Rational& omega, const BasisConfig& config) {
  const Rational freq =
      config.basis_frequency > 0 ? config.basis_frequency : default_basis_frequency(omega);
  const Real abs_tol =
      pow(Real{10}, -static_cast<int>(config.target_digits + 10)) * delta21(to_real(omega), Formula::st);

  bool have_prev = false;
  Real prev_diff;
  unsigned N = std::max(4u, config.basis_size);
  for (; N <= config.max_basis_size; N *= 2) {
    auto lv = detail::merged_levels(omega, freq, N, 3, abs_tol, config.harmonic_selftest);
    if (lv[1].parity != SpectralParity::odd || lv[2].parity != SpectralParity::even)
      throw ConvergenceError("delta21_exact: unexpected parity ordering of the doublet");
    Real diff = lv[2].value - lv[1].value;
    if (have_prev) {
      int stable = matching_digits(prev_diff, diff);
      if (stable >= static_cast<int>(config.target_digits)) return {diff, stable, N};
    }
    prev_diff = diff;
    have_prev = true;
  }
  throw ConvergenceError("delta21_exact: difference certificate not reached at basis size " +
                         std::to_string(config.max_basis_size));
}

/// E0^exact(omega) - E0^formula(omega): the perturbative remainder each
/// nonperturbative formula predicts for the ground state.
inline CertifiedValue perturbative_remainder(const Rational& omega, Formula f,
                                             const BasisConfig& config) {
  const Rational freq =
      config.basis_frequency > 0 ? config.basis_frequency : default_basis_frequency(omega);
  const Real abs_tol = pow(Real{10}, -static_cast<int>(config.target_digits + 8));

  bool have_prev = false;
  Real prev_e0;
  unsigned N = std::max(4u, config.basis_size);
  for (; N <= config.max_basis_size; N *= 2) {
    Real e0 =
        detail::sector_eigenvalues(omega, freq, N, 0, 1, abs_tol, config.harmonic_selftest)[0];
    if (have_prev) {
      int stable = matching_digits(prev_e0, e0);
      if (stable >= static_cast<int>(config.target_digits))
        return {e0 - e0_formula(to_real(omega), f), stable, N};
    }
    prev_e0 = e0;
    have_prev = true;
  }
  throw ConvergenceError("perturbative_remainder: certificate not reached at basis size " +
                         std::to_string(config.max_basis_size));
}

/// Joint-basis route (no parity resolution), for the block-diagonalisation
/// consistency check.
inline std::vector<Real> joint_eigenvalues(const Rational& omega, const Rational& freq,
                                           unsigned N, unsigned count, const Real& abs_tol) {
  detail::BandedMatrix A = detail::assemble_joint(omega, freq, N, false);
  std::vector<Real> out;
  for (unsigned idx = 0; idx < count; ++idx)
    out.push_back(detail::eigenvalue_bisect(A, idx, abs_tol));
  return out;
}

}  // namespace twlab

#endif  // TWLAB_SPECTRAL_HPP
