#ifndef TWLAB_BENDER_WU_HPP
#define TWLAB_BENDER_WU_HPP

// Rayleigh-Schroedinger perturbation series around the central and side wells
// of V(q) = q^2 (1 - g^2 q^2)^2 / 2, generated order by order from the exact
// power-series recursions in pure rational arithmetic.
//
// Central well (P = parity class, l0 = floor(n0/2), beta_l = (2l+2+P)(2l+1+P)):
//
//   4(l-l0) a_l^[2k] - beta_l a_{l+1}^[2k]
//     = 2 a_{l-2}^[2(k-1)] - a_{l-3}^[2(k-2)] + 2 sum_{m>=1} c^[2m] a_l^[2(k-m)]
//
// where a_l^[2k] multiplies q^{2l+P} in e^{-q^2/2} sum a q^{2l+P}, and the
// expansion parameter is g^2.  The side-well series (harmonic frequency 2,
// measure e^{-q^2}, expansion parameter g, all integer powers q^l present):
//
//   4(l-n) a_l^[k] - (l+2)(l+1) a_{l+2}^[k]
//     = -s 12 a_{l-3}^[k-1] - 13 a_{l-4}^[k-2] - s 6 a_{l-5}^[k-3] - a_{l-6}^[k-4]
//       + 2 sum_{j>=1} c^[j] a_l^[k-j]
//
// Energy coefficients of odd order in g are produced by the solver and
// asserted (not assumed) to vanish.  Closure rule: at each order the wave
// coefficient multiplying the unperturbed state's leading power is set to
// zero, and the energy coefficient is fixed by solvability at that index.

#include <twlab/model.hpp>
#include <twlab/numerics.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace twlab {

/// Energy coefficients c^[2m] of one state: E(g) = sum_m g^{2m} c^[2m].
struct RationalSeries {
  Well well = Well::central;
  unsigned state_index = 0;
  SeriesParity parity = SeriesParity::even;
  std::vector<Rational> coefficients;  // index m = 0..order

  unsigned order() const { return static_cast<unsigned>(coefficients.size()) - 1; }

  const Rational& c(unsigned m) const {
    if (m >= coefficients.size())
      throw RangeError("RationalSeries: order " + std::to_string(m) + " beyond computed " +
                       std::to_string(order()));
    return coefficients[m];
  }
};

/// Wave-function coefficients; entries[k][l] is a_{2l+P}^[2k] (central) or
/// a_l^[k] (side).  Row k is truncated at its stencil bound l_max(k).
struct WaveCoefficientTable {
  Well well = Well::central;
  std::vector<std::vector<Rational>> entries;

  unsigned l_max(unsigned k) const {
    return static_cast<unsigned>(entries.at(k).size()) - 1;
  }
  Rational at(unsigned k, long l) const {
    if (k >= entries.size() || l < 0 || l >= static_cast<long>(entries[k].size())) return Rational(0);
    return entries[k][static_cast<std::size_t>(l)];
  }
};

struct SeriesResult {
  RationalSeries series;
  WaveCoefficientTable waves;
};

namespace detail {

inline const Rational* table_entry(const std::vector<std::vector<Rational>>& a, long k, long l) {
  if (k < 0 || l < 0) return nullptr;
  const auto& row = a[static_cast<std::size_t>(k)];
  if (l >= static_cast<long>(row.size())) return nullptr;
  return &row[static_cast<std::size_t>(l)];
}

}  // namespace detail

/// Perturbation series around the central well for state n0 (parity class
/// P = n0 mod 2).  c^[0] = n0 + 1/2; the seed wave row holds the Hermite
/// coefficients of the unperturbed state normalised to leading coefficient 1.
inline SeriesResult central_series(unsigned n0, unsigned parity_class, unsigned max_order) {
  if (parity_class != n0 % 2)
    throw std::invalid_argument("central_series: parity class must equal n0 mod 2");
  const long P = parity_class;
  const long l0 = n0 / 2;
  auto beta = [&](long l) { return Rational((2 * l + 2 + P) * (2 * l + 1 + P)); };

  std::vector<std::vector<Rational>> a(max_order + 1);
  std::vector<Rational> c;
  c.reserve(max_order + 1);
  c.emplace_back(Rational(2 * n0 + 1, 2));

  // k = 0: Hermite coefficients, downward from a_{l0} = 1
  a[0].assign(static_cast<std::size_t>(l0) + 1, Rational(0));
  a[0][static_cast<std::size_t>(l0)] = 1;
  for (long l = l0 - 1; l >= 0; --l)
    a[0][static_cast<std::size_t>(l)] = beta(l) * a[0][static_cast<std::size_t>(l + 1)] / (4 * (l - l0));

  for (long k = 1; k <= static_cast<long>(max_order); ++k) {
    const long lmax = l0 + 2 * k;
    std::vector<Rational> row(static_cast<std::size_t>(lmax) + 1, Rational(0));

    // right-hand side from the previously computed orders (energy term m = k
    // excluded; the seed row vanishes above l0 and is reinstated below it)
    auto rhs = [&](long l) {
      Rational r(0);
      if (const Rational* p = detail::table_entry(a, k - 1, l - 2)) r += 2 * (*p);
      if (const Rational* p = detail::table_entry(a, k - 2, l - 3)) r -= *p;
      for (long m = 1; m < k; ++m) {
        if (c[static_cast<std::size_t>(m)].is_zero()) continue;
        if (const Rational* p = detail::table_entry(a, k - m, l))
          if (!p->is_zero()) r += 2 * c[static_cast<std::size_t>(m)] * (*p);
      }
      return r;
    };

    for (long l = lmax; l > l0; --l) {
      Rational up = (l + 1 <= lmax) ? row[static_cast<std::size_t>(l + 1)] : Rational(0);
      row[static_cast<std::size_t>(l)] = (beta(l) * up + rhs(l)) / (4 * (l - l0));
    }
    // solvability at l = l0 fixes the energy coefficient
    Rational ck = (-beta(l0) * row[static_cast<std::size_t>(l0 + 1)] - rhs(l0)) / 2;
    c.push_back(ck);
    row[static_cast<std::size_t>(l0)] = 0;  // intermediate normalisation
    for (long l = l0 - 1; l >= 0; --l) {
      Rational r = rhs(l) + 2 * ck * a[0][static_cast<std::size_t>(l)];
      row[static_cast<std::size_t>(l)] =
          (beta(l) * row[static_cast<std::size_t>(l + 1)] + r) / (4 * (l - l0));
    }
    a[static_cast<std::size_t>(k)] = std::move(row);
  }

  SeriesResult out;
  out.series = {Well::central, n0,
                parity_class == 0 ? SeriesParity::even : SeriesParity::odd, std::move(c)};
  out.waves = {Well::central, std::move(a)};
  return out;
}

/// Perturbation series around a side well for state n; expansion runs in g
/// internally (wave function has odd powers), energy coefficients are
/// returned in g^2 up to max_order.  Throws if an odd-order energy
/// coefficient fails to vanish identically.
inline SeriesResult side_series(unsigned n, unsigned max_order) {
  const int sign = +1;  // right well; energies are reflection-invariant
  const long K = 2 * static_cast<long>(max_order);
  const long nn = n;
  auto kappa = [](long l) { return Rational((l + 2) * (l + 1)); };

  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(K) + 1);
  std::vector<Rational> cfull;  // coefficient of g^j, odd entries must vanish
  cfull.reserve(static_cast<std::size_t>(K) + 1);
  cfull.emplace_back(Rational(2 * nn + 1));

  a[0].assign(static_cast<std::size_t>(nn) + 1, Rational(0));
  a[0][static_cast<std::size_t>(nn)] = 1;
  for (long l = nn - 2; l >= 0; l -= 2)
    a[0][static_cast<std::size_t>(l)] = kappa(l) * a[0][static_cast<std::size_t>(l + 2)] / (4 * (l - nn));

  for (long k = 1; k <= K; ++k) {
    const long lmax = nn + 3 * k;
    std::vector<Rational> row(static_cast<std::size_t>(lmax) + 1, Rational(0));

    auto rhs = [&](long l) {
      Rational r(0);
      if (const Rational* p = detail::table_entry(a, k - 1, l - 3)) r -= 12 * sign * (*p);
      if (const Rational* p = detail::table_entry(a, k - 2, l - 4)) r -= 13 * (*p);
      if (const Rational* p = detail::table_entry(a, k - 3, l - 5)) r -= 6 * sign * (*p);
      if (const Rational* p = detail::table_entry(a, k - 4, l - 6)) r -= *p;
      for (long j = 2; j < k; j += 2) {  // odd-order energies vanish; skip them
        if (cfull[static_cast<std::size_t>(j)].is_zero()) continue;
        if (const Rational* p = detail::table_entry(a, k - j, l))
          if (!p->is_zero()) r += 2 * cfull[static_cast<std::size_t>(j)] * (*p);
      }
      return r;
    };

    Rational ck(0);
    // two residue chains in l (same parity as n carries the solvability index)
    for (long par = 0; par < 2; ++par) {
      long top = (lmax % 2 == par) ? lmax : lmax - 1;
      if (top < 0) continue;
      if (par == nn % 2) {
        for (long l = top; l > nn; l -= 2) {
          Rational up = (l + 2 <= lmax) ? row[static_cast<std::size_t>(l + 2)] : Rational(0);
          row[static_cast<std::size_t>(l)] = (kappa(l) * up + rhs(l)) / (4 * (l - nn));
        }
        ck = (-kappa(nn) * row.at(static_cast<std::size_t>(nn + 2)) - rhs(nn)) / 2;
        row[static_cast<std::size_t>(nn)] = 0;
        for (long l = nn - 2; l >= 0; l -= 2) {
          Rational r = rhs(l) + 2 * ck * a[0][static_cast<std::size_t>(l)];
          row[static_cast<std::size_t>(l)] =
              (kappa(l) * row[static_cast<std::size_t>(l + 2)] + r) / (4 * (l - nn));
        }
      } else {
        for (long l = top; l >= 0; l -= 2) {
          Rational up = (l + 2 <= lmax) ? row[static_cast<std::size_t>(l + 2)] : Rational(0);
          row[static_cast<std::size_t>(l)] = (kappa(l) * up + rhs(l)) / (4 * (l - nn));
        }
      }
    }

    if (k % 2 == 1 && !ck.is_zero())
      throw std::logic_error("side_series: odd-order energy coefficient failed to vanish at g^" +
                             std::to_string(k));
    cfull.push_back(std::move(ck));
    a[static_cast<std::size_t>(k)] = std::move(row);
  }

  std::vector<Rational> c(max_order + 1);
  for (unsigned m = 0; m <= max_order; ++m) c[m] = cfull[2 * m];

  SeriesResult out;
  out.series = {Well::side, n, SeriesParity::not_applicable, std::move(c)};
  out.waves = {Well::side, std::move(a)};
  return out;
}

/// Partial sum E_P(omega) = sum_{m=1}^{M} omega^{1-m} c^[2m] at working
/// precision; each term rounded once, then accumulated.
inline Real partial_sum(const RationalSeries& s, const Real& omega, unsigned M) {
  if (M > s.order())
    throw RangeError("partial_sum: truncation order exceeds computed series order");
  if (!(omega > 0)) throw std::domain_error("partial_sum: omega must be positive");
  Real acc{0};
  Real w_pow{1};  // omega^{1-m}, starting at m = 1
  for (unsigned m = 1; m <= M; ++m) {
    acc += w_pow * to_real(s.coefficients[m]);
    w_pow /= omega;
  }
  return acc;
}

/// Same sum carried out entirely in rational arithmetic (for integer or
/// rational omega); the caller performs the single final rounding.
inline Rational partial_sum_exact(const RationalSeries& s, const Rational& omega, unsigned M) {
  if (M > s.order())
    throw RangeError("partial_sum_exact: truncation order exceeds computed series order");
  if (!(omega > 0)) throw std::domain_error("partial_sum_exact: omega must be positive");
  Rational acc(0), w_pow(1);
  for (unsigned m = 1; m <= M; ++m) {
    acc += w_pow * s.coefficients[m];
    w_pow /= omega;
  }
  return acc;
}

/// Optimal-truncation order: argmin over 1 <= m <= order of |g^{2m} c^[2m]|,
/// ties broken toward smaller m.  The minimiser must be interior; hitting the
/// boundary means the series is too short to certify it.
inline unsigned critical_order(const RationalSeries& s, const Real& g) {
  if (s.order() < 2) throw RangeError("critical_order: series too short");
  const Real g2 = g * g;
  Real scale{1};
  Real best;
  unsigned best_m = 0;
  for (unsigned m = 1; m <= s.order(); ++m) {
    scale *= g2;
    if (s.coefficients[m].is_zero()) continue;
    Real t = scale * abs(to_real(s.coefficients[m]));
    if (best_m == 0 || t < best) {
      best = t;
      best_m = m;
    }
  }
  if (best_m == s.order())
    throw RangeError("critical_order: minimum sits at the series boundary (m = " +
                     std::to_string(best_m) + "); extend the series");
  return best_m;
}

/// |g^{2 m_c} c^[2 m_c]| at the critical order.
inline Real min_term_magnitude(const RationalSeries& s, const Real& g) {
  unsigned mc = critical_order(s, g);
  return pow(g * g, static_cast<int>(mc)) * abs(to_real(s.coefficients[mc]));
}

}  // namespace twlab

#endif  // TWLAB_BENDER_WU_HPP
