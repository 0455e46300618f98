#ifndef TWLAB_NUMERICS_HPP
#define TWLAB_NUMERICS_HPP

// Arithmetic substrate for the triple-well laboratory: exact rationals with
// unbounded integer parts, configurable-precision reals (MPFR-backed), a
// minimal complex type, and the special functions (gamma, digamma, branched
// complex powers) the spectral formulas are built from.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <mpfr.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twlab {

using Integer  = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;  // canonical: lowest terms, den > 0
using Real     = boost::multiprecision::mpfr_float;    // runtime-variable precision

// ---------------------------------------------------------------------------
// Error taxonomy

/// Special function evaluated at a pole (non-positive integer argument).
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// Spectral formula hit a degenerate parameter set (gamma-argument pole).
class DegeneracyError : public std::domain_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::domain_error(what) {}
};

/// Root solver could not establish (or keep) a bracket.
class NoRootError : public std::runtime_error {
 public:
  explicit NoRootError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative scheme failed to reach the requested certificate.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested order/index lies outside the computed range.
class RangeError : public std::out_of_range {
 public:
  explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

/// Cache file malformed, version-mismatched, or checksum-rejected.
class CacheError : public std::runtime_error {
 public:
  explicit CacheError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Precision management
//
// All Real arithmetic inside a PrecisionContext scope runs at the requested
// decimal precision plus a fixed number of guard digits; reported values are
// rounded back to the requested precision by the callers that publish them.

class PrecisionContext {
 public:
  static constexpr unsigned min_digits   = 16;
  static constexpr unsigned guard_digits = 8;

  explicit PrecisionContext(unsigned decimal_digits)
      : digits_(decimal_digits), previous_(Real::default_precision()) {
    if (decimal_digits < min_digits)
      throw std::invalid_argument("PrecisionContext: need at least 16 decimal digits");
    Real::default_precision(decimal_digits + guard_digits);
  }
  ~PrecisionContext() { Real::default_precision(previous_); }

  PrecisionContext(const PrecisionContext&) = delete;
  PrecisionContext& operator=(const PrecisionContext&) = delete;

  unsigned decimal_digits() const { return digits_; }

 private:
  unsigned digits_;
  unsigned previous_;
};

/// Round a value (possibly carrying a higher precision from an inner scope)
/// to the ambient working precision.
inline Real round_to_ambient(const Real& x) {
  Real r{};
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

inline Real pi() {
  Real r{};
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

inline Real euler_gamma() {
  Real r{};
  mpfr_const_euler(r.backend().data(), MPFR_RNDN);
  return r;
}

inline Real euler_e() {
  Real one{1};
  return exp(one);
}

inline Real to_real(const Rational& q) { return Real(q); }  // one correctly-rounded mpfr_set_q

// ---------------------------------------------------------------------------
// Special functions

inline bool is_integer(const Real& x) { return mpfr_integer_p(x.backend().data()) != 0; }

inline bool is_nonpositive_integer(const Real& x) { return x <= 0 && is_integer(x); }

/// Gamma function; throws PoleError at non-positive integers. MPFR evaluates
/// it correctly rounded at the working precision.
inline Real gamma(const Real& x) {
  if (is_nonpositive_integer(x))
    throw PoleError("gamma: pole at non-positive integer argument");
  Real r{};
  mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

/// Digamma function psi(x); throws PoleError at non-positive integers.
inline Real digamma(const Real& x) {
  if (is_nonpositive_integer(x))
    throw PoleError("digamma: pole at non-positive integer argument");
  Real r{};
  mpfr_digamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------
// Complex values
//
// MPC is not linked; the formulas only need +, -, *, /, conjugation and polar
// construction, so a two-component type over Real is sufficient.

struct Complex {
  Real re{};
  Real im{};

  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const Real& r) : re(r), im(Real{0}) {}

  Complex operator-() const { return {-re, -im}; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
  friend Complex operator*(const Complex& a, const Real& s) { return s * a; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }

  friend Complex conj(const Complex& a) { return {a.re, -a.im}; }
  friend Real abs(const Complex& a) { return sqrt(a.re * a.re + a.im * a.im); }
};

/// Branch convention for (-1)^x := exp(branch * i*pi*x); branch in {+1, -1}.
/// The calibrated default (+1) makes Im E_NP positive for the ground state,
/// which is the sign the large-order analysis relies on.
constexpr int default_branch = +1;

inline void check_branch(int branch) {
  if (branch != +1 && branch != -1)
    throw std::invalid_argument("branch must be +1 or -1");
}

struct BranchedComplex {
  Complex value;
  int branch = default_branch;
};

/// exp(branch * i*pi*x), with integer and half-integer x mapped to exact
/// lattice points so that e.g. (-1)^2 carries a strictly zero imaginary part.
inline Complex unit_phase_pi(const Real& x, int branch) {
  check_branch(branch);
  Real two_x = 2 * x;
  if (is_integer(two_x)) {
    Integer k;
    mpfr_get_z(k.backend().data(), two_x.backend().data(), MPFR_RNDN);
    unsigned r = static_cast<unsigned>(((k % 4) + 4) % 4);  // phase in quarter turns
    if (branch < 0) r = (4 - r) % 4;
    switch (r) {
      case 0: return {Real{1}, Real{0}};
      case 1: return {Real{0}, Real{1}};
      case 2: return {Real{-1}, Real{0}};
      default: return {Real{0}, Real{-1}};
    }
  }
  Real a = pi() * x;
  return {cos(a), Real{branch} * sin(a)};
}

/// magnitude^exponent * exp(branch*i*pi*exponent): the factor the valley
/// formulas write as (-magnitude)^exponent with a fixed branch of (-1)^x.
inline BranchedComplex complex_pow_negative_base(const Real& magnitude, const Real& exponent,
                                                 int branch = default_branch) {
  check_branch(branch);
  if (!(magnitude > 0))
    throw std::domain_error("complex_pow_negative_base: magnitude must be positive");
  Real mag = pow(magnitude, exponent);
  return {mag * unit_phase_pi(exponent, branch), branch};
}

// ---------------------------------------------------------------------------
// Decimal string helpers (used by reports, caches and golden comparisons)

/// Value formatted with `sig` significant digits, round-to-nearest,
/// scientific form, e.g. 4.7230e-03.
inline std::string to_string_sig(const Real& x, int sig) {
  if (sig < 1) throw std::invalid_argument("to_string_sig: sig >= 1");
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", sig - 1, x.backend().data());
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

/// Fixed-point rendering with `digits` digits after the decimal point,
/// round-to-nearest.
inline std::string to_string_fixed(const Real& x, int digits) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rf", digits, x.backend().data());
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

/// Fixed-point rendering with `digits` digits after the decimal point,
/// rounding toward zero (matches tables printed as truncated expansions).
inline std::string to_string_fixed_truncated(const Real& x, int digits) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*R*f", digits, MPFR_RNDZ, x.backend().data());
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

/// Exact truncated decimal rendering of a rational, `digits` digits after
/// the point; pure integer arithmetic, no rounding ambiguity.
inline std::string to_string_fixed_truncated(const Rational& q, int digits) {
  Integer num = numerator(q), den = denominator(q);
  bool neg = num < 0;
  if (neg) num = -num;
  Integer ip = num / den;
  Integer rem = num - ip * den;
  std::string out = (neg && (ip != 0 || rem != 0)) ? "-" : "";
  out += ip.str();
  if (digits > 0) {
    out += '.';
    for (int i = 0; i < digits; ++i) {
      rem *= 10;
      Integer d = rem / den;
      rem -= d * den;
      out += static_cast<char>('0' + static_cast<int>(d));
    }
  }
  return out;
}

/// Parse a decimal literal ("30", "-0.25", "1.5e-3") into an exact Rational.
inline Rational rational_from_decimal(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = (text[i++] == '-');
  std::string digits;
  long frac_digits = 0, expo = 0;
  bool any = false, seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits += c;
      any = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if ((c == 'e' || c == 'E') && any) {
      expo = std::stol(text.substr(i + 1));
      i = text.size() - 1;
    } else {
      throw std::invalid_argument("rational_from_decimal: bad literal '" + text + "'");
    }
  }
  if (!any) throw std::invalid_argument("rational_from_decimal: bad literal '" + text + "'");
  Integer num = 0;
  for (char c : digits) num = num * 10 + (c - '0');
  if (neg) num = -num;
  Rational q(num);
  long p10 = expo - frac_digits;
  Integer scale = 1;
  for (long k = 0; k < (p10 < 0 ? -p10 : p10); ++k) scale *= 10;
  if (p10 >= 0)
    q *= scale;
  else
    q /= scale;
  return q;
}

/// Number of leading decimal digits on which a and b agree (relative sense),
/// capped at the working precision; used for convergence certificates.
inline int matching_digits(const Real& a, const Real& b) {
  const int cap = static_cast<int>(Real::default_precision());
  if (a == b) return cap;  // identical at working precision
  Real diff = abs(a - b);
  Real scale = abs(a) > abs(b) ? abs(a) : abs(b);
  if (scale == 0) return 0;
  Real r = diff / scale;
  if (r >= 1) return 0;
  long e = mpfr_get_exp(r.backend().data());  // r in [2^(e-1), 2^e)
  double dec = -static_cast<double>(e) * 0.30102999566398119;
  if (dec < 0) return 0;
  return dec > cap ? cap : static_cast<int>(dec);
}

}  // namespace twlab

#endif  // TWLAB_NUMERICS_HPP
