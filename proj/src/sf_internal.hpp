#ifndef LICRIT_SF_INTERNAL_HPP
#define LICRIT_SF_INTERNAL_HPP

// Helpers shared by the special-function translation units.

#include <mpfr.h>

#include <cmath>

#include "licrit/ball.hpp"

namespace licrit::sf::detail {

inline constexpr Precision kGuardBits = 24;

inline Precision guarded(const PrecisionContext& ctx) { return ctx.working_bits + kGuardBits; }

inline double lower_d(const BallReal& x) {
  mpfr_t t;
  mpfr_init2(t, x.precision());
  x.lower(t);
  double d = mpfr_get_d(t, MPFR_RNDD);
  mpfr_clear(t);
  return d;
}

inline double upper_d(const BallReal& x) {
  mpfr_t t;
  mpfr_init2(t, x.precision());
  x.upper(t);
  double d = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return d;
}

inline double down(const Mag& m) { return mpfr_get_d(m.get(), MPFR_RNDD); }
inline double up(const Mag& m) { return mpfr_get_d(m.get(), MPFR_RNDU); }

/// log2 of a Mag, -inf for zero.
inline double log2_of(const Mag& m) {
  if (m.is_zero()) return -INFINITY;
  if (!m.is_finite()) return INFINITY;
  long e = 0;
  double d = mpfr_get_d_2exp(&e, m.get(), MPFR_RNDU);
  return std::log2(d) + static_cast<double>(e);
}

/// Upper bound of e^x for a double x.
inline Mag exp_up(double x) {
  Mag m;
  mpfr_set_d(m.raw(), x, MPFR_RNDU);
  mpfr_exp(m.raw(), m.get(), MPFR_RNDU);
  return m;
}

/// Lower bound of a positive double, as a Mag usable as a divisor.
inline Mag mag_down(double x) { return Mag(x > 0 ? x * (1.0 - 0x1p-50) : 0.0); }

/// Upper bound of a positive double computed with round-to-nearest.
inline Mag mag_up(double x) { return Mag(x * (1.0 + 0x1p-50)); }

inline void add_error(BallComplex& z, const Mag& e) {
  z.real().add_error(e);
  z.imag().add_error(e);
}

inline BallComplex round_to(const BallComplex& z, const PrecisionContext& ctx) {
  return z.with_precision(ctx.working_bits);
}

/// Running rising factorial (s)_n = s(s+1)...(s+n-1) and optionally its
/// s-derivative.  Balls wider than half the working precision are
/// accumulated as a sum of logarithms: chained rectangular products would
/// otherwise inflate the radius geometrically.
class RisingProduct {
 public:
  RisingProduct(const BallComplex& s, Precision wp, bool with_derivative);

  /// Multiplies in the next factor s + n.
  void extend();
  unsigned length() const { return n_; }
  BallComplex value() const;
  BallComplex derivative() const;
  /// True if some factor so far contains zero.
  bool hit_zero() const { return hit_zero_; }
  bool wide() const { return wide_; }
  /// Wide mode: value() = direct_part() * exp(log_part()).
  const BallComplex& direct_part() const { return prod_; }
  const BallComplex& log_part() const { return log_sum_; }

 private:
  BallComplex s_;
  Precision wp_;
  bool with_derivative_;
  bool wide_;
  unsigned n_ = 0;
  bool hit_zero_ = false;
  BallComplex prod_;      // whole product (point mode) or factors near the cut (wide mode)
  BallComplex dprod_;     // derivative of prod_
  BallComplex log_sum_;   // wide mode
  BallComplex harmonic_;  // wide mode: sum 1/(s+i)
};

/// Stirling series for log Gamma(w) with the remainder folded into the
/// radius.  Requires Re(w) > 0 on the whole ball.
BallComplex stirling_log_gamma(const BallComplex& w, Precision wp);

/// Stirling series for psi(w), same requirement.
BallComplex stirling_digamma(const BallComplex& w, Precision wp);

/// Shift m with Re(s + m) large enough for the Stirling series at wp bits.
unsigned stirling_shift(const BallComplex& s, Precision wp);

}  // namespace licrit::sf::detail

#endif  // LICRIT_SF_INTERNAL_HPP
