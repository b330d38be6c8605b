#include "licrit/differences.hpp"

#include <cmath>
#include <stdexcept>

namespace licrit::diff {

BallReal central_difference(const RealFunction& f, const BallReal& x, unsigned k, double h,
                            const DiscBound& disc) {
  if (k == 0) return f(x);
  if (!(h > 0)) throw std::invalid_argument("difference step must be positive");
  const double q = k * h / (2.0 * disc.radius);
  if (!(q < 0.5)) throw std::invalid_argument("difference stencil too wide for the bounding disc");
  const Precision wp = x.precision();

  BallReal sum(wp);
  long binom = 1;  // C(k, j)
  for (unsigned j = 0; j <= k; ++j) {
    BallReal offset = BallReal(h, wp) * (BallReal(static_cast<long>(k) - 2 * static_cast<long>(j), wp) / 2L);
    BallReal v = f(x + offset);
    BallReal term = v * binom;
    if (j % 2) sum -= term;
    else sum += term;
    binom = binom * static_cast<long>(k - j) / static_cast<long>(j + 1);
  }
  BallReal hk = pow_ui(BallReal(h, wp), k);
  BallReal out = sum / hk;

  // 2^k B h^-k q^(k+2) / (1 - q) = 2^k B q^2 (k/2R)^k / (1 - q)
  Mag err = disc.bound * Mag::pow2(static_cast<long>(k));
  Mag qm;
  mpfr_set_d(qm.raw(), q, MPFR_RNDU);
  mpfr_mul_d(qm.raw(), qm.get(), 1.0 + 1e-15, MPFR_RNDU);  // q was rounded in double
  Mag ratio;
  mpfr_set_d(ratio.raw(), k / (2.0 * disc.radius), MPFR_RNDU);
  mpfr_mul_d(ratio.raw(), ratio.get(), 1.0 + 1e-15, MPFR_RNDU);
  err = err * qm * qm * ratio.pow_ui(k) / Mag((1.0 - q) * (1.0 - 1e-12));
  out.add_error(err);
  return out;
}

double default_step(unsigned k, Precision bits) {
  if (k == 0) return 0.0;
  return std::exp2(-std::floor(static_cast<double>(bits) / (k + 2)));
}

double balanced_step(unsigned k, Precision bits, const DiscBound& disc, double magnitude) {
  if (k == 0) return 0.0;
  // rounding ~ 2^k eps h^-k against truncation ~ 2^k B (k/2R)^(k+2) h^2
  const double l2eps = -static_cast<double>(bits) + std::log2(std::max(magnitude, 1e-300));
  const double l2b = disc.bound.is_zero() ? -1000.0 : std::log2(disc.bound.to_double());
  const double l2c = l2b + (k + 2) * std::log2(k / (2.0 * disc.radius));
  double l2h = std::floor((l2eps - l2c) / (k + 2));
  // keep q = k h / (2R) <= 1/4
  const double l2max = std::floor(std::log2(disc.radius / (2.0 * k)));
  return std::exp2(std::min(l2h, l2max));
}

}  // namespace licrit::diff
