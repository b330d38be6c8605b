#ifndef LICRIT_DIFFERENCES_HPP
#define LICRIT_DIFFERENCES_HPP

// Certified central differences of analytic functions.
//
// The k-th central difference with step h divided by h^k differs from the
// k-th derivative only through Taylor terms of order >= k + 2.  If |f| <= B
// on the disc of radius R about x, Cauchy's estimate |c_m| <= B R^-m gives
//
//     |delta_h^k f(x) / h^k - f^(k)(x)| <= 2^k B h^-k q^(k+2) / (1 - q),
//     q = k h / (2 R) < 1,
//
// which is added to the result.

#include <functional>

#include "licrit/ball.hpp"

namespace licrit::diff {

using RealFunction = std::function<BallReal(const BallReal&)>;

struct DiscBound {
  Mag bound;      // B
  double radius;  // R
};

/// Enclosure of f^(k)(x).  f is evaluated at x + (k/2 - j) h, j = 0..k.
BallReal central_difference(const RealFunction& f, const BallReal& x, unsigned k, double h,
                            const DiscBound& disc);

/// Power-of-two step balancing the truncation term against the loss of
/// about k log2(1/h) bits to cancellation.
double default_step(unsigned k, Precision bits);

/// Power-of-two step minimising the sum of the truncation bound and the
/// rounding error of values of size `magnitude` carried at `bits`.
double balanced_step(unsigned k, Precision bits, const DiscBound& disc, double magnitude);

}  // namespace licrit::diff

#endif  // LICRIT_DIFFERENCES_HPP
