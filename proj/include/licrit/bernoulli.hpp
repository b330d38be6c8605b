#ifndef LICRIT_BERNOULLI_HPP
#define LICRIT_BERNOULLI_HPP

#include "licrit/ball.hpp"

namespace licrit {

/// Enclosure of the Bernoulli number B_{2k} (k >= 1) at `bits` precision.
/// The exact rationals are generated once from tangent numbers and shared
/// read-only afterwards.
BallReal bernoulli_b2k(unsigned k, Precision bits);

/// Upper bound of |B_{2k}| / (2k)!, i.e. 2 zeta(2k) / (2 pi)^{2k}.
Mag bernoulli_b2k_over_factorial_bound(unsigned k);

}  // namespace licrit

#endif  // LICRIT_BERNOULLI_HPP
