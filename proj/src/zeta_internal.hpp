#ifndef LICRIT_ZETA_INTERNAL_HPP
#define LICRIT_ZETA_INTERNAL_HPP

#include "licrit/ball.hpp"

namespace licrit::sf::detail {

/// Analytic part of the Euler-Maclaurin formula
///   zeta(s) = P(s) + N^(1-s)/(s-1)
/// with P and P' (when requested) enclosing their remainders.
struct EmParts {
  BallComplex value;          // P(s)
  BallComplex derivative;     // P'(s), zero ball unless requested
  BallComplex n_one_minus_s;  // N^(1-s)
  BallReal log_n;
  BallComplex s;              // argument at the working precision
  Precision bits;
};

EmParts euler_maclaurin(const BallComplex& s, Precision bits, bool with_derivative);

}  // namespace licrit::sf::detail

#endif  // LICRIT_ZETA_INTERNAL_HPP
