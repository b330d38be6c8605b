#ifndef LICRIT_CONTOUR_HPP
#define LICRIT_CONTOUR_HPP

// Taylor coefficients of an analytic function from a trapezoid rule on a
// circle.  With M nodes on |w| = r the computed coefficient is
// sum_{j>=0} c_{k+jM} r^{jM}; if |f| <= B on |w| = R > r then
// |c_m| <= B R^-m and the aliasing error is at most B R^-k q / (1 - q),
// q = (r/R)^M.  B comes from ball evaluation on boxes covering |w| = R.

#include <functional>
#include <vector>

#include "licrit/ball.hpp"

namespace licrit::contour {

/// f(w) evaluated at the precision of its argument.
using Function = std::function<BallComplex(const BallComplex&)>;

struct Options {
  double radius = 0.25;        // r
  double bound_radius = 0.5;   // R
  unsigned nodes = 0;          // 0: chosen from the precision and the bound
  unsigned boxes = 96;         // boxes covering |w| = R
  bool real_on_axis = false;   // f(conj w) = conj f(w): evaluate half the nodes
  bool track_branch = false;   // f is a logarithm; require continuity of Im f
};

struct TaylorCoefficients {
  std::vector<BallComplex> coefficients;  // c_0 .. c_K
  unsigned nodes = 0;
  Mag bound;                              // B
};

/// Upper bound of |f| on the circle |w| = R.
Mag circle_bound(const Function& f, double R, unsigned boxes);

/// Coefficients c_0..c_order of f about w = 0.  Throws PrecisionExhausted if
/// the bound cannot be established or the branch of a logarithm is ambiguous.
TaylorCoefficients taylor_coefficients(const Function& f, unsigned order, Precision bits,
                                       const Options& options = {});

}  // namespace licrit::contour

#endif  // LICRIT_CONTOUR_HPP
