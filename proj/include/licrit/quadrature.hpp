#ifndef LICRIT_QUADRATURE_HPP
#define LICRIT_QUADRATURE_HPP

// Certified quadrature of analytic integrands on real segments.
//
// Each segment [a, b] is integrated with an (n+1)-point Clenshaw-Curtis rule
// whose nodes and weights are computed in ball arithmetic.  If f is analytic
// inside the Bernstein ellipse E_rho of the segment with |f| <= M there, the
// Chebyshev coefficients of f obey |a_k| <= 2 M rho^-k; the rule integrates
// T_0..T_n exactly and |I(T_k)|, |Q(T_k)| <= 2, so
//
//     |I - Q| <= (b - a)/2 * 8 M rho^-n / (rho - 1).
//
// M is obtained by evaluating f on a ring of small boxes covering the ellipse
// boundary (maximum modulus principle).

#include <functional>
#include <map>
#include <vector>

#include "licrit/ball.hpp"

namespace licrit::quad {

/// Integrand: called with complex balls; must honour the precision of its
/// argument.
using Integrand = std::function<BallComplex(const BallComplex&)>;

class ClenshawCurtisRule {
 public:
  /// n must be even and >= 2; the rule has n + 1 nodes on [-1, 1].
  ClenshawCurtisRule(unsigned n, Precision bits);

  unsigned degree() const { return n_; }
  Precision precision() const { return bits_; }
  const std::vector<BallReal>& nodes() const { return nodes_; }
  const std::vector<BallReal>& weights() const { return weights_; }

 private:
  unsigned n_;
  Precision bits_;
  std::vector<BallReal> nodes_;
  std::vector<BallReal> weights_;
};

struct SegmentOptions {
  double rho = 3.0;             // Bernstein ellipse parameter
  unsigned boundary_boxes = 24; // boxes used to bound |f| on the ellipse
  unsigned max_degree = 2048;
};

/// Upper bound of |f| on the boundary of the Bernstein ellipse of [a, b].
Mag ellipse_bound(const Integrand& f, double a, double b, double rho, unsigned boxes);

/// Smallest even degree n with (b-a)/2 * 8 M rho^-n / (rho-1) <= 2^-bits * scale.
unsigned degree_for(const Mag& bound, double half_length, double rho, Precision bits);

/// Integrates f over consecutive segments given by `breakpoints` (increasing).
/// Rules are built once per degree and reused across segments.
class SegmentIntegrator {
 public:
  SegmentIntegrator(Precision bits, SegmentOptions options = {});

  BallComplex integrate(const Integrand& f, const std::vector<double>& breakpoints);
  BallComplex integrate_segment(const Integrand& f, double a, double b);

 private:
  const ClenshawCurtisRule& rule(unsigned n);

  Precision bits_;
  SegmentOptions options_;
  std::map<unsigned, ClenshawCurtisRule> rules_;
};

}  // namespace licrit::quad

#endif  // LICRIT_QUADRATURE_HPP
