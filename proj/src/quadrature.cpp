#include "licrit/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace licrit::quad {

ClenshawCurtisRule::ClenshawCurtisRule(unsigned n, Precision bits) : n_(n), bits_(bits) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("Clenshaw-Curtis degree must be even");
  const Precision wp = bits + 16;
  BallReal pi = constant(Constant::pi, wp);
  // cos(pi m / n) for m = 0 .. 2n-1
  std::vector<BallReal> c(2 * n, BallReal(wp));
  for (unsigned m = 0; m < 2 * n; ++m) c[m] = cos(pi * BallReal::rational(m, n, wp));

  nodes_.reserve(n + 1);
  for (unsigned k = 0; k <= n; ++k) nodes_.push_back(c[k].with_precision(bits));

  weights_.reserve(n + 1);
  const unsigned half = n / 2;
  std::vector<BallReal> coef(half + 1, BallReal(wp));
  for (unsigned j = 1; j <= half; ++j) {
    long b = (j == half) ? 1 : 2;
    coef[j] = BallReal::rational(b, 4UL * j * j - 1, wp);
  }
  for (unsigned k = 0; k <= n; ++k) {
    BallReal s(1L, wp);
    for (unsigned j = 1; j <= half; ++j) {
      unsigned m = static_cast<unsigned>((2ULL * j * k) % (2ULL * n));
      s -= coef[j] * c[m];
    }
    long ck = (k == 0 || k == n) ? 1 : 2;
    weights_.push_back((s * ck / static_cast<long>(n)).with_precision(bits));
  }
}

Mag ellipse_bound(const Integrand& f, double a, double b, double rho, unsigned boxes) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double ax = h * 0.5 * (rho + 1.0 / rho);
  const double ay = h * 0.5 * (rho - 1.0 / rho);
  const double dtheta = 2.0 * M_PI / boxes;
  // Half the arc length of one piece, padded for the double-precision centre.
  const double r = ax * dtheta * 0.5 * 1.0001 + 1e-12 * (std::fabs(c) + ax);
  Mag bound;
  for (unsigned j = 0; j < boxes; ++j) {
    double theta = (j + 0.5) * dtheta;
    BallReal x(c + ax * std::cos(theta), 64);
    BallReal y(ay * std::sin(theta), 64);
    x.add_error(Mag(r));
    y.add_error(Mag(r));
    BallComplex v = f(BallComplex(x, y));
    if (!v.is_finite()) return Mag::infinity();
    bound = max(bound, v.abs_upper());
  }
  return bound;
}

unsigned degree_for(const Mag& bound, double half_length, double rho, Precision bits) {
  if (!bound.is_finite()) return 0;
  double log2_m = bound.is_zero() ? -1e9 : static_cast<double>(bound.exponent());
  double log2_pref = std::log2(8.0 * half_length / (rho - 1.0)) + log2_m;
  double need = (log2_pref + static_cast<double>(bits) + 4.0) / std::log2(rho);
  unsigned n = need < 2 ? 2 : static_cast<unsigned>(std::ceil(need));
  n = (n + 15) / 16 * 16;  // share rules between segments
  return n;
}

SegmentIntegrator::SegmentIntegrator(Precision bits, SegmentOptions options)
    : bits_(bits), options_(options) {}

const ClenshawCurtisRule& SegmentIntegrator::rule(unsigned n) {
  auto it = rules_.find(n);
  if (it == rules_.end()) it = rules_.emplace(n, ClenshawCurtisRule(n, bits_)).first;
  return it->second;
}

BallComplex SegmentIntegrator::integrate_segment(const Integrand& f, double a, double b) {
  const double rho = options_.rho;
  Mag m = ellipse_bound(f, a, b, rho, options_.boundary_boxes);
  if (!m.is_finite()) throw DomainErrorBall("integrand unbounded on the quadrature ellipse");
  const double h_d = 0.5 * (b - a);
  unsigned n = degree_for(m, h_d, rho, bits_);
  if (n > options_.max_degree) n = options_.max_degree;
  const ClenshawCurtisRule& q = rule(n);

  BallReal lo(a, bits_), hi(b, bits_);
  BallReal c = (lo + hi) / 2L;
  BallReal h = (hi - lo) / 2L;
  BallComplex sum(bits_);
  for (unsigned k = 0; k <= n; ++k) {
    BallComplex x(c + h * q.nodes()[k]);
    sum += f(x) * q.weights()[k];
  }
  sum = sum * h;

  // Truncation: h * 8 M rho^-n / (rho - 1)
  Mag err = Mag(h_d) * Mag(8.0) * m;
  Mag rho_n;
  mpfr_set_d(rho_n.raw(), rho, MPFR_RNDD);
  mpfr_pow_ui(rho_n.raw(), rho_n.get(), n, MPFR_RNDD);
  Mag denom;
  mpfr_mul_d(denom.raw(), rho_n.get(), rho - 1.0, MPFR_RNDD);
  err = err / denom;
  sum.real().add_error(err);
  sum.imag().add_error(err);
  return sum;
}

BallComplex SegmentIntegrator::integrate(const Integrand& f, const std::vector<double>& breakpoints) {
  BallComplex total(bits_);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    total += integrate_segment(f, breakpoints[i], breakpoints[i + 1]);
  return total;
}

}  // namespace licrit::quad
