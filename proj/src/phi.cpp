#include <cmath>
#include <functional>

#include "licrit/quadrature.hpp"
#include "licrit/special_functions.hpp"
#include "sf_internal.hpp"

namespace licrit::sf {

namespace {

using detail::guarded;

// 2^ceil(l2) as an upper bound for a quantity whose log2 is approximately l2.
Mag mag_from_log2(double l2) { return Mag::pow2(static_cast<long>(std::ceil(l2 + 1e-6))); }

}  // namespace

BallComplex phi_series(const BallComplex& u_in, const PrecisionContext& ctx) {
  const Precision wp = u_in.precision() > ctx.working_bits ? u_in.precision() : ctx.working_bits;
  BallComplex u = u_in.with_precision(wp);
  BallComplex e2 = exp(u + u);
  const double c0 = detail::lower_d(e2.real());
  if (!(c0 > 0)) throw DomainErrorBall("phi series needs Re(exp(2u)) > 0");
  BallComplex e9 = exp(u * BallReal::rational(9, 2, wp));
  BallComplex e5 = exp(u * BallReal::rational(5, 2, wp));
  const BallReal pi = constant(Constant::pi, wp);
  const BallReal a4 = pi * pi * 4L;
  const BallReal a2 = pi * 6L;

  const double m9 = detail::up(e9.abs_upper());
  const double m5 = detail::up(e5.abs_upper());
  const double l2e = 1.0 / std::log(2.0);
  // log2 of the bound for the n-th term, and of the tail ratio past K
  auto l2_term = [&](double n) {
    double amp = 4 * M_PI * M_PI * std::pow(n, 4) * m9 + 6 * M_PI * n * n * m5;
    return std::log2(amp) - M_PI * n * n * c0 * l2e;
  };
  auto ratio = [&](double k) {
    return std::pow((k + 2.0) / (k + 1.0), 4) * std::exp(-M_PI * (2.0 * k + 3.0) * c0);
  };
  unsigned K = 1;
  while (l2_term(K + 1.0) > -static_cast<double>(wp) - 10.0 || ratio(K) > 0.5) ++K;

  BallComplex mpe2 = -(e2 * pi);
  BallComplex sum(wp);
  for (unsigned n = 1; n <= K; ++n) {
    BallReal n2(static_cast<long>(n) * n, wp);
    BallComplex amp = e9 * (a4 * n2 * n2) - e5 * (a2 * n2);
    sum += amp * exp(mpe2 * n2);
  }
  Mag tail = mag_from_log2(l2_term(K + 1.0) + 1e-9) / detail::mag_down(1.0 - ratio(K) * (1 + 1e-12));
  detail::add_error(sum, tail);
  return sum;
}

BallReal phi(const BallReal& t, const PrecisionContext& ctx) {
  return detail::round_to(phi_series(BallComplex(abs(t)), ctx), ctx).real();
}

BallReal phi_printed(const BallReal& t, const PrecisionContext& ctx) {
  return detail::round_to(phi_series(BallComplex(-t), ctx), ctx).real();
}

namespace {

// 2 int_0^inf w(t) Phi(t) dt where |w(t)| <= t^p e^(c t) for real t >= 1.
// Beyond T, Phi(t) <= (4 pi^2 + 6 pi) * 1.001 * e^(9t/2 - pi e^(2t)), so the
// tail is at most 2 C T^p e^((9/2+c)T - pi e^(2T)) / (2 pi e^(2T) - 9/2 - c - p/T).
BallComplex phi_weighted_integral(const quad::Integrand& weight, double p, double c, Precision wp) {
  const double cst = (4 * M_PI * M_PI + 6 * M_PI) * 1.001;
  auto log_tail = [&](double T) {
    double den = 2 * M_PI * std::exp(2 * T) - 4.5 - c - p / T;
    if (den <= 1.0) return HUGE_VAL;
    return std::log(2 * cst) + p * std::log(T) + (4.5 + c) * T - M_PI * std::exp(2 * T) - std::log(den);
  };
  double T = 1.0;
  while (log_tail(T) > -(static_cast<double>(wp) + 8.0) * std::log(2.0)) T += 0.25;

  quad::Integrand f = [&](const BallComplex& t) {
    PrecisionContext ctx = PrecisionContext().with_bits(t.precision());
    return weight(t) * phi_series(t, ctx);
  };
  std::vector<double> breaks;
  for (double x = 0.0; x <= T + 1e-12; x += 0.25) breaks.push_back(x);
  quad::SegmentIntegrator integ(wp);
  BallComplex integral = integ.integrate(f, breaks);
  integral = integral + integral;
  detail::add_error(integral, detail::exp_up(log_tail(T) + 1e-9));
  return integral;
}

}  // namespace

BallReal big_xi_fourier(const BallReal& z_in, const PrecisionContext& ctx) {
  const Precision wp = guarded(ctx);
  BallReal z = z_in.with_precision(wp);
  quad::Integrand w = [&](const BallComplex& t) { return cos(t * z.with_precision(t.precision())); };
  return detail::round_to(phi_weighted_integral(w, 0.0, 0.0, wp), ctx).real();
}

BallReal moment(unsigned n, const PrecisionContext& ctx) {
  const Precision wp = guarded(ctx);
  quad::Integrand w = [n](const BallComplex& t) { return pow_ui(t, 2UL * n); };
  return detail::round_to(phi_weighted_integral(w, 2.0 * n, 0.0, wp), ctx).real();
}

BallReal MomentSeries::value() const {
  BallReal v = partial;
  v.add_error(tail);
  return v;
}

MomentSeries xi_moment_series(const BallReal& z_in, unsigned terms, const PrecisionContext& ctx) {
  const Precision wp = guarded(ctx);
  PrecisionContext c = ctx.with_bits(wp);
  BallReal z = z_in.with_precision(wp);
  BallReal mz2 = -(z * z);
  BallReal partial(wp);
  BallReal zpow(1L, wp);   // (-z^2)^n
  BallReal fact(1L, wp);   // (2n)!
  for (unsigned n = 0; n <= terms; ++n) {
    if (n > 0) {
      zpow *= mz2;
      fact = fact * static_cast<long>((2 * n - 1) * (2 * n));
    }
    partial += zpow * moment(n, c) / fact;
  }
  // sum_{n>N} |z|^2n m_2n/(2n)! <= |z|^(2N+2)/(2N+2)! * 2 int t^(2N+2) cosh(|z| t) Phi(t) dt
  const unsigned q = 2 * terms + 2;
  const double az = detail::up(z.abs_upper());
  BallReal abs_z = abs(z);
  quad::Integrand w = [&](const BallComplex& t) {
    Precision p = t.precision();
    BallComplex x = t * abs_z.with_precision(p);
    BallComplex ch = (exp(x) + exp(-x)) * BallReal::rational(1, 2, p);
    return pow_ui(t, q) * ch;
  };
  BallComplex J = phi_weighted_integral(w, q, az, wp);
  BallReal coef = pow_ui(abs_z, q);
  BallReal qf(1L, wp);
  for (unsigned i = 2; i <= q; ++i) qf = qf * static_cast<long>(i);
  coef = coef / qf;
  Mag tail = (coef * J.real()).abs_upper();
  return {partial.with_precision(ctx.working_bits), tail};
}

}  // namespace licrit::sf
