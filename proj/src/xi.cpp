#include <cmath>

#include "licrit/quadrature.hpp"
#include "licrit/special_functions.hpp"
#include "sf_internal.hpp"
#include "zeta_internal.hpp"

namespace licrit::sf {

namespace {

using detail::guarded;

// Gamma(1 + s/2) has poles at s = -2, -4, ...; near them the pole-free
// product F * Gamma * pi^(-s/2) is replaced by its reflection s -> 1 - s.
bool near_trivial_zero(const BallComplex& s) {
  double re = s.real().mid_double();
  if (re > -1.0) return false;
  double k = std::round(-re / 2.0);
  if (k < 1) return false;
  double dist = std::hypot(re + 2.0 * k, s.imag().mid_double());
  return dist < 0.5 + detail::up(s.rad());
}

BallComplex one_minus(const BallComplex& s) {
  return BallComplex(BallReal(1L, s.precision())) - s;
}

struct Factors {
  BallComplex gamma_half;  // Gamma(1 + s/2)
  BallComplex pi_pow;      // pi^(-s/2)
  BallComplex half_s;      // s/2
};

Factors factors(const BallComplex& s, Precision wp) {
  PrecisionContext c = PrecisionContext().with_bits(wp);
  BallComplex half_s = s * BallReal::rational(1, 2, wp);
  BallComplex g = gamma(BallComplex(BallReal(1L, wp)) + half_s, c).with_precision(wp);
  BallComplex p = exp(-half_s * constant(Constant::log_pi, wp));
  return {g, p, half_s};
}

}  // namespace

BallComplex xi(const BallComplex& s_in, const PrecisionContext& ctx) {
  if (near_trivial_zero(s_in)) return xi(one_minus(s_in), ctx);
  if (!(s_in.rad() <= Mag::pow2(-20))) {
    // Wide balls: evaluate on the right half, where the series behave.
    if (s_in.real().mid_double() < 0.5) return xi(one_minus(s_in), ctx);
    // Mean value form: xi(S) lies in xi(m) + xi'(S) (S - m) since S is convex.
    BallComplex m(s_in.real().midpoint_ball(), s_in.imag().midpoint_ball());
    return xi(m, ctx) + xi_derivative(s_in, ctx) * (s_in - m);
  }
  const Precision wp = guarded(ctx);
  BallComplex s = s_in.with_precision(wp);
  detail::EmParts em = detail::euler_maclaurin(s, wp, false);
  BallComplex f = (em.s - BallComplex(BallReal(1L, em.bits))) * em.value + em.n_one_minus_s;
  Factors fa = factors(s, wp);
  return detail::round_to(f * fa.gamma_half * fa.pi_pow, ctx);
}

BallComplex xi_derivative(const BallComplex& s_in, const PrecisionContext& ctx) {
  if (near_trivial_zero(s_in)) return -xi_derivative(one_minus(s_in), ctx);
  if (!(s_in.rad() <= Mag::pow2(-20)) && s_in.real().mid_double() < 0.5)
    return -xi_derivative(one_minus(s_in), ctx);
  const Precision wp = guarded(ctx);
  BallComplex s = s_in.with_precision(wp);
  PrecisionContext c = ctx.with_bits(wp);
  ZetaJet f = zeta_times_s_minus_one(s, c);
  Factors fa = factors(s, wp);
  BallComplex psi = digamma(BallComplex(BallReal(1L, wp)) + fa.half_s, c);
  BallReal half = BallReal::rational(1, 2, wp);
  BallComplex logd = (psi - BallComplex(constant(Constant::log_pi, wp))) * half;
  return detail::round_to(fa.gamma_half * fa.pi_pow * (f.derivative + f.value * logd), ctx);
}

BallComplex xi_log_derivative(const BallComplex& s_in, const PrecisionContext& ctx) {
  if (near_trivial_zero(s_in)) return -xi_log_derivative(one_minus(s_in), ctx);
  if (!(s_in.rad() <= Mag::pow2(-20)) && s_in.real().mid_double() < 0.5)
    return -xi_log_derivative(one_minus(s_in), ctx);
  const Precision wp = guarded(ctx);
  BallComplex s = s_in.with_precision(wp);
  PrecisionContext c = ctx.with_bits(wp);
  ZetaJet f = zeta_times_s_minus_one(s, c);
  if (f.value.contains_zero()) throw NearZeroError("xi enclosure contains zero");
  BallReal half = BallReal::rational(1, 2, wp);
  BallComplex psi = digamma(BallComplex(BallReal(1L, wp)) + s * half, c);
  BallComplex res = (psi - BallComplex(constant(Constant::log_pi, wp))) * half + f.derivative / f.value;
  return detail::round_to(res, ctx);
}

namespace {

BallComplex critical_point(const BallComplex& z) {
  // 1/2 + i z
  Precision p = z.precision();
  return BallComplex(BallReal::rational(1, 2, p) - z.imag(), z.real());
}

}  // namespace

BallComplex big_xi(const BallComplex& z, const PrecisionContext& ctx) {
  return xi(critical_point(z.with_precision(guarded(ctx))), ctx);
}

BallReal big_xi_real(const BallReal& z, const PrecisionContext& ctx) {
  return big_xi(BallComplex(z), ctx).real();
}

BallReal big_xi_derivative_real(const BallReal& z, const PrecisionContext& ctx) {
  // d/dz xi(1/2 + iz) = i xi'(1/2 + iz); its real part is -Im xi'
  BallComplex d = xi_derivative(critical_point(BallComplex(z.with_precision(guarded(ctx)))), ctx);
  return -d.imag();
}

// ---------------------------------------------------------------------------

BallComplex omega(const BallComplex& x_in, const PrecisionContext& ctx) {
  const Precision wp = x_in.precision() > ctx.working_bits ? x_in.precision() : ctx.working_bits;
  BallComplex x = x_in.with_precision(wp);
  const double x0 = detail::lower_d(x.real());
  if (!(x0 > 0)) throw DomainErrorBall("omega needs Re(x) > 0");
  // Smallest K with exp(-(K+1)^2 pi x0) <= 2^-(wp+10); tail
  // sum_{n>K} e^{-n^2 pi x0} <= e^{-(K+1)^2 pi x0} / (1 - e^{-(2K+3) pi x0}).
  const double need = (static_cast<double>(wp) + 10.0) * std::log(2.0) / (M_PI * x0);
  unsigned K = static_cast<unsigned>(std::ceil(std::sqrt(need)));
  K = K > 0 ? K : 1;
  BallComplex mpx = -(x * constant(Constant::pi, wp));
  BallComplex sum(wp);
  for (unsigned n = 1; n <= K; ++n) sum += exp(mpx * BallReal(static_cast<long>(n) * n, wp));
  const double k1 = K + 1.0;
  Mag first = detail::exp_up(-k1 * k1 * M_PI * x0 * (1.0 - 1e-12));
  double q = std::exp(-(2.0 * K + 3.0) * M_PI * x0) * (1.0 + 1e-12);
  Mag tail = first / detail::mag_down(1.0 - q);
  detail::add_error(sum, tail);
  return sum;
}

BallComplex xi_via_integral(const BallComplex& s_in, const PrecisionContext& ctx) {
  const Precision wp = guarded(ctx);
  BallComplex s = s_in.with_precision(wp);
  BallComplex one(BallReal(1L, wp));
  BallReal half = BallReal::rational(1, 2, wp);
  BallComplex prefactor = s * (s - one);

  // Integrand (x^(s/2) + x^((1-s)/2)) omega(x) / x
  const BallComplex a = s * half;
  const BallComplex b = (one - s) * half;
  quad::Integrand f = [&](const BallComplex& x) {
    Precision p = x.precision();
    PrecisionContext c = ctx.with_bits(p);
    BallComplex lx = log(x);
    BallComplex pw = exp(a.with_precision(p) * lx) + exp(b.with_precision(p) * lx);
    return pw * omega(x, c) / x;
  };

  // Tail beyond X: integrand <= 2.0002 x^(c-1) e^(-pi x) with
  // c = max(sigma/2, (1-sigma)/2); int_X^inf x^a e^(-pi x) <= X^a e^(-pi X) / (pi - a/X).
  const double sig_lo = detail::lower_d(s.real());
  const double sig_hi = detail::upper_d(s.real());
  const double cexp = std::max(sig_hi / 2.0, (1.0 - sig_lo) / 2.0);
  const double aexp = cexp - 1.0;
  auto log_tail = [&](double X) {
    double den = M_PI - std::max(aexp, 0.0) / X;
    return std::log(2.0002) + aexp * std::log(X) - M_PI * X - std::log(den);
  };
  double X = std::max(2.0, std::ceil(2.0 * std::max(aexp, 0.0) / M_PI) + 1.0);
  while (log_tail(X) > -(static_cast<double>(wp) + 10.0) * std::log(2.0)) X += 1.0;

  std::vector<double> breaks;
  for (double x = 1.0; x <= X; x += 1.0) breaks.push_back(x);
  quad::SegmentIntegrator integ(wp);
  BallComplex integral = integ.integrate(f, breaks);
  detail::add_error(integral, detail::exp_up(log_tail(X) + 1e-9));

  return detail::round_to((one + prefactor * integral) * half, ctx);
}

}  // namespace licrit::sf
