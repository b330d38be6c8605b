#include <doctest.h>

#include <cmath>

#include "licrit/special_functions.hpp"

using namespace licrit;
using namespace licrit::sf;

namespace {

const PrecisionContext ctx;

BallComplex c(double re, double im = 0.0) { return BallComplex(re, im, 256); }
BallReal dec(const char* text, Precision bits = 256) { return BallReal::from_string(text, bits); }

bool near(const BallReal& x, const char* value, double tol) {
  return abs(x - dec(value, x.precision())).abs_upper() <= Mag(tol);
}

BallComplex half() { return BallComplex(BallReal::rational(1, 2, 256), BallReal(256)); }

}  // namespace

TEST_CASE("gamma at integers and one half") {
  CHECK(gamma(c(1), ctx).real().contains(1.0));
  CHECK(gamma(c(5), ctx).real().contains(24.0));
  CHECK(gamma(c(5), ctx).imag().contains(0.0));
  BallComplex g = gamma(half(), ctx);
  CHECK(g.real().overlaps(sqrt(constant(Constant::pi, 512))));
  CHECK(near(g.real(), "1.77245385", 1e-8));
}

TEST_CASE("gamma poles") {
  CHECK_THROWS_AS(gamma(c(0), ctx), PoleError);
  CHECK_THROWS_AS(gamma(c(-3), ctx), PoleError);
  BallComplex near_pole = c(-1);
  near_pole.real().add_error(Mag(1e-3));
  CHECK_THROWS_AS(gamma(near_pole, ctx), PoleError);
}

TEST_CASE("gamma by two routes") {
  PrecisionContext low(128, Mag(), 4096);
  BallComplex s = c(2.5, 1.0);
  CHECK(gamma(s, low).overlaps(gamma_via_split(s, low)));
  CHECK(digamma(c(1), ctx).real().overlaps(-constant(Constant::euler_gamma, 256)));
  CHECK(exp(log_gamma(c(3.5, -2.0), ctx)).overlaps(gamma(c(3.5, -2.0), ctx)));
}

TEST_CASE("zeta values") {
  BallReal pi = constant(Constant::pi, 512);
  BallComplex z2 = zeta(c(2), ctx);
  CHECK(z2.real().overlaps(pi * pi / 6L));
  CHECK(near(z2.real(), "1.64493406", 1e-8));
  CHECK(zeta(c(0), ctx).real().contains(-0.5));
  CHECK(zeta(c(-1), ctx).real().contains(BallReal::rational(-1, 12, 512)));
  CHECK(zeta(c(2), ctx, ZetaRoute::alternating).overlaps(z2));
  CHECK(zeta(c(2.5, 3.0), ctx, ZetaRoute::alternating).overlaps(zeta(c(2.5, 3.0), ctx)));
  PrecisionContext low(64, Mag(), 4096);
  CHECK(zeta(c(4), low, ZetaRoute::dirichlet).overlaps(zeta(c(4), low)));
}

TEST_CASE("zeta pole") {
  CHECK_THROWS_AS(zeta(c(1), ctx), PoleError);
  BallComplex s = c(1.0, 0.0);
  s.imag().add_error(Mag(1e-5));
  CHECK_THROWS_AS(zeta(s, ctx), PoleError);
  CHECK_THROWS_AS(zeta_derivative(c(1), ctx), PoleError);
}

TEST_CASE("zeta derivative") {
  BallReal two_pi = constant(Constant::pi, 512) * 2L;
  BallComplex d0 = zeta_derivative(c(0), ctx);
  CHECK(d0.real().overlaps(-log(two_pi) / 2L));
  CHECK(near(d0.real(), "-0.91893853", 1e-8));
  BallComplex d2 = zeta_derivative(c(2), ctx);
  CHECK(near(d2.real(), "-0.93754825431584375", 1e-16));
  // against a central difference at doubled precision, h = 2^-60
  PrecisionContext hi(512, Mag(), 4096);
  BallComplex h(std::ldexp(1.0, -60), 0.0, 512);
  BallComplex two(2, 0, 512);
  BallComplex fd = (zeta(two + h, hi) - zeta(two - h, hi)) / (h + h);
  CHECK(abs(fd.real() - d2.real()).abs_upper() <= Mag(1e-30));
}

TEST_CASE("xi special values") {
  BallComplex x0 = xi(c(0), ctx);
  CHECK(x0.real().contains(0.5));
  CHECK(x0.imag().contains(0.0));
  CHECK(x0.rad() <= Mag::from_string("1e-20"));
  CHECK(xi(c(1), ctx).real().contains(0.5));
  // the limit s -> 0 agrees with a nearby point
  PrecisionContext hi(512, Mag(), 4096);
  BallComplex tiny(BallReal::from_string("1e-30", 512), BallReal(512));
  CHECK(abs(xi(tiny, hi).real() - BallReal::rational(1, 2, 512)).abs_upper() <= Mag(1e-29));
  BallComplex xh = xi(half(), ctx);
  CHECK(near(xh.real(), "0.4971207782", 1e-9));
  CHECK(xh.overlaps(xi_via_integral(half(), ctx)));
}

TEST_CASE("functional equation") {
  for (auto [re, im] : {std::pair{0.3, 2.0}, {-2.5, 7.0}, {3.0, -11.0}, {0.9, 0.1}}) {
    BallComplex s = c(re, im);
    BallComplex one_minus = BallComplex(1, 0, 256) - s;
    CHECK(xi(s, ctx).overlaps(xi(one_minus, ctx)));
  }
}

TEST_CASE("xi by the theta integral") {
  CHECK(xi_via_integral(c(0), ctx).real().contains(0.5));
  CHECK(xi_via_integral(c(2), ctx).overlaps(xi(c(2), ctx)));
  CHECK(xi_via_integral(c(0.5, 14.0), ctx).overlaps(xi(c(0.5, 14.0), ctx)));
  BallComplex x = c(1.5, 0.5);
  CHECK(omega(x, ctx).overlaps(omega(x.conj(), ctx).conj()));
}

TEST_CASE("xi derivative") {
  CHECK(xi_derivative(half(), ctx).real().contains(0.0));
  PrecisionContext hi(512, Mag(), 4096);
  BallComplex h(std::ldexp(1.0, -60), 0.0, 512), s(2, 1, 512);
  BallComplex fd = (xi(s + h, hi) - xi(s - h, hi)) / (h + h);
  BallComplex d = xi_derivative(c(2, 1), ctx);
  CHECK(abs(fd.real() - d.real()).abs_upper() <= Mag(1e-30));
  CHECK(abs(fd.imag() - d.imag()).abs_upper() <= Mag(1e-30));
}

TEST_CASE("phi is positive, even and decays fast") {
  CHECK(phi(BallReal(0L, 256), ctx).is_positive());
  BallReal t = dec("0.7");
  CHECK(phi(t, ctx).overlaps(phi(-t, ctx)));
  // the literal series is the t <= 0 orientation
  CHECK(phi_printed(-t, ctx).overlaps(phi(t, ctx)));
  BallReal p3 = phi(BallReal(3L, 256), ctx);
  CHECK(p3.is_positive());
  CHECK(Mag::abs_of(p3.mid()) < Mag(1e-10));
}

TEST_CASE("Xi values") {
  BallComplex b0 = big_xi(c(0), ctx);
  CHECK(b0.overlaps(xi(half(), ctx)));
  CHECK(near(b0.real(), "0.49712078", 1e-8));
  // the input 14.134725 carries its truncation error 5e-7, which covers z_1
  BallReal z1 = dec("14.134725");
  z1.add_error(Mag::from_string("5e-7"));
  CHECK(big_xi(BallComplex(z1), ctx).real().contains_zero());
  BallComplex i_half(BallReal(256), BallReal::rational(1, 2, 256));
  CHECK(big_xi(i_half, ctx).real().contains(0.5));
  CHECK(big_xi_real(dec("14.134725141734693790457251983562"), ctx).abs_upper() <= Mag(1e-25));
  for (double z : {3.0, 10.0}) CHECK(big_xi(c(0, z), ctx).real().is_positive());
}

TEST_CASE("Xi by its Fourier integral") {
  CHECK(big_xi_fourier(BallReal(0L, 256), ctx).overlaps(big_xi(c(0), ctx).real()));
  BallReal f5 = big_xi_fourier(BallReal(5L, 256), ctx);
  CHECK(f5.is_positive());
  CHECK(f5.overlaps(big_xi(c(5), ctx).real()));
  BallReal f20 = big_xi_fourier(BallReal(20L, 256), ctx);
  CHECK(f20.is_negative());
  CHECK(f20.overlaps(big_xi(c(20), ctx).real()));
  BallReal f29 = big_xi_fourier(dec("29.5"), ctx);
  CHECK(f29.overlaps(big_xi_real(dec("29.5"), ctx)));
}

TEST_CASE("moments") {
  CHECK(moment(0, ctx).overlaps(big_xi(c(0), ctx).real()));
  CHECK(moment(1, ctx).is_positive());
  CHECK(moment(5, ctx).is_positive());
  MomentSeries ms = xi_moment_series(BallReal(1L, 256), 30, ctx);
  CHECK(ms.tail.is_finite());
  CHECK(ms.value().overlaps(big_xi(c(1), ctx).real()));
}

TEST_CASE("logarithmic derivative of xi") {
  CHECK(xi_log_derivative(half(), ctx).real().contains(0.0));
  BallComplex s = c(0.8);
  BallComplex sum = xi_log_derivative(s, ctx) + xi_log_derivative(BallComplex(1, 0, 256) - s, ctx);
  CHECK(sum.real().contains(0.0));
  CHECK(sum.imag().contains(0.0));
  // central difference of log xi at 3/2, h = 2^-60, at 512 bits
  PrecisionContext hi(512, Mag(), 4096);
  BallReal h(std::ldexp(1.0, -60), 512), s0(1.5, 512);
  BallReal fd = (log(xi(BallComplex(s0 + h), hi).real()) - log(xi(BallComplex(s0 - h), hi).real())) / (h + h);
  BallReal l = xi_log_derivative(c(1.5), ctx).real();
  CHECK(abs(fd - l).abs_upper() <= Mag(1e-30));
  CHECK(xi_log_derivative(c(2, 5), ctx).overlaps(xi_derivative(c(2, 5), ctx) / xi(c(2, 5), ctx)));
}

TEST_CASE("logarithmic derivative at a zero") {
  BallComplex rho(BallReal::rational(1, 2, 256), dec("14.134725141734693790457251983562"));
  rho.imag().add_error(Mag(1e-20));
  CHECK_THROWS_AS(xi_log_derivative(rho, ctx), NearZeroError);
}
