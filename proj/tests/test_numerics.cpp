#include <doctest.h>

#include <cmath>

#include "licrit/bernoulli.hpp"
#include "licrit/contour.hpp"
#include "licrit/differences.hpp"
#include "licrit/quadrature.hpp"

using namespace licrit;

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli_b2k(1, 256).contains(BallReal::rational(1, 6, 512)));
  CHECK(bernoulli_b2k(2, 256).contains(BallReal::rational(-1, 30, 512)));
  CHECK(bernoulli_b2k(6, 256).contains(BallReal::rational(-691, 2730, 512)));
  CHECK(bernoulli_b2k(10, 256).contains(BallReal::rational(-174611, 330, 512)));
  // |B_2k|/(2k)! bound holds for k = 10
  BallReal f(1L, 256);
  for (long i = 2; i <= 20; ++i) f = f * i;
  CHECK((abs(bernoulli_b2k(10, 256)) / f).abs_upper() <= bernoulli_b2k_over_factorial_bound(10));
}

TEST_CASE("Clenshaw-Curtis rule") {
  quad::ClenshawCurtisRule rule(16, 256);
  CHECK(rule.nodes().size() == 17);
  BallReal wsum(256), m4(256);
  for (std::size_t k = 0; k < rule.nodes().size(); ++k) {
    wsum += rule.weights()[k];
    m4 += rule.weights()[k] * pow_ui(rule.nodes()[k], 4);
  }
  CHECK(wsum.contains(2.0));
  CHECK(m4.contains(BallReal::rational(2, 5, 512)));
  CHECK_THROWS_AS(quad::ClenshawCurtisRule(5, 64), std::invalid_argument);
}

TEST_CASE("certified integrals") {
  quad::SegmentIntegrator integ(256);
  BallComplex e = integ.integrate([](const BallComplex& x) { return exp(x); }, {0.0, 0.5, 1.0});
  BallReal expected = exp(BallReal(1L, 512)) - BallReal(1L, 512);
  CHECK(e.real().contains(expected));
  CHECK(e.real().rad() <= Mag::from_string("1e-60"));
  // int_0^pi sin = 2 on segments with a non-dyadic end handled by the rule
  BallComplex s = integ.integrate([](const BallComplex& x) { return sin(x) * cos(x); }, {0.0, 1.0, 2.0});
  BallReal want = sqr(sin(BallReal(2L, 512))) / 2L;
  CHECK(s.real().contains(want));
}

TEST_CASE("Taylor coefficients from a circle") {
  contour::Options opt;
  opt.radius = 0.25;
  opt.bound_radius = 0.5;
  auto tc = contour::taylor_coefficients([](const BallComplex& w) { return exp(w); }, 12, 256, opt);
  BallReal fact(1L, 512);
  for (unsigned k = 0; k <= 12; ++k) {
    if (k > 0) fact = fact * static_cast<long>(k);
    CHECK(tc.coefficients[k].real().contains(BallReal(1L, 512) / fact));
    CHECK(tc.coefficients[k].imag().contains(0.0));
    CHECK(tc.coefficients[k].rad() <= Mag::from_string("1e-50"));
  }
}

TEST_CASE("logarithm coefficients with branch tracking") {
  contour::Options opt;
  opt.track_branch = true;
  opt.real_on_axis = true;
  // log(1 + w) = w - w^2/2 + w^3/3 - ...
  auto tc = contour::taylor_coefficients(
      [](const BallComplex& w) { return log(BallComplex(1, 0, w.precision()) + w); }, 6, 256, opt);
  for (long k = 1; k <= 6; ++k) {
    BallReal want = BallReal::rational(k % 2 ? 1 : -1, static_cast<unsigned long>(k), 512);
    CHECK(tc.coefficients[k].real().contains(want));
  }
}

TEST_CASE("central differences enclose derivatives") {
  diff::RealFunction f = [](const BallReal& x) { return exp(x); };
  diff::DiscBound disc{Mag(3.0), 1.0};  // |exp| <= e < 3 on |w - 0| <= 1
  for (unsigned k = 0; k <= 6; ++k) {
    double h = diff::balanced_step(k, 256, disc, 1.0);
    if (k > 0) CHECK(h == std::ldexp(1.0, std::ilogb(h)));
    BallReal d = diff::central_difference(f, BallReal(0L, 256), k, h, disc);
    CHECK(d.contains(1.0));
    // truncation against cancellation at 256 bits: about 1e-13 at k = 6
    CHECK(d.rad() <= Mag::from_string(k <= 4 ? "1e-20" : "1e-13"));
  }
  // sin''' = -cos
  diff::RealFunction s = [](const BallReal& x) { return sin(x); };
  diff::DiscBound sdisc{Mag(2.0), 1.0};  // |sin| <= cosh(1) < 2 there
  BallReal d3 = diff::central_difference(s, BallReal(0.5, 256), 3, diff::default_step(3, 256), sdisc);
  CHECK(d3.contains(-cos(BallReal(0.5, 512))));
}
