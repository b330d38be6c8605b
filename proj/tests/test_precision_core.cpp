#include <doctest.h>

#include <cmath>
#include <random>

#include "licrit/ball.hpp"
#include "licrit/certify.hpp"
#include "licrit/special_functions.hpp"

using namespace licrit;

namespace {

BallReal dec(const char* text, Precision bits = 256) { return BallReal::from_string(text, bits); }

// |mid(x) - value| <= tol
bool near(const BallReal& x, const char* value, double tol) {
  BallReal d = abs(x - dec(value, x.precision()));
  return d.abs_upper() <= Mag(tol);
}

// A point of `a` (as an exact ball at higher precision): mid + frac * rad.
BallReal point_in(const BallReal& a, double frac, Precision bits) {
  BallReal p = a.midpoint_ball().with_precision(bits);
  BallReal r = BallReal::with_radius(a.rad().get(), Mag(), bits);
  return p + r * BallReal(frac, bits);
}

}  // namespace

TEST_CASE("context invariants") {
  PrecisionContext ctx;
  CHECK_NOTHROW(ctx.validate());
  CHECK(ctx.working_bits == 256);
  CHECK_THROWS_AS(PrecisionContext(32, Mag(), 1024).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PrecisionContext(512, Mag(), 256).validate(), std::invalid_argument);
  CHECK_THROWS_AS(Mag::from_string("-1e-5"), std::invalid_argument);
  CHECK_THROWS_AS(Mag::from_string("abc"), std::invalid_argument);
}

TEST_CASE("exact integer addition") {
  BallReal s = BallReal(1L, 256) + BallReal(2L, 256);
  CHECK(s.contains(3.0));
  CHECK(s.rad() <= Mag::pow2(-60));
}

TEST_CASE("zero annihilates") {
  BallReal x = dec("1.2345");
  BallReal p = BallReal(0L, 256) * x;
  CHECK(p.is_exact());
  CHECK(p.contains(0.0));
}

TEST_CASE("one third") {
  BallReal q = BallReal(1L, 256) / BallReal(3L, 256);
  CHECK(Mag() < q.rad());
  CHECK(q.contains(BallReal::rational(1, 3, 600)));
}

TEST_CASE("division by a ball containing zero") {
  BallReal z = dec("0");
  z.add_error(Mag(1e-10));
  CHECK_THROWS_AS(BallReal(1L, 256) / z, DivisionByZeroBall);
  CHECK_THROWS_AS(BallComplex(1, 0, 256) / BallComplex(z, z), DivisionByZeroBall);
}

TEST_CASE("elementary functions at simple points") {
  CHECK(exp(BallReal(0L, 256)).contains(1.0));
  CHECK(sqrt(BallReal(4L, 256)).contains(2.0));
  BallReal e = exp(BallReal(1L, 256));
  CHECK(log(e).contains(BallReal(1L, 512)));
  CHECK(sin(BallReal(0L, 256)).contains(0.0));
  CHECK(cos(BallReal(0L, 256)).contains(1.0));
  CHECK(atan(BallReal(1L, 256)).contains((constant(Constant::pi, 600) / 4L)));
  CHECK(pow(BallReal(2L, 256), BallReal(10L, 256)).contains(1024.0));
}

TEST_CASE("domain violations") {
  CHECK_THROWS_AS(log(BallReal(-1L, 256)), DomainErrorBall);
  CHECK_THROWS_AS(sqrt(BallReal(-4L, 256)), DomainErrorBall);
  BallReal near_zero = dec("0");
  near_zero.add_error(Mag(1e-3));
  CHECK_THROWS_AS(log(near_zero), DomainErrorBall);
}

TEST_CASE("constants") {
  PrecisionContext ctx;
  CHECK(near(constant(Constant::pi, ctx), "3.14159265358979", 1e-14));
  CHECK(near(constant(Constant::euler_gamma, ctx), "0.57721566490153", 1e-14));
  CHECK(near(constant(Constant::log_pi, ctx), "1.14472988584940", 1e-14));
  // log_pi is the log of the certified pi
  CHECK(constant(Constant::log_pi, ctx).overlaps(log(constant(Constant::pi, 512))));
  CHECK(constant(Constant::pi, 256).contains(constant(Constant::pi, 1024)));
}

TEST_CASE("complex arithmetic is componentwise") {
  BallComplex a(1, 1, 256);
  BallComplex q = BallComplex(1, 0, 256) / a;  // (1 - i)/2
  CHECK(q.real().contains(0.5));
  CHECK(q.imag().contains(-0.5));
  BallComplex e = exp(BallComplex(BallReal(0L, 256), constant(Constant::pi, 256)));
  CHECK(e.real().contains(-1.0));
  CHECK(e.imag().contains(0.0));
  BallComplex l = log(BallComplex(0, 2, 256));
  CHECK(l.real().overlaps(log(BallReal(2L, 256))));
  CHECK(l.imag().overlaps(constant(Constant::pi, 256) / 2L));
}

TEST_CASE("containment under random sampling") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> mid(-4.0, 4.0);
  std::uniform_real_distribution<double> frac(-1.0, 1.0);
  const Precision bits = 128, hi = 512;
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    BallReal a(mid(rng), bits), b(mid(rng), bits);
    a.add_error(Mag(std::ldexp(1.0, -20 - trial % 30)));
    b.add_error(Mag(std::ldexp(1.0, -20 - trial % 17)));
    BallReal pa = point_in(a, frac(rng), hi), pb = point_in(b, frac(rng), hi);
    CHECK(a.contains(pa));
    CHECK((a + b).contains(pa + pb));
    CHECK((a - b).contains(pa - pb));
    CHECK((a * b).contains(pa * pb));
    if (!b.contains_zero()) CHECK((a / b).contains(pa / pb));
    CHECK(exp(a).contains(exp(pa)));
    CHECK(sin(a).contains(sin(pa)));
    CHECK(cos(a).contains(cos(pa)));
    CHECK(atan(a).contains(atan(pa)));
    CHECK(cosh(a).contains(cosh(pa)));
    CHECK(sinh(a).contains(sinh(pa)));
    if (a.is_positive()) {
      CHECK(log(a).contains(log(pa)));
      CHECK(sqrt(a).contains(sqrt(pa)));
    }
    BallComplex za(a, b), pz(pa, pb);
    CHECK(exp(za).contains(exp(pz)));
    CHECK(sqr(za).contains(sqr(pz)));
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("wide hyperbolic arguments stay finite") {
  BallReal x(4.0, 64);
  x.add_error(Mag(2.0));
  BallReal c = cosh(x), s = sinh(x);
  CHECK(c.is_finite());
  CHECK(c.contains(cosh(BallReal(5.5, 128))));
  CHECK(s.contains(sinh(BallReal(2.5, 128))));
}

TEST_CASE("certify reaches a target") {
  PrecisionContext ctx(64, Mag::from_string("1e-50"), 4096);
  auto r = certify([](const PrecisionContext& c) { return constant(Constant::pi, c); }, ctx);
  CHECK_FALSE(r.exhausted);
  CHECK(r.value.rad() <= Mag::from_string("1e-50"));
  CHECK(r.bits >= 128);
  CHECK(r.value.contains(constant(Constant::pi, 1024)));
}

TEST_CASE("certify flags a computation that cannot converge") {
  PrecisionContext ctx(64, Mag::from_string("1e-10"), 256);
  auto r = certify(
      [](const PrecisionContext& c) {
        BallReal x(1L, c.working_bits);
        x.add_error(Mag(1.0));
        return x;
      },
      ctx);
  CHECK(r.exhausted);
  CHECK(r.value.contains(1.0));
  CHECK(r.bits == 256);
}

TEST_CASE("certify treats a failing round as a reason to escalate") {
  PrecisionContext ctx(64, Mag::from_string("1e-30"), 1024);
  auto r = certify(
      [](const PrecisionContext& c) {
        if (c.working_bits < 256) throw DivisionByZeroBall("too coarse");
        return constant(Constant::pi, c);
      },
      ctx);
  CHECK(r.bits == 256);
  CHECK_FALSE(r.exhausted);
}

TEST_CASE("doubling precision does not widen a computation") {
  BallComplex s(0.3, 2.0, 256);
  for (Precision b : {128, 256, 512}) {
    PrecisionContext lo(b, Mag(), 32768), hi(2 * b, Mag(), 32768);
    Mag r1 = sf::xi(s, lo).rad();
    Mag r2 = sf::xi(s, hi).rad();
    CHECK(r2 <= r1 * Mag(1.01));
  }
}

TEST_CASE("identical inputs give bit-identical balls") {
  PrecisionContext ctx;
  BallComplex s(0.25, 7.5, 256);
  CHECK(sf::xi(s, ctx).identical(sf::xi(s, ctx)));
  CHECK(sf::zeta(s, ctx).identical(sf::zeta(s, ctx)));
}
