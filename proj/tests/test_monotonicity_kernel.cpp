#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "licrit/certify.hpp"
#include "licrit/kernel.hpp"
#include "licrit/quadrature.hpp"

using namespace licrit;
using namespace licrit::kernel;

namespace {

const PrecisionContext ctx;

BallReal dec(const char* text, Precision bits = 256) { return BallReal::from_string(text, bits); }
BallReal num(long v) { return BallReal(v, 256); }

const zeros::ZeroTable& table_2000() {
  static const zeros::ZeroTable table = [] {
    std::ifstream in(LICRIT_ZEROS_2000);
    std::stringstream ss;
    ss << in.rdbuf();
    return zeros::import_zeros(ss.str(), ctx);
  }();
  return table;
}

Matrix diag(std::initializer_list<long> d) {
  Matrix m(d.size(), std::vector<BallReal>(d.size(), BallReal(0L, 256)));
  std::size_t i = 0;
  for (long v : d) {
    m[i][i] = BallReal(v, 256);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("the two forms of g agree") {
  CHECK(g_route_a(num(1), ctx).overlaps(g_route_a_reflected(num(1), ctx)));
  for (int i = 1; i <= 10; ++i) {
    BallReal z = BallReal(0.37 * i * i, 256);
    CHECK(g_route_a(z, ctx).overlaps(g_route_a_reflected(z, ctx)));
  }
  CHECK_THROWS_AS(g_route_a(num(0), ctx), DomainErrorBall);
  CHECK_THROWS_AS(g_route_a(num(-1), ctx), DomainErrorBall);
}

TEST_CASE("g decreases") {
  BallReal g1 = g_route_a(num(1), ctx), g4 = g_route_a(num(4), ctx), g9 = g_route_a(num(9), ctx);
  CHECK((g1 - g4).is_positive());
  CHECK((g4 - g9).is_positive());
}

TEST_CASE("g at zero") {
  BallReal g0 = g_at_zero(ctx);
  CHECK(abs(g0 - dec("0.02310")).abs_upper() <= Mag(1e-5));
  CHECK(g0.rad() <= ctx.target_radius);
  zeros::ZeroSum s = zeros::zero_sum(num(0), 0, table_2000());
  CHECK(g0.overlaps(s.with_tail()));
  // continuity: |g(1e-6) - g(0)| <= 1e-6 |g'(0)|, and |g'(0)| = sum 1/z_n^4 < 1e-4
  BallReal g_small = g_route_a(dec("1e-6"), ctx);
  CHECK(abs(g_small - g0).abs_upper() <= Mag(1e-10));
  CHECK(g_value(num(0), ctx).identical(g0));
}

TEST_CASE("g on the whole real line") {
  BallReal w = dec("0");
  w.add_error(Mag(1e-8));
  BallReal near0 = g_value(w, ctx);
  CHECK(near0.contains(g_at_zero(ctx)));
  // Cauchy estimate on |w| = 1/4: the width grows by about 4 B over the input
  CHECK(near0.rad() <= Mag(1e-8) * g_circle_bound(0.0, 0.25) * Mag(4.01) + g_at_zero(ctx).rad());
  CHECK(near0.rad() <= Mag(1e-6));
  // for w < 0 the zero sum is sum 1/(z_n^2 - |w|), larger than g(0)
  BallReal gm = g_value(num(-4), ctx);
  CHECK((gm - g_at_zero(ctx)).is_positive());
  BallReal partial(256);
  for (const BallReal& zn : table_2000().zeros) partial += BallReal(1L, 256) / (sqr(zn) - num(4));
  Mag tail = zeros::power_tail(table_2000().zeros.back(), 2) * Mag(1.01);
  BallReal model = partial + BallReal::with_radius(Mag(tail * Mag(0.5)).get(), tail * Mag(0.5), 256);
  CHECK(gm.overlaps(model));
  BallComplex gc = g_complex(BallComplex(4, 0, 256), ctx);
  CHECK(gc.real().overlaps(g_route_a(num(4), ctx)));
  CHECK(gc.imag().contains(0.0));
  CHECK(g_circle_bound(1.0, 0.25).is_finite());
}

TEST_CASE("route a and the zero sum") {
  for (const char* z : {"0", "0.25", "1", "4", "16", "100"}) {
    KernelEvaluation ev = evaluate(dec(z), ctx, &table_2000());
    REQUIRE(ev.route_b.has_value());
    CHECK(ev.agree);
    CHECK(ev.route_a.overlaps(ev.route_b->with_tail()));
  }
  KernelEvaluation alone = evaluate(num(4), ctx, nullptr);
  CHECK_FALSE(alone.route_b.has_value());
}

TEST_CASE("complete monotonicity at sample points") {
  std::vector<BallReal> grid{num(0), num(1), num(10)};
  MonotonicityReport rep = complete_monotonicity_scan(3, grid, table_2000(), ctx);
  CHECK(rep.points.size() == 12);
  CHECK(rep.disagreements == 0);
  CHECK(rep.nonpositive == 0);
  for (const MonotonicityPoint& p : rep.points) {
    CHECK(p.route_b_positive);
    CHECK(p.agree);
    if (p.k == 3 && p.z.contains(10.0)) {
      BallReal direct(256);
      for (const BallReal& zn : table_2000().zeros) direct += BallReal(1L, 256) / pow_ui(num(10) + sqr(zn), 4);
      CHECK(p.route_b.overlaps(direct * 6L));
    }
    if (p.k == 1 && p.z.contains(1.0)) CHECK(p.route_a.is_positive());
  }
}

TEST_CASE("nu density") {
  NuDensity d0 = nu_density(num(0), table_2000());
  CHECK(d0.unbounded);
  CHECK(d0.partial.is_positive());
  NuDensity d1 = nu_density(num(1), table_2000());
  CHECK_FALSE(d1.unbounded);
  CHECK(d1.partial.is_positive());
  CHECK(d1.tail.is_finite());
  CHECK(nu_density(num(-1), table_2000()).partial.identical(d1.partial));
}

TEST_CASE("Fourier relation for one zero") {
  // 2 int_0^inf cos(z y) e^(-a y)/(2a) dy = 1/(a^2 + z^2), a = z_1, z = 2
  const BallReal a = table_2000().zeros[0].midpoint_ball();
  const BallReal z = num(2);
  quad::Integrand f = [&](const BallComplex& y) {
    Precision p = y.precision();
    return cos(y * z.with_precision(p)) * exp(-(y * a.with_precision(p))) / (a.with_precision(p) * 2L);
  };
  std::vector<double> breaks;
  for (double y = 0; y <= 6.0; y += 0.5) breaks.push_back(y);
  quad::SegmentIntegrator integ(256);
  BallComplex integral = integ.integrate(f, breaks);
  BallReal two_i = integral.real() * 2L;
  // tail beyond y = 6: at most e^(-6a)/a^2 < 1e-38
  two_i.add_error(Mag(1e-38));
  CHECK(two_i.contains(BallReal(1L, 256) / (sqr(a) + sqr(z))));
}

TEST_CASE("quadratic forms") {
  std::vector<BallReal> one{num(3)};
  BallReal q1 = quadratic_form(one, {BallComplex(1, 0, 256)}, ctx);
  CHECK(q1.overlaps(g_at_zero(ctx)));
  CHECK(q1.is_positive());
  std::vector<BallReal> pts{num(1), num(2), num(3)};
  std::vector<BallComplex> zero(3, BallComplex(0, 0, 256));
  CHECK(quadratic_form(pts, zero, ctx).contains(0.0));

  // least eigenvector of the route b matrix
  KernelGram gb = gram_matrix(pts, ctx, Route::b, &table_2000());
  PsdResult psd = psd_check(gb.matrix);
  std::vector<BallComplex> v;
  for (double w : psd.witness) v.emplace_back(w, 0.0, 256);
  BallComplex form = quadratic_form(gb.matrix, v);
  double norm1 = 0;
  for (double w : psd.witness) norm1 += std::fabs(w);
  Mag slack = gb.tail->value * Mag(norm1 * norm1 * 1.0001) + radius_sum(gb.matrix);
  BallReal lower = form.real();
  lower.add_error(slack);
  CHECK_FALSE(lower.is_negative());
}

TEST_CASE("Gram matrices") {
  KernelGram g0 = gram_matrix({num(0)}, ctx, Route::a);
  REQUIRE(g0.matrix.size() == 1);
  CHECK(g0.matrix[0][0].overlaps(g_at_zero(ctx)));

  KernelGram g = gram_matrix({num(1), num(2), num(3)}, ctx, Route::a);
  REQUIRE(g.matrix.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(g.matrix[i][i].overlaps(g_at_zero(ctx)));
    for (std::size_t j = 0; j < 3; ++j) CHECK(g.matrix[i][j].identical(g.matrix[j][i]));
  }
  CHECK(g.matrix[0][1].overlaps(g_route_a(num(1), ctx)));
  CHECK(g.matrix[1][2].overlaps(g_route_a(num(1), ctx)));
  CHECK(g.matrix[0][2].overlaps(g_route_a(num(4), ctx)));
  CHECK_FALSE(g.tail.has_value());

  KernelGram gb = gram_matrix({num(1), num(2), num(3)}, ctx, Route::b, &table_2000());
  REQUIRE(gb.tail.has_value());
  CHECK(gb.matrix[0][2].overlaps(zeros::zero_sum(num(4), 0, table_2000()).partial));
  CHECK_THROWS(gram_matrix({num(1)}, ctx, Route::b, nullptr));
}

TEST_CASE("determinants") {
  Determinant id = certified_determinant(diag({1, 1}), ctx);
  CHECK(id.value.contains(1.0));
  CHECK(id.verdict == SignVerdict::positive_certified);
  CHECK(determinant(diag({2, -3, 5})).value.contains(-30.0));

  BallReal a = g_at_zero(ctx);
  Matrix rank1{{a, a}, {a, a}};
  Determinant d = certified_determinant(rank1, ctx);
  CHECK(d.value.contains(0.0));
  CHECK(d.verdict == SignVerdict::zero_straddling);
  PrecisionContext capped(256, Mag::from_string("1e-30"), 1024);
  Determinant e = certified_determinant(
      [](const PrecisionContext& c) {
        BallReal x = g_at_zero(c);
        return Matrix{{x, x}, {x, x}};
      },
      capped);
  CHECK(e.exhausted);
  CHECK(e.verdict == SignVerdict::zero_straddling);
  CHECK(e.bits == 1024);
}

TEST_CASE("certified determinant at the claimed points") {
  PrecisionContext c(256, Mag::from_string("1e-12"), 32768);
  std::vector<BallReal> pts{num(1), num(2), num(3)};
  Determinant d = certified_determinant(
      [&](const PrecisionContext& pc) { return gram_matrix(pts, pc, Route::a).matrix; }, c);
  CHECK(d.value.rad() <= Mag::from_string("1e-12"));
  CHECK(d.verdict != SignVerdict::zero_straddling);
  CHECK_FALSE(d.exhausted);
}

TEST_CASE("PSD checks") {
  PsdResult id = psd_check(diag({1, 1, 1}));
  CHECK(id.verdict == PsdVerdict::psd_certified);
  CHECK(abs(id.min_eig_lower - num(1)).abs_upper() <= Mag(1e-9));
  CHECK_FALSE((id.min_eig_lower - num(1)).is_positive());

  PsdResult ind = psd_check(diag({1, -1}));
  CHECK(ind.verdict == PsdVerdict::not_psd_certified);
  REQUIRE(ind.witness.size() == 2);
  CHECK(std::fabs(std::fabs(ind.witness[1]) - 1.0) < 1e-12);
  CHECK(std::fabs(ind.witness[0]) < 1e-12);

  // one Cauchy kernel 1/(a^2 + (x_i - x_j)^2) is positive definite
  const BallReal a = table_2000().zeros[0];
  std::vector<BallReal> pts{num(0), num(1), num(3), num(4), num(7)};
  Matrix m(pts.size(), std::vector<BallReal>(pts.size(), BallReal(256)));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) m[i][j] = BallReal(1L, 256) / (sqr(a) + sqr(pts[i] - pts[j]));
  CHECK(psd_check(m).verdict == PsdVerdict::psd_certified);

  KernelGram gb = gram_matrix({num(1), num(2), num(3)}, ctx, Route::b, &table_2000());
  PsdResult pb = psd_check(gb.matrix);
  BallReal floor = pb.min_eig_lower;
  floor.add_error(gb.tail->value * Mag(3.0) + radius_sum(gb.matrix));
  CHECK_FALSE(floor.is_negative());
}

TEST_CASE("the claimed negative determinants") {
  ExperimentReport rep = paper_experiment(ctx, table_2000());
  REQUIRE(rep.claims.size() == 2);
  CHECK(rep.claims[0].paper_value_text == "-0.00153356");
  CHECK(rep.claims[1].paper_value_text == "-0.0000695685");
  CHECK(rep.claims[0].points.size() == 3);
  CHECK(rep.claims[1].points.size() == 4);
  CHECK(rep.claims[1].points[0].contains(5.0));
  CHECK_FALSE(rep.model_note.empty());
  for (const Claim& c : rep.claims) {
    CHECK(c.route_a.verdict != SignVerdict::zero_straddling);
    CHECK(c.route_a.value.rad() <= ctx.target_radius);
    CHECK(c.status != ClaimStatus::undecided);
    CHECK(c.route_b_consistent);
    CHECK_FALSE(c.discrepancy);
    // the truncated model cannot produce a determinant below its tail slack
    CHECK_FALSE(c.route_b_control.is_negative());
    // a certified sign opposite to the printed one refutes the printed value
    if (c.route_a.verdict == SignVerdict::positive_certified) CHECK(c.status == ClaimStatus::refuted);
  }
}

TEST_CASE("labels") {
  CHECK(to_string(Route::a) == "a");
  CHECK(to_string(SignVerdict::zero_straddling) == "zero-straddling");
  CHECK(to_string(PsdVerdict::not_psd_certified) == "not-PSD-certified");
  CHECK(to_string(ClaimStatus::refuted) == "refuted");
  CHECK(sign_of(num(-2)) == SignVerdict::negative_certified);
}
