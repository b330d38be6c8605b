#include "licrit/li.hpp"

#include <algorithm>

#include <gmpxx.h>

#include "licrit/certify.hpp"
#include "licrit/contour.hpp"
#include "licrit/special_functions.hpp"

namespace licrit::li {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::positive_certified: return "positive-certified";
    case Verdict::negative_certified: return "negative-certified";
    case Verdict::undecided: break;
  }
  return "undecided";
}

Verdict verdict_of(const BallReal& x) {
  if (x.is_positive()) return Verdict::positive_certified;
  if (x.is_negative()) return Verdict::negative_certified;
  return Verdict::undecided;
}

namespace {

XiSeriesAtOne series_at(unsigned order, Precision bits, double radius) {
  contour::Options opt;
  opt.radius = radius;
  // xi has no zeros with |Im s| < 14, so any R < 14 is admissible; 2r keeps
  // the bound evaluations cheap.
  opt.bound_radius = 2 * radius;
  opt.real_on_axis = true;
  opt.track_branch = true;
  contour::Function f = [](const BallComplex& w) {
    PrecisionContext c;
    c.working_bits = w.precision();
    BallComplex one(BallReal(1L, w.precision()));
    return log(sf::xi(one + w, c));
  };
  contour::TaylorCoefficients tc = contour::taylor_coefficients(f, order, bits, opt);
  XiSeriesAtOne out;
  out.radius = radius;
  out.nodes = tc.nodes;
  out.bits = bits;
  out.coefficients.reserve(tc.coefficients.size());
  for (const BallComplex& c : tc.coefficients) out.coefficients.push_back(c.real());
  return out;
}

}  // namespace

XiSeriesAtOne log_xi_series(unsigned order, const PrecisionContext& ctx, double radius) {
  if (order < 1) throw OrderError("series order must be at least 1");
  if (!(radius > 0)) throw RadiusError("contour radius must be positive");
  if (radius >= 0.5) throw RadiusError("contour radius must be below 1/2");
  auto result = certify_until(
      [&](const PrecisionContext& c) { return series_at(order, c.working_bits, radius); }, ctx,
      [&](const XiSeriesAtOne& s) {
        return std::all_of(s.coefficients.begin(), s.coefficients.end(),
                           [&](const BallReal& a) { return a.rad() <= ctx.target_radius; });
      });
  return std::move(result.value);
}

BallReal li_lambda_derivative(unsigned n, const XiSeriesAtOne& series) {
  if (n < 1) throw OrderError("Li coefficients start at n = 1");
  if (series.order() < n) throw OrderError("series too short for this coefficient");
  const Precision wp = series.bits;
  // lambda_n = n * sum_{k=1..n} C(n-1, k-1) a_k
  BallReal sum(wp);
  mpz_class binom = 1;
  for (unsigned k = 1; k <= n; ++k) {
    BallReal c = BallReal::from_string(binom.get_str(), wp);
    sum += c * series.coefficients[k];
    binom = binom * (n - k) / k;
  }
  return sum * static_cast<long>(n);
}

BallReal ZeroSumLambda::with_tail() const {
  if (tail.unbounded) {
    BallReal r = partial;
    r.add_error(Mag::infinity());
    return r;
  }
  return partial + tail.as_ball(partial.precision());
}

ZeroSumLambda li_lambda_zero_sum(unsigned n, const zeros::ZeroTable& table) {
  if (table.empty()) throw std::invalid_argument("li_lambda_zero_sum needs a nonempty table");
  const Precision wp = table.precision;
  BallReal sum(wp);
  const BallReal one(1L, wp);
  for (const BallReal& z : table.zeros) {
    BallReal theta = atan(one / (z.with_precision(wp) * 2L)) * 2L;
    sum += (one - cos(theta * static_cast<long>(n))) * 2L;
  }
  ZeroSumLambda out{sum, zeros::TailBound()};
  out.tail.cutoff_index = table.count();
  out.tail.cutoff_height = table.zeros.back();
  out.tail.kind = zeros::TailKind::li_coefficient;
  // 2 (1 - cos(n theta)) <= (n theta)^2 <= n^2 / z^2
  out.tail.value = Mag(static_cast<double>(n) * n) * zeros::power_tail(table.zeros.back(), 2);
  return out;
}

LiSequence li_positivity_report(unsigned N, const PrecisionContext& ctx, const zeros::ZeroTable* table) {
  LiSequence seq;
  if (N == 0) {
    seq.bits = ctx.working_bits;
    return seq;
  }
  auto build = [&](const PrecisionContext& c) {
    XiSeriesAtOne series = series_at(N, c.working_bits, kDefaultContourRadius);
    std::vector<BallReal> lambdas;
    for (unsigned n = 1; n <= N; ++n) lambdas.push_back(li_lambda_derivative(n, series));
    return lambdas;
  };
  auto decided = [](const std::vector<BallReal>& ls) {
    return std::all_of(ls.begin(), ls.end(), [](const BallReal& x) { return verdict_of(x) != Verdict::undecided; });
  };
  auto result = certify_until(build, ctx, decided);
  seq.bits = result.bits;
  seq.exhausted = result.exhausted;
  for (unsigned n = 1; n <= N; ++n) {
    LiEntry e;
    e.n = n;
    e.derivative_route = result.value[n - 1];
    e.verdict = verdict_of(e.derivative_route);
    if (table && !table->empty()) {
      ZeroSumLambda zs = li_lambda_zero_sum(n, *table);
      e.routes_agree = e.derivative_route.overlaps(zs.with_tail());
      e.zero_sum_route = zs.partial;
      e.tail = zs.tail;
    }
    seq.entries.push_back(std::move(e));
  }
  return seq;
}

}  // namespace licrit::li
