#include <cmath>

#include "licrit/bernoulli.hpp"
#include "licrit/quadrature.hpp"
#include "licrit/special_functions.hpp"
#include "sf_internal.hpp"

namespace licrit::sf {

namespace detail {

namespace {

// log2 of |B_2k| / (2k)! approximated as log2(2 / (2 pi)^2k).
double log2_b2k_over_fact(unsigned k) { return 1.0 - 2.0 * k * std::log2(2.0 * M_PI); }

double log2_factorial(unsigned n) { return std::lgamma(n + 1.0) / std::log(2.0); }

// Upper bound of sec^2(arg(w)/2) = 2|w| / (|w| + Re w).
Mag sec2_half_arg(const BallComplex& w) {
  double re_lo = lower_d(w.real());
  if (!(re_lo > 0)) throw DomainErrorBall("Stirling series needs Re(w) > 0");
  double den = (down(w.abs_lower()) + re_lo) * (1.0 - 0x1p-50);
  return Mag(2.0 * up(w.abs_upper())) / Mag(den);
}

struct StirlingPlan {
  unsigned terms;     // K: terms k = 1..K-1 are summed, k = K is the remainder
  Mag inv_abs_w;      // 1 / |w|, rounded up
  Mag sec2;
};

// Smallest K whose remainder estimate (with extra_power on |w|) is below 2^-wp.
StirlingPlan plan(const BallComplex& w, Precision wp, int extra_power) {
  StirlingPlan p;
  p.sec2 = sec2_half_arg(w);
  Mag absw = w.abs_lower();
  p.inv_abs_w = Mag(1.0) / absw;
  double l2w = std::log2(down(absw));
  double l2sec = log2_of(p.sec2);
  double best = INFINITY;
  unsigned best_k = 1;
  for (unsigned k = 1; k < 400; ++k) {
    double est = log2_b2k_over_fact(k) + log2_factorial(2 * k - 2) - (2.0 * k - 1 + extra_power) * l2w +
                 k * l2sec;
    if (est < best) {
      best = est;
      best_k = k;
    }
    if (est < -static_cast<double>(wp) - 4) break;
    if (est > best + 20) break;  // past the minimum
  }
  p.terms = best_k;
  return p;
}

}  // namespace

unsigned stirling_shift(const BallComplex& s, Precision wp) {
  double d = 0.16 * static_cast<double>(wp) + 8.0;
  double re = s.real().mid_double();
  double im = std::fabs(s.imag().mid_double());
  double target_re = (d > im) ? std::sqrt(d * d - im * im) : 0.0;
  target_re = std::max(target_re, 2.0);
  double m = std::ceil(target_re - re);
  return m > 0 ? static_cast<unsigned>(m) : 0u;
}

BallComplex stirling_log_gamma(const BallComplex& w, Precision wp) {
  StirlingPlan p = plan(w, wp, 0);
  BallReal half = BallReal::rational(1, 2, wp);
  BallReal log2pi = log(constant(Constant::pi, wp) * 2L);
  BallComplex res = (w - BallComplex(half)) * log(w) - w + BallComplex(log2pi * half);

  BallComplex winv = inv(w);
  BallComplex winv2 = sqr(winv);
  BallComplex pw = winv;  // w^(1-2k)
  for (unsigned k = 1; k < p.terms; ++k) {
    long den = static_cast<long>(2 * k) * static_cast<long>(2 * k - 1);
    res += pw * (bernoulli_b2k(k, wp) / den);
    pw *= winv2;
  }
  // |B_2K| / (2K(2K-1)) |w|^(1-2K) sec^(2K)(arg w / 2)
  unsigned K = p.terms;
  Mag bound = bernoulli_b2k(K, 64).abs_upper() / Mag(static_cast<double>(2 * K) * (2 * K - 1));
  bound = bound * p.inv_abs_w.pow_ui(2 * K - 1) * p.sec2.pow_ui(K);
  detail::add_error(res, bound);
  return res;
}

BallComplex stirling_digamma(const BallComplex& w, Precision wp) {
  StirlingPlan p = plan(w, wp, 1);
  BallComplex winv = inv(w);
  BallComplex winv2 = sqr(winv);
  BallComplex res = log(w) - winv * BallReal::rational(1, 2, wp);
  BallComplex pw = winv2;  // w^(-2k)
  for (unsigned k = 1; k < p.terms; ++k) {
    res -= pw * (bernoulli_b2k(k, wp) / static_cast<long>(2 * k));
    pw *= winv2;
  }
  // |B_2K| / (2K) |w|^(-2K) sec^(2K+2)(arg w / 2)
  unsigned K = p.terms;
  Mag bound = bernoulli_b2k(K, 64).abs_upper() / Mag(2.0 * K);
  bound = bound * p.inv_abs_w.pow_ui(2 * K) * p.sec2.pow_ui(K + 1);
  detail::add_error(res, bound);
  return res;
}

RisingProduct::RisingProduct(const BallComplex& s, Precision wp, bool with_derivative)
    : s_(s.with_precision(wp)),
      wp_(wp),
      with_derivative_(with_derivative),
      wide_(!(s.rad() <= Mag::pow2(-static_cast<long>(wp) / 2))),
      prod_(BallReal(1L, wp)),
      dprod_(wp),
      log_sum_(wp),
      harmonic_(wp) {}

void RisingProduct::extend() {
  BallComplex f = s_ + BallComplex(BallReal(static_cast<long>(n_), wp_));
  ++n_;
  if (f.contains_zero()) hit_zero_ = true;
  // Point mode, and factors near or left of the origin in wide mode, use the
  // product rule directly.
  if (!wide_ || !(lower_d(f.real()) > 0.25)) {
    if (with_derivative_) dprod_ = dprod_ * f + prod_;
    prod_ *= f;
    return;
  }
  if (with_derivative_) harmonic_ += inv(f);
  log_sum_ += log(f);
}

BallComplex RisingProduct::value() const {
  if (!wide_) return prod_;
  return prod_ * exp(log_sum_);
}

BallComplex RisingProduct::derivative() const {
  if (!wide_) return dprod_;
  return exp(log_sum_) * (dprod_ + prod_ * harmonic_);
}

}  // namespace detail

namespace {

using detail::guarded;

// Product (s)(s+1)...(s+m-1); PoleError if a factor can vanish.
detail::RisingProduct rising(const BallComplex& s, unsigned m, Precision wp) {
  detail::RisingProduct r(s, wp, false);
  for (unsigned j = 0; j < m; ++j) r.extend();
  if (r.hit_zero()) throw PoleError("argument meets a pole of Gamma");
  return r;
}

}  // namespace

BallComplex gamma(const BallComplex& s_in, const PrecisionContext& ctx) {
  const Precision wp = guarded(ctx);
  BallComplex s = s_in.with_precision(wp);
  unsigned m = detail::stirling_shift(s, wp);
  detail::RisingProduct prod = rising(s, m, wp);
  BallComplex w = s + BallComplex(BallReal(static_cast<long>(m), wp));
  BallComplex lg = detail::stirling_log_gamma(w, wp);
  if (prod.wide()) {
    // A single exponential avoids dividing two wide rectangles.
    BallComplex g = exp(lg - prod.log_part());
    return detail::round_to(g / prod.direct_part(), ctx);
  }
  return detail::round_to(exp(lg) / prod.value(), ctx);
}

BallComplex log_gamma(const BallComplex& s_in, const PrecisionContext& ctx) {
  const Precision wp = guarded(ctx);
  BallComplex s = s_in.with_precision(wp);
  if (!(detail::lower_d(s.real()) > 0)) throw DomainErrorBall("log_gamma needs Re(s) > 0");
  unsigned m = detail::stirling_shift(s, wp);
  BallComplex res = detail::stirling_log_gamma(s + BallComplex(BallReal(static_cast<long>(m), wp)), wp);
  for (unsigned j = 0; j < m; ++j) res -= log(s + BallComplex(BallReal(static_cast<long>(j), wp)));
  return detail::round_to(res, ctx);
}

BallComplex digamma(const BallComplex& s_in, const PrecisionContext& ctx) {
  const Precision wp = guarded(ctx);
  BallComplex s = s_in.with_precision(wp);
  unsigned m = detail::stirling_shift(s, wp);
  BallComplex res = detail::stirling_digamma(s + BallComplex(BallReal(static_cast<long>(m), wp)), wp);
  for (unsigned j = 0; j < m; ++j) {
    BallComplex f = s + BallComplex(BallReal(static_cast<long>(j), wp));
    if (f.contains_zero()) throw PoleError("argument meets a pole of digamma");
    res -= inv(f);
  }
  return detail::round_to(res, ctx);
}

BallComplex gamma_via_split(const BallComplex& s_in, const PrecisionContext& ctx) {
  const Precision wp = guarded(ctx);
  BallComplex s = s_in.with_precision(wp);
  const double abs_s = detail::up(s.abs_upper());

  // sum_{n<=K} (-1)^n / (n! (s+n)); tail <= 2 / ((K+1)! * min_{n>K} |s+n|)
  unsigned K = static_cast<unsigned>(std::ceil(abs_s)) + 2;
  while (std::lgamma(K + 2.0) / std::log(2.0) - std::log2(K + 1.0 - abs_s) < static_cast<double>(wp) + 4) ++K;
  BallComplex series(wp);
  BallReal inv_fact(1L, wp);
  for (unsigned n = 0; n <= K; ++n) {
    if (n > 0) inv_fact = inv_fact / static_cast<long>(n);
    BallComplex f = s + BallComplex(BallReal(static_cast<long>(n), wp));
    if (f.contains_zero()) throw PoleError("argument meets a pole of Gamma");
    BallComplex term = inv(f) * inv_fact;
    if (n % 2) series -= term;
    else series += term;
  }
  {
    Mag fact_lo;  // (K+1)! rounded down
    mpfr_set_ui(fact_lo.raw(), 1, MPFR_RNDD);
    for (unsigned n = 2; n <= K + 1; ++n) mpfr_mul_ui(fact_lo.raw(), fact_lo.get(), n, MPFR_RNDD);
    Mag tail = Mag(2.0) / (fact_lo * detail::mag_down(K + 1.0 - abs_s));
    detail::add_error(series, tail);
  }

  // int_1^X e^-t t^(s-1) dt, tail <= 2 X^a e^-X with a = max(Re(s) - 1, 0) and X >= 2a.
  const double a = std::max(detail::upper_d(s.real()) - 1.0, 0.0);
  double X = std::max(2.0, std::ceil(2.0 * a) + 1.0);
  auto log2_tail = [&](double x) { return 1.0 + (a * std::log(x) - x) / std::log(2.0); };
  while (log2_tail(X) > -static_cast<double>(wp) - 4) X += 1.0;

  BallComplex sm1 = s - BallComplex(BallReal(1L, wp));
  quad::Integrand f = [&](const BallComplex& t) {
    Precision p = t.precision();
    BallComplex e = sm1.with_precision(p);
    return exp(e * log(t) - t);
  };
  std::vector<double> breaks;
  for (double x = 1.0; x <= X; x += 1.0) breaks.push_back(x);
  quad::SegmentIntegrator integ(wp);
  BallComplex integral = integ.integrate(f, breaks);
  {
    Mag tail;
    mpfr_set_d(tail.raw(), X, MPFR_RNDU);
    mpfr_log(tail.raw(), tail.get(), MPFR_RNDU);
    mpfr_mul_d(tail.raw(), tail.get(), a, MPFR_RNDU);
    mpfr_sub_d(tail.raw(), tail.get(), X, MPFR_RNDU);
    mpfr_exp(tail.raw(), tail.get(), MPFR_RNDU);
    detail::add_error(integral, tail * Mag(2.0));
  }
  return detail::round_to(series + integral, ctx);
}

}  // namespace licrit::sf
