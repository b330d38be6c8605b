#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "licrit/bernoulli.hpp"
#include "licrit/special_functions.hpp"
#include "sf_internal.hpp"
#include "zeta_internal.hpp"

namespace licrit::sf {

namespace detail {

namespace {

struct EmPlan {
  unsigned n = 0;       // terms n < N summed directly
  unsigned m = 0;       // Bernoulli corrections k = 1..M
  double guard = 0.0;   // bits lost to cancellation (estimate)
};

EmPlan plan_em(const BallComplex& s, Precision wp) {
  const double sigma = lower_d(s.real());
  const double re = s.real().mid_double();
  const double im = s.imag().mid_double();
  const double rad = up(s.rad());
  const double target = -static_cast<double>(wp) - 8.0;
  const unsigned m_min = static_cast<unsigned>(std::max(1.0, std::ceil((2.0 - sigma) / 2.0)));
  const double l2_2pi = std::log2(2.0 * M_PI);

  EmPlan best;
  double best_cost = INFINITY;
  for (double nd = 4.0; nd < 4.0e6; nd = std::ceil(nd * 1.15)) {
    if (nd > best_cost) break;
    const double l2n = std::log2(nd);
    // log2 of |(s)_{2k}| accumulated incrementally, and of the EM remainder
    double l2poch = 0.0;
    double max_term = 0.0;
    for (unsigned k = 1; k <= 400; ++k) {
      for (unsigned i = 2 * k - 2; i < 2 * k; ++i)
        l2poch += std::log2(std::max(std::hypot(re + i, im) + rad, 1.0));
      double term = 1.0 - 2.0 * k * l2_2pi + l2poch + (1.0 - sigma - 2.0 * k) * l2n;
      max_term = std::max(max_term, term);
      if (k < m_min) continue;
      double rem = term - std::log2(sigma + 2.0 * k - 1.0);
      if (rem < target) {
        double cost = nd + 3.0 * k;
        if (cost < best_cost) {
          best_cost = cost;
          best.n = static_cast<unsigned>(nd);
          best.m = k;
          best.guard = std::max(max_term, -sigma * l2n);
        }
        break;
      }
      if (k > m_min && rem > target + 4000) break;
    }
  }
  if (best.n == 0) throw PrecisionExhausted("Euler-Maclaurin parameters out of range");
  return best;
}

BallReal ball_from_mpz(const mpz_class& z, Precision wp) {
  mpfr_t m;
  mpfr_init2(m, wp);
  int t = mpfr_set_z(m, z.get_mpz_t(), MPFR_RNDN);
  Mag rad = t ? Mag::pow2(mpfr_get_exp(m) - wp) : Mag();
  BallReal out = BallReal::with_radius(m, rad, wp);
  mpfr_clear(m);
  return out;
}

// n^-s for n = 1..N via smallest-prime-factor multiplicativity.
std::vector<BallComplex> inverse_powers(const BallComplex& s, unsigned n_max, Precision wp) {
  std::vector<unsigned> spf(n_max + 1, 0);
  for (unsigned i = 2; i <= n_max; ++i)
    if (spf[i] == 0)
      for (unsigned j = i; j <= n_max; j += i)
        if (spf[j] == 0) spf[j] = i;
  std::vector<BallComplex> pw(n_max + 1, BallComplex(wp));
  if (n_max >= 1) pw[1] = BallComplex(BallReal(1L, wp));
  BallComplex neg_s = -s;
  const bool wide = !(s.rad() <= Mag::pow2(-static_cast<long>(wp) / 2));
  for (unsigned n = 2; n <= n_max; ++n) {
    if (spf[n] == n || wide) pw[n] = exp(neg_s * log(BallReal(static_cast<long>(n), wp)));
    else pw[n] = pw[spf[n]] * pw[n / spf[n]];
  }
  return pw;
}

// log n for n = 1..N, composites from their smallest prime factor.
std::vector<BallReal> logarithms(unsigned n_max, Precision wp) {
  std::vector<BallReal> out(n_max + 1, BallReal(wp));
  for (unsigned n = 2; n <= n_max; ++n) {
    unsigned p = 2;
    while (p * p <= n && n % p) ++p;
    if (p * p > n) out[n] = log(BallReal(static_cast<long>(n), wp));
    else out[n] = out[p] + out[n / p];
  }
  return out;
}

}  // namespace

EmParts euler_maclaurin(const BallComplex& s_in, Precision bits, bool with_derivative) {
  EmPlan plan = plan_em(s_in, bits);
  const Precision wp = bits + static_cast<Precision>(std::ceil(plan.guard)) + 16;
  const BallComplex s = s_in.with_precision(wp);
  const unsigned N = plan.n;
  const unsigned M = plan.m;

  std::vector<BallComplex> pw = inverse_powers(s, N, wp);
  BallComplex sum(wp), dsum(wp);
  for (unsigned n = 1; n < N; ++n) sum += pw[n];
  if (with_derivative) {
    std::vector<BallReal> logs = logarithms(N, wp);
    for (unsigned n = 2; n < N; ++n) dsum -= pw[n] * logs[n];
  }

  const BallReal Nb(static_cast<long>(N), wp);
  const BallReal logN = log(Nb);
  const BallReal N2 = Nb * Nb;
  const BallComplex NmS = pw[N];
  const BallReal half = BallReal::rational(1, 2, wp);

  BallComplex P = sum + NmS * half;
  BallComplex dP = dsum - NmS * (logN * half);

  // term_k = B_2k/(2k)! * (s)_{2k-1} * N^(-s-2k+1)
  RisingProduct rising(s, wp, with_derivative);
  BallComplex w = NmS / Nb;                        // N^(-s-2k+1)
  BallReal fact(2L, wp);                           // (2k)!
  for (unsigned k = 1; k <= M; ++k) {
    while (rising.length() < 2 * k - 1) rising.extend();
    BallReal c = bernoulli_b2k(k, wp) / fact;
    BallComplex cw = w * c;
    BallComplex poch = rising.value();
    P += poch * cw;
    if (with_derivative) dP += (rising.derivative() - poch * logN) * cw;
    w = w / N2;
    fact = fact * static_cast<long>((2 * k + 1) * (2 * k + 2));
  }

  // Remainder: |B_2M|/(2M)! * int_N^inf |d^2M/dx^2M x^-s| dx
  while (rising.length() < 2 * M) rising.extend();
  Mag poch2m = rising.value().abs_upper();
  const double sigma = lower_d(s.real());
  const double a_minus_1 = (sigma + 2.0 * M - 1.0) * (1.0 - 0x1p-50);
  if (!(a_minus_1 > 0)) throw PrecisionExhausted("Euler-Maclaurin remainder not convergent");
  Mag npow;  // N^(1 - sigma - 2M)
  {
    mpfr_t e;
    mpfr_init2(e, 64);
    mpfr_set_d(e, sigma, MPFR_RNDD);
    mpfr_ui_sub(e, 1, e, MPFR_RNDU);
    mpfr_sub_ui(e, e, 2 * M, MPFR_RNDU);
    mpfr_set_ui(npow.raw(), N, MPFR_RNDU);
    mpfr_pow(npow.raw(), npow.get(), e, MPFR_RNDU);
    mpfr_clear(e);
  }
  const Mag bk = bernoulli_b2k_over_factorial_bound(M);
  const Mag inv_am1 = Mag(1.0) / mag_down(a_minus_1);
  add_error(P, bk * poch2m * npow * inv_am1);
  if (with_derivative) {
    Mag dpoch2m = rising.derivative().abs_upper();
    Mag log_n = logN.abs_upper();
    Mag integral_log = npow * (log_n * inv_am1 + inv_am1 * inv_am1);
    add_error(dP, bk * (dpoch2m * npow * inv_am1 + poch2m * integral_log));
  }

  return EmParts{std::move(P), std::move(dP), NmS * Nb, logN, s, wp};
}

}  // namespace detail

namespace {

using detail::guarded;

BallComplex zeta_alternating(const BallComplex& s_in, const PrecisionContext& ctx) {
  const Precision wp = guarded(ctx);
  BallComplex s = s_in.with_precision(wp);
  const double sig_lo = detail::lower_d(s.real());
  const double sig_hi = detail::upper_d(s.real());
  if (!(sig_lo > 0)) throw DomainErrorBall("alternating zeta route needs Re(s) > 0");

  // |eta error| <= 2 Gamma(sigma) / ((3 + sqrt 8)^n |Gamma(s)|)
  PrecisionContext low = ctx.with_bits(64);
  Mag gsig = max(gamma(BallComplex(BallReal(sig_lo, 64)), low).abs_upper(),
                 gamma(BallComplex(BallReal(sig_hi, 64)), low).abs_upper());
  Mag gs_lo = gamma(s.with_precision(64), low).abs_lower();
  if (gs_lo.is_zero()) throw DomainErrorBall("|Gamma(s)| not bounded below");
  Mag ratio = Mag(2.0) * gsig / gs_lo;
  const double base = std::log2(3.0 + std::sqrt(8.0));
  unsigned n = static_cast<unsigned>(
      std::ceil((static_cast<double>(wp) + 4.0 + std::max(0.0, detail::log2_of(ratio))) / base));
  n = std::max(n, 2u);

  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  std::vector<mpz_class> d(n + 1);
  mpq_class term = mpq_class(1, n);  // i = 0: (n-1)!/n! = 1/n
  mpq_class acc = 0;
  for (unsigned i = 0; i <= n; ++i) {
    if (i > 0) {
      // term_i / term_{i-1} = (n+i-1)(n-i+1) * 4 / ((2i-1)(2i))
      term *= mpq_class(mpz_class(4) * (n + i - 1) * (n - i + 1), mpz_class(2 * i - 1) * (2 * i));
      term.canonicalize();
    }
    acc += term;
    mpq_class dk = acc * n;
    dk.canonicalize();
    d[i] = dk.get_num() / dk.get_den();
  }
  const BallReal dn = detail::ball_from_mpz(d[n], wp);
  std::vector<BallComplex> pw = detail::inverse_powers(s, n, wp);
  BallComplex eta(wp);
  for (unsigned k = 0; k < n; ++k) {
    BallReal c = detail::ball_from_mpz(d[n] - d[k], wp) / dn;
    if (k % 2) eta -= pw[k + 1] * c;
    else eta += pw[k + 1] * c;
  }
  Mag err = ratio;
  {
    Mag pow_n;
    mpfr_set_d(pow_n.raw(), 3.0 + std::sqrt(8.0) - 1e-12, MPFR_RNDD);
    mpfr_pow_ui(pow_n.raw(), pow_n.get(), n, MPFR_RNDD);
    err = err / pow_n;
  }
  detail::add_error(eta, err);

  BallComplex one(BallReal(1L, wp));
  BallComplex two_pow = exp((one - s) * constant(Constant::log2, wp));
  BallComplex den = one - two_pow;
  if (den.contains_zero()) throw PoleError("1 - 2^(1-s) vanishes");
  return detail::round_to(eta / den, ctx);
}

BallComplex zeta_dirichlet(const BallComplex& s_in, const PrecisionContext& ctx) {
  const Precision wp = guarded(ctx);
  BallComplex s = s_in.with_precision(wp);
  const double sig = detail::lower_d(s.real());
  if (!(sig > 1.5)) throw DomainErrorBall("Dirichlet series route needs Re(s) > 1.5");
  // tail sum_{n>=N} n^-sigma <= (N-1)^(1-sigma) / (sigma-1)
  double n_need = std::exp2((static_cast<double>(wp) + 4.0) / (sig - 1.0)) + 1.0;
  unsigned N = static_cast<unsigned>(std::min(20000.0, std::ceil(n_need)));
  std::vector<BallComplex> pw = detail::inverse_powers(s, N - 1, wp);
  BallComplex sum(wp);
  for (unsigned n = 1; n < N; ++n) sum += pw[n];
  Mag tail;
  {
    mpfr_t e;
    mpfr_init2(e, 64);
    mpfr_set_d(e, sig, MPFR_RNDD);
    mpfr_ui_sub(e, 1, e, MPFR_RNDU);
    mpfr_set_ui(tail.raw(), N - 1, MPFR_RNDU);
    mpfr_pow(tail.raw(), tail.get(), e, MPFR_RNDU);
    mpfr_clear(e);
  }
  tail = tail / detail::mag_down(sig - 1.0);
  detail::add_error(sum, tail);
  return detail::round_to(sum, ctx);
}

}  // namespace

BallComplex zeta(const BallComplex& s, const PrecisionContext& ctx, ZetaRoute route) {
  switch (route) {
    case ZetaRoute::alternating:
      return zeta_alternating(s, ctx);
    case ZetaRoute::dirichlet:
      return zeta_dirichlet(s, ctx);
    case ZetaRoute::euler_maclaurin:
      break;
  }
  detail::EmParts p = detail::euler_maclaurin(s, guarded(ctx), false);
  BallComplex sm1 = p.s - BallComplex(BallReal(1L, p.bits));
  if (sm1.contains_zero()) throw PoleError("zeta has a pole at s = 1");
  return detail::round_to(p.value + p.n_one_minus_s / sm1, ctx);
}

BallComplex zeta_derivative(const BallComplex& s, const PrecisionContext& ctx) {
  detail::EmParts p = detail::euler_maclaurin(s, guarded(ctx), true);
  BallComplex sm1 = p.s - BallComplex(BallReal(1L, p.bits));
  if (sm1.contains_zero()) throw PoleError("zeta has a pole at s = 1");
  BallComplex inv1 = inv(sm1);
  // d/ds N^(1-s)/(s-1) = -N^(1-s) (log N/(s-1) + 1/(s-1)^2)
  BallComplex corr = p.n_one_minus_s * (inv1 * p.log_n + sqr(inv1));
  return detail::round_to(p.derivative - corr, ctx);
}

ZetaJet zeta_times_s_minus_one(const BallComplex& s, const PrecisionContext& ctx) {
  detail::EmParts p = detail::euler_maclaurin(s, guarded(ctx), true);
  BallComplex sm1 = p.s - BallComplex(BallReal(1L, p.bits));
  BallComplex f = sm1 * p.value + p.n_one_minus_s;
  BallComplex df = p.value + sm1 * p.derivative - p.n_one_minus_s * p.log_n;
  return {detail::round_to(f, ctx), detail::round_to(df, ctx)};
}

}  // namespace licrit::sf
