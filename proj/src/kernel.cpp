#include "licrit/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "licrit/certify.hpp"
#include "licrit/contour.hpp"
#include "licrit/differences.hpp"
#include "licrit/parallel.hpp"
#include "licrit/special_functions.hpp"

namespace licrit::kernel {

std::string_view to_string(Route r) { return r == Route::a ? "a" : "b"; }

std::string_view to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::positive_certified: return "positive-certified";
    case SignVerdict::negative_certified: return "negative-certified";
    case SignVerdict::zero_straddling: break;
  }
  return "zero-straddling";
}

std::string_view to_string(PsdVerdict v) {
  switch (v) {
    case PsdVerdict::psd_certified: return "PSD-certified";
    case PsdVerdict::not_psd_certified: return "not-PSD-certified";
    case PsdVerdict::undecided: break;
  }
  return "undecided";
}

std::string_view to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::reproduced: return "reproduced";
    case ClaimStatus::refuted: return "refuted";
    case ClaimStatus::undecided: break;
  }
  return "undecided";
}

SignVerdict sign_of(const BallReal& x) {
  if (x.is_positive()) return SignVerdict::positive_certified;
  if (x.is_negative()) return SignVerdict::negative_certified;
  return SignVerdict::zero_straddling;
}

namespace {

constexpr Precision kGuard = 16;

PrecisionContext at_bits(const PrecisionContext& ctx, Precision bits) {
  PrecisionContext c = ctx;
  c.working_bits = bits;
  if (c.max_bits < bits) c.max_bits = bits;
  return c;
}

BallReal half_at(Precision p) { return BallReal::rational(1, 2, p); }

BallReal g_at_zero_once(Precision bits) {
  contour::Options opt;
  opt.radius = 0.25;
  opt.bound_radius = 0.5;
  opt.real_on_axis = true;
  contour::Function f = [](const BallComplex& w) {
    PrecisionContext c;
    c.working_bits = w.precision();
    return sf::xi(BallComplex(half_at(w.precision())) + w, c);
  };
  contour::TaylorCoefficients tc = contour::taylor_coefficients(f, 2, bits + kGuard, opt);
  // xi(1/2 + w) = c0 + c2 w^2 + ...; g(0) = xi''(1/2) / (2 xi(1/2)) = c2 / c0
  return (tc.coefficients[2].real() / tc.coefficients[0].real()).with_precision(bits);
}

}  // namespace

BallReal g_route_a(const BallReal& z, const PrecisionContext& ctx) {
  if (!z.is_positive()) throw DomainErrorBall("g_route_a needs z > 0; use g_at_zero at 0");
  const Precision wp = ctx.working_bits + kGuard;
  BallReal u = sqrt(z.with_precision(wp));
  BallComplex s(half_at(wp) + u);
  BallComplex ld = sf::xi_log_derivative(s, at_bits(ctx, wp));
  return (ld.real() / (u * 2L)).with_precision(ctx.working_bits);
}

BallReal g_route_a_reflected(const BallReal& z, const PrecisionContext& ctx) {
  if (!z.is_positive()) throw DomainErrorBall("g_route_a needs z > 0; use g_at_zero at 0");
  const Precision wp = ctx.working_bits + kGuard;
  BallReal u = sqrt(z.with_precision(wp));
  BallComplex s(half_at(wp) - u);
  BallComplex ld = sf::xi_log_derivative(s, at_bits(ctx, wp));
  return (-ld.real() / (u * 2L)).with_precision(ctx.working_bits);
}

BallReal g_at_zero(const PrecisionContext& ctx) {
  static std::mutex mu;
  static std::map<std::pair<Precision, double>, BallReal> cache;
  const auto key = std::make_pair(ctx.working_bits, ctx.target_radius.to_double());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto r = certify([](const PrecisionContext& c) { return g_at_zero_once(c.working_bits); }, ctx);
  BallReal v = r.value.with_precision(std::max(ctx.working_bits, r.bits));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, v).first->second;
}

BallComplex g_complex(const BallComplex& w, const PrecisionContext& ctx) {
  const Precision wp = ctx.working_bits + kGuard;
  BallComplex ww = w.with_precision(wp);
  BallComplex u;
  if (mpfr_sgn(ww.real().mid()) >= 0) {
    u = sqrt(ww);
  } else {
    // g is even in sqrt(w); use i sqrt(-w) away from the cut.
    BallComplex v = sqrt(-ww);
    u = BallComplex(-v.imag(), v.real());
  }
  BallComplex s = BallComplex(half_at(wp)) + u;
  BallComplex ld = sf::xi_log_derivative(s, at_bits(ctx, wp));
  return (ld / (u * BallReal(2L, wp))).with_precision(ctx.working_bits);
}

Mag g_circle_bound(double center, double radius) {
  static std::mutex mu;
  static std::map<std::pair<double, double>, Mag> cache;
  const auto key = std::make_pair(center, radius);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  PrecisionContext c;
  c.working_bits = 64;
  contour::Function f = [&](const BallComplex& w) {
    return g_complex(BallComplex(BallReal(center, w.precision())) + w, c);
  };
  Mag b = contour::circle_bound(f, radius, 2048);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, b).first->second;
}

BallReal g_value(const BallReal& w, const PrecisionContext& ctx) {
  if (w.is_positive()) return g_route_a(w, ctx);
  if (w.is_exact() && w.contains_zero()) return g_at_zero(ctx);
  if (w.is_negative()) {
    const Precision wp = ctx.working_bits + kGuard;
    BallReal v = sqrt(-w.with_precision(wp));
    BallComplex s(half_at(wp), v);
    BallComplex ld = sf::xi_log_derivative(s, at_bits(ctx, wp));
    // g(w) = L / (2 i v), real for real w
    return (ld.imag() / (v * 2L)).with_precision(ctx.working_bits);
  }
  // Ball around 0: |g(w) - g(0)| <= |w| B / (R - |w|) with |g| <= B on |w| = R.
  const double R = 0.25;
  const double r = w.abs_upper().to_double();
  if (!(r < 0.125)) throw DomainErrorBall("g_value: ball around 0 too wide");
  BallReal out = g_at_zero(ctx);
  out.add_error(g_circle_bound(0.0, R) * Mag(r) / Mag((R - r) * (1 - 1e-12)));
  return out;
}

KernelEvaluation evaluate(const BallReal& w, const PrecisionContext& ctx, const zeros::ZeroTable* table) {
  KernelEvaluation e{w, g_value(w, ctx), std::nullopt, true};
  if (table && !table->empty()) {
    zeros::ZeroSum zs = zeros::zero_sum(w, 0, *table);
    e.agree = e.route_a.overlaps(zs.with_tail());
    e.route_b = std::move(zs);
  }
  return e;
}

// ---------------------------------------------------------------------------

MonotonicityReport complete_monotonicity_scan(unsigned k_max, const std::vector<BallReal>& grid,
                                              const zeros::ZeroTable& table, const PrecisionContext& ctx) {
  constexpr double kDiscRadius = 0.25;
  MonotonicityReport rep;
  for (const BallReal& z : grid) {
    if (z.is_negative() || !(z.is_positive() || z.contains_zero()))
      throw std::invalid_argument("complete_monotonicity_scan needs grid points >= 0");
  }
  // One task per grid point; each point needs its own disc bound.
  auto rows = parallel_map(grid.size(), [&](std::size_t i) {
    const BallReal z = grid[i].with_precision(ctx.working_bits);
    diff::DiscBound disc{g_circle_bound(z.mid_double(), kDiscRadius), kDiscRadius};
    const BallReal g0 = g_value(z, ctx);
    std::vector<MonotonicityPoint> out;
    BallReal fact(1L, ctx.working_bits);
    for (unsigned k = 0; k <= k_max; ++k) {
      if (k > 0) fact = fact * static_cast<long>(k);
      MonotonicityPoint p;
      p.z = z;
      p.k = k;
      zeros::ZeroSum zs = zeros::zero_sum(z, k, table);
      p.route_b = zs.partial * fact;
      p.route_b_tail = zs.tail.value * fact.abs_upper();
      p.route_b_positive = p.route_b.is_positive();
      // Each order loses about k log2(1/h) bits; carry extra ones.
      PrecisionContext fd_ctx = ctx.with_bits(ctx.working_bits + 32 * k);
      diff::RealFunction g = [&](const BallReal& x) { return g_value(x, fd_ctx); };
      double h = diff::balanced_step(k, fd_ctx.working_bits, disc, g0.mid_double());
      BallReal d = k == 0 ? g0 : diff::central_difference(g, z.with_precision(fd_ctx.working_bits), k, h, disc)
                                     .with_precision(ctx.working_bits);
      p.route_a = (k % 2) ? -d : d;
      BallReal widened = p.route_b;
      Mag half = p.route_b_tail * Mag(0.5);
      widened += BallReal::with_radius(half.get(), half, ctx.working_bits);
      p.agree = p.route_a.overlaps(widened);
      out.push_back(std::move(p));
    }
    return out;
  });
  for (auto& row : rows) {
    for (auto& p : row) {
      if (!p.agree) ++rep.disagreements;
      if (!p.route_b_positive) ++rep.nonpositive;
      rep.points.push_back(std::move(p));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

NuDensity nu_density(const BallReal& y_in, const zeros::ZeroTable& table) {
  if (table.empty()) throw std::invalid_argument("nu_density needs a nonempty table");
  const Precision wp = std::max(y_in.precision(), table.precision);
  BallReal y = abs(y_in.with_precision(wp));
  NuDensity out{BallReal(wp), Mag(), false};
  for (const BallReal& z : table.zeros) {
    BallReal zw = z.with_precision(wp);
    out.partial += exp(-zw * y) / (zw * 2L);
  }
  if (y.contains_zero()) {
    out.unbounded = true;
    out.tail = Mag::infinity();
    return out;
  }
  // Model: density 2 (1/2pi) log(t/2pi) dt for t > T0, log(t/2pi)/t
  // decreasing there, so the tail is at most (1/2pi) log(T0/2pi)/T0 e^(-y T0)/y.
  mpfr_t t0, l, e, ylo;
  mpfr_inits2(64, t0, l, e, ylo, static_cast<mpfr_ptr>(nullptr));
  table.zeros.back().lower(t0);
  mpfr_const_pi(l, MPFR_RNDD);
  mpfr_mul_ui(l, l, 2, MPFR_RNDD);
  mpfr_div(e, t0, l, MPFR_RNDU);
  mpfr_log(e, e, MPFR_RNDU);      // log(T0/2pi)
  mpfr_div(e, e, l, MPFR_RNDU);   // / 2pi
  mpfr_div(e, e, t0, MPFR_RNDU);  // / T0
  y.lower(ylo);
  mpfr_mul(l, ylo, t0, MPFR_RNDD);
  mpfr_neg(l, l, MPFR_RNDU);
  mpfr_exp(l, l, MPFR_RNDU);
  mpfr_mul(e, e, l, MPFR_RNDU);
  mpfr_div(e, e, ylo, MPFR_RNDU);
  mpfr_set(out.tail.raw(), e, MPFR_RNDU);
  mpfr_clears(t0, l, e, ylo, static_cast<mpfr_ptr>(nullptr));
  return out;
}

// ---------------------------------------------------------------------------

KernelGram gram_matrix(const std::vector<BallReal>& points, const PrecisionContext& ctx, Route route,
                       const zeros::ZeroTable* table) {
  if (route == Route::b && (!table || table->empty()))
    throw std::invalid_argument("route b needs a zero table");
  const std::size_t n = points.size();
  KernelGram out;
  out.points = points;
  out.route = route;
  out.bits = ctx.working_bits;
  out.matrix.assign(n, std::vector<BallReal>(n, BallReal(ctx.working_bits)));

  std::vector<std::pair<std::size_t, std::size_t>> upper;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) upper.emplace_back(i, j);

  auto entry = [&](const BallReal& w) {
    if (route == Route::a) return g_value(w, ctx);
    return zeros::zero_sum(w, 0, *table).partial.with_precision(ctx.working_bits);
  };
  // Every diagonal entry is the same ball.
  const BallReal diag = entry(BallReal(0L, ctx.working_bits));
  std::vector<BallReal> off = parallel_map(upper.size(), [&](std::size_t t) {
    BallReal d = points[upper[t].first].with_precision(ctx.working_bits) -
                 points[upper[t].second].with_precision(ctx.working_bits);
    return entry(sqr(d));
  });
  for (std::size_t i = 0; i < n; ++i) out.matrix[i][i] = diag;
  for (std::size_t t = 0; t < upper.size(); ++t) {
    out.matrix[upper[t].first][upper[t].second] = off[t];
    out.matrix[upper[t].second][upper[t].first] = off[t];
  }
  if (route == Route::b) {
    zeros::TailBound tb;
    tb.cutoff_index = table->count();
    tb.cutoff_height = table->zeros.back();
    tb.kind = zeros::TailKind::sum_reciprocal_squares;
    tb.value = zeros::power_tail(table->zeros.back(), 2);
    out.tail = tb;
  }
  return out;
}

BallComplex quadratic_form(const Matrix& m, const std::vector<BallComplex>& coeffs) {
  const std::size_t n = m.size();
  if (coeffs.size() != n) throw std::invalid_argument("quadratic_form: size mismatch");
  Precision p = n ? m[0][0].precision() : kDefaultWorkingBits;
  BallComplex sum(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sum += coeffs[i] * coeffs[j].conj() * m[i][j];
  return sum;
}

BallReal quadratic_form(const std::vector<BallReal>& points, const std::vector<BallComplex>& coeffs,
                        const PrecisionContext& ctx) {
  if (points.empty() || points.size() != coeffs.size())
    throw std::invalid_argument("quadratic_form needs one coefficient per point");
  KernelGram g = gram_matrix(points, ctx, Route::a);
  BallComplex q = quadratic_form(g.matrix, coeffs);
  if (!q.imag().contains_zero()) throw std::logic_error("Hermitian form with a nonzero imaginary part");
  return q.real();
}

// ---------------------------------------------------------------------------

namespace {

BallReal leibniz(const Matrix& a, std::size_t from) {
  const std::size_t m = a.size() - from;
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  BallReal sum(a[0][0].precision());
  do {
    // parity from the cycle decomposition
    std::vector<bool> seen(m, false);
    std::size_t transpositions = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = perm[j]) seen[j] = true, ++len;
      transpositions += len - 1;
    }
    BallReal term(1L, a[0][0].precision());
    for (std::size_t i = 0; i < m; ++i) term *= a[from + i][from + perm[i]];
    if (transpositions % 2) sum -= term;
    else sum += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

}  // namespace

Determinant determinant(const Matrix& m_in) {
  const std::size_t n = m_in.size();
  for (const auto& row : m_in)
    if (row.size() != n) throw std::invalid_argument("determinant needs a square matrix");
  Determinant out;
  if (n == 0) {
    out.value = BallReal(1L, kDefaultWorkingBits);
    out.verdict = SignVerdict::positive_certified;
    return out;
  }
  Matrix a = m_in;
  const Precision p = a[0][0].precision();
  out.bits = p;
  bool negate = false;
  BallReal prev(1L, p);
  for (std::size_t k = 0; k < n; ++k) {
    // Full pivoting: the entry of largest magnitude whose ball excludes zero.
    std::size_t pr = n, pc = n;
    double best = -1.0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        if (a[i][j].contains_zero()) continue;
        double v = std::fabs(a[i][j].mid_double());
        if (v > best) best = v, pr = i, pc = j;
      }
    if (pr == n) {
      // Every remaining entry may vanish: expand the block and undo the
      // Bareiss scaling, block = det * prev^(n-k-1).
      BallReal d = leibniz(a, k);
      // repeated division: a ball power of a wide prev may reach zero
      for (std::size_t e = 1; e + k < n; ++e) d = d / prev;
      out.value = negate ? -d : d;
      out.verdict = sign_of(out.value);
      return out;
    }
    if (pr != k) std::swap(a[pr], a[k]), negate = !negate;
    if (pc != k) {
      for (auto& row : a) std::swap(row[pc], row[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  out.value = negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
  out.verdict = sign_of(out.value);
  return out;
}

Determinant certified_determinant(const Matrix& m, const PrecisionContext&) { return determinant(m); }

Determinant certified_determinant(const std::function<Matrix(const PrecisionContext&)>& build,
                                  const PrecisionContext& ctx) {
  const Mag target = ctx.target_radius;
  auto r = certify_until([&](const PrecisionContext& c) { return determinant(build(c)); }, ctx,
                         [&](const Determinant& d) {
                           return d.verdict != SignVerdict::zero_straddling && d.value.rad() <= target;
                         });
  Determinant d = std::move(r.value);
  d.bits = r.bits;
  d.exhausted = r.exhausted;
  return d;
}

// ---------------------------------------------------------------------------

Mag radius_sum(const Matrix& m) {
  Mag s;
  for (const auto& row : m)
    for (const auto& x : row) s += x.rad();
  return s;
}

namespace {

using LMatrix = std::vector<std::vector<long double>>;

// Cyclic Jacobi on the midpoints: eigenvalues and eigenvectors (columns).
void jacobi(LMatrix a, std::vector<long double>& eig, LMatrix& vec) {
  const std::size_t n = a.size();
  vec.assign(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) vec[i][i] = 1.0L;
  for (int sweep = 0; sweep < 100; ++sweep) {
    long double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off == 0) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0) continue;
        long double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        long double t = (theta >= 0 ? 1.0L : -1.0L) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        long double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          long double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          long double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          long double vkp = vec[k][p], vkq = vec[k][q];
          vec[k][p] = c * vkp - s * vkq;
          vec[k][q] = s * vkp + c * vkq;
        }
      }
  }
  eig.resize(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
}

// Ball Cholesky of m - lambda I; true only if every pivot is certified positive.
bool shifted_cholesky_succeeds(const Matrix& m, const BallReal& lambda) {
  const std::size_t n = m.size();
  Matrix l(n, std::vector<BallReal>(n, BallReal(lambda.precision())));
  for (std::size_t j = 0; j < n; ++j) {
    BallReal d = m[j][j] - lambda;
    for (std::size_t k = 0; k < j; ++k) d -= sqr(l[j][k]);
    if (!d.is_positive()) return false;
    l[j][j] = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      BallReal s = m[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      l[i][j] = s / l[j][j];
    }
  }
  return true;
}

}  // namespace

PsdResult psd_check(const Matrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("psd_check needs a square matrix");
  PsdResult out;
  if (n == 0) {
    out.min_eig_lower = BallReal(0L, kDefaultWorkingBits);
    out.verdict = PsdVerdict::psd_certified;
    return out;
  }
  const Precision p = m[0][0].precision();
  LMatrix mid(n, std::vector<long double>(n));
  long double norm = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mid[i][j] = m[i][j].mid_long_double();
      norm = std::max(norm, std::fabs(mid[i][j]));
    }
  std::vector<long double> eig;
  LMatrix vec;
  jacobi(mid, eig, vec);
  std::size_t imin = static_cast<std::size_t>(std::min_element(eig.begin(), eig.end()) - eig.begin());
  const double est = static_cast<double>(eig[imin]);
  out.witness.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.witness[i] = static_cast<double>(vec[i][imin]);

  // Find a shift below the spectrum, then tighten it by bisection.
  double scale = std::max(static_cast<double>(norm) * n, 1e-300);
  double gap = std::max(std::fabs(est) * 1e-6, scale * 1e-30);
  gap = std::max(gap, radius_sum(m).to_double());
  double lo = est - gap;
  bool found = false;
  for (int i = 0; i < 200 && !found; ++i) {
    if (shifted_cholesky_succeeds(m, BallReal(lo, p))) found = true;
    else lo = est - (gap *= 4.0);
  }
  if (found) {
    double hi = est;
    for (int i = 0; i < 60; ++i) {
      double midv = 0.5 * (lo + hi);
      if (midv == lo || midv == hi) break;
      if (shifted_cholesky_succeeds(m, BallReal(midv, p))) lo = midv;
      else hi = midv;
    }
    out.min_eig_lower = BallReal(lo, p);
  } else {
    out.min_eig_lower = BallReal(-HUGE_VAL, 64);
  }

  if (found && lo >= 0) {
    out.verdict = PsdVerdict::psd_certified;
    return out;
  }
  // Rayleigh quotient witness: v^T m v < 0 certifies an eigenvalue < 0.
  BallReal q(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      q += m[i][j] * BallReal(out.witness[i], p) * BallReal(out.witness[j], p);
  out.verdict = q.is_negative() ? PsdVerdict::not_psd_certified : PsdVerdict::undecided;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ClaimSpec {
  const char* label;
  std::vector<long> points;
  const char* value;
};

// The printed value v with d decimals stands for [v - 10^-d/2, v + 10^-d/2].
BallReal printed_interval(const std::string& text, Precision bits) {
  std::size_t dot = text.find('.');
  int decimals = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
  BallReal v = BallReal::from_string(text, bits);
  Mag half = Mag::from_string("5e-" + std::to_string(decimals + 1));
  v.add_error(half);
  return v;
}

}  // namespace

ExperimentReport paper_experiment(const PrecisionContext& ctx, const zeros::ZeroTable& table) {
  const std::vector<ClaimSpec> specs = {
      {"n=3, points {1,2,3}", {1, 2, 3}, "-0.00153356"},
      {"n=4, points {5,6,7,8}", {5, 6, 7, 8}, "-0.0000695685"},
  };
  ExperimentReport rep;
  rep.model_note = std::string(zeros::kTailModel);
  for (const ClaimSpec& spec : specs) {
    Claim c;
    c.label = spec.label;
    for (long x : spec.points) c.points.emplace_back(x, ctx.working_bits);
    c.paper_value_text = spec.value;
    c.paper_value = std::stod(spec.value);

    std::vector<BallReal> pts = c.points;
    try {
      c.route_a = certified_determinant(
          [&](const PrecisionContext& pc) {
            std::vector<BallReal> q;
            for (const auto& x : pts) q.push_back(x.with_precision(pc.working_bits));
            return gram_matrix(q, pc, Route::a).matrix;
          },
          ctx);
    } catch (const PrecisionExhausted&) {
      c.route_a.value = BallReal(0L, ctx.working_bits);
      c.route_a.value.add_error(Mag::infinity());
      c.route_a.verdict = SignVerdict::zero_straddling;
      c.route_a.exhausted = true;
    }

    BallReal claimed = printed_interval(c.paper_value_text, c.route_a.value.precision());
    c.sign_matches_claim = c.route_a.verdict == SignVerdict::negative_certified;
    if (c.route_a.verdict == SignVerdict::zero_straddling) c.status = ClaimStatus::undecided;
    else if (c.route_a.value.overlaps(claimed)) c.status = ClaimStatus::reproduced;
    else c.status = ClaimStatus::refuted;

    // Route b control at the table precision.
    PrecisionContext bctx = ctx;
    bctx.working_bits = std::max(ctx.working_bits, table.precision);
    KernelGram gb = gram_matrix(pts, bctx, Route::b, &table);
    c.route_b_partial = determinant(gb.matrix);
    Matrix widened = gb.matrix;
    Mag half = gb.tail->value * Mag(0.5);
    BallReal shift = BallReal::with_radius(half.get(), half, bctx.working_bits);
    for (auto& row : widened)
      for (auto& x : row) x += shift;
    c.route_b_control = determinant(widened).value;
    c.route_b_consistent = c.route_a.value.overlaps(c.route_b_control);
    c.discrepancy = c.route_a.verdict == SignVerdict::negative_certified && !c.route_b_consistent;
    rep.claims.push_back(std::move(c));
  }
  return rep;
}

}  // namespace licrit::kernel
