#include "licrit/contour.hpp"

#include <cmath>
#include <numbers>

#include "licrit/parallel.hpp"

namespace licrit::contour {

namespace {

constexpr int kMaxSplitDepth = 3;

// |f| over the box [x +/- r] x [y +/- r]; boxes whose enclosure fails are
// split into four quarters a few times before giving up.
Mag box_bound(const Function& f, double x, double y, double r, int depth) {
  BallReal bx(x, 64), by(y, 64);
  bx.add_error(Mag(r));
  by.add_error(Mag(r));
  try {
    BallComplex v = f(BallComplex(bx, by));
    if (v.is_finite()) return v.abs_upper();
  } catch (const Error&) {
  }
  if (depth >= kMaxSplitDepth) return Mag::infinity();
  const double h = 0.5 * r;
  const double pad = h * 1e-9;
  Mag b;
  for (int i = 0; i < 4; ++i) {
    double cx = x + ((i & 1) ? h : -h);
    double cy = y + ((i & 2) ? h : -h);
    b = max(b, box_bound(f, cx, cy, h + pad, depth + 1));
    if (!b.is_finite()) break;
  }
  return b;
}

}  // namespace

Mag circle_bound(const Function& f, double R, unsigned boxes) {
  const double dtheta = 2.0 * std::numbers::pi / boxes;
  const double pad = R * dtheta * 0.5 * 1.0001 + 1e-12 * R;
  std::vector<Mag> parts = parallel_map(boxes, [&](std::size_t j) {
    double theta = (static_cast<double>(j) + 0.5) * dtheta;
    return box_bound(f, R * std::cos(theta), R * std::sin(theta), pad, 0);
  });
  Mag b;
  for (const Mag& m : parts) b = max(b, m);
  return b;
}

TaylorCoefficients taylor_coefficients(const Function& f, unsigned order, Precision bits,
                                       const Options& opt) {
  if (!(opt.radius > 0 && opt.radius < opt.bound_radius))
    throw std::invalid_argument("contour radii must satisfy 0 < r < R");
  TaylorCoefficients out;
  out.bound = circle_bound(f, opt.bound_radius, opt.boxes);
  if (!out.bound.is_finite()) throw PrecisionExhausted("no finite bound on the outer circle");

  const double log2_ratio = std::log2(opt.bound_radius / opt.radius);
  unsigned M = opt.nodes;
  if (M == 0) {
    double l2b = out.bound.is_zero() ? 0.0 : static_cast<double>(out.bound.exponent());
    double need = (static_cast<double>(bits) + 8.0 + std::max(0.0, l2b) +
                   order * std::log2(1.0 / opt.radius)) / log2_ratio;
    M = static_cast<unsigned>(std::ceil(need)) + order + 1;
  }
  M += M % 2;
  if (M <= order) throw std::invalid_argument("contour needs more nodes than coefficients");
  out.nodes = M;

  const Precision wp = bits + 16;
  const BallReal two_pi = constant(Constant::pi, wp) * 2L;
  // e^(2 pi i m / M), m = 0..M-1
  std::vector<BallComplex> roots;
  roots.reserve(M);
  for (unsigned m = 0; m < M; ++m) {
    BallReal ang = two_pi * BallReal::rational(m, M, wp);
    roots.emplace_back(cos(ang), sin(ang));
  }
  const BallReal r(opt.radius, wp);
  const unsigned evaluated = opt.real_on_axis ? M / 2 + 1 : M;
  std::vector<BallComplex> values =
      parallel_map(evaluated, [&](std::size_t j) { return f(roots[j] * r); });

  if (opt.track_branch) {
    const double limit = std::numbers::pi / 2;
    for (unsigned j = 0; j + 1 < evaluated; ++j) {
      double d = std::fabs(values[j + 1].imag().mid_double() - values[j].imag().mid_double());
      if (!(d < limit)) throw PrecisionExhausted("logarithm branch ambiguous between contour nodes");
    }
    if (!opt.real_on_axis) {
      double d = std::fabs(values[0].imag().mid_double() - values[M - 1].imag().mid_double());
      if (!(d < limit)) throw PrecisionExhausted("logarithm branch ambiguous between contour nodes");
    }
  }

  // Aliasing: B R^-k q/(1-q), q = (r/R)^M
  const double q = std::exp2(-log2_ratio * M);
  const Mag alias_base = out.bound * Mag(q * (1 + 1e-12)) / Mag((1.0 - q) * (1 - 1e-12));

  out.coefficients.reserve(order + 1);
  BallReal rk(1L, wp);  // r^k
  for (unsigned k = 0; k <= order; ++k) {
    BallComplex acc(wp);
    if (opt.real_on_axis) {
      BallReal sum = values[0].real();
      BallReal last = values[M / 2].real();
      if (k % 2) sum -= last;
      else sum += last;
      BallReal inner(wp);
      for (unsigned j = 1; j < M / 2; ++j) {
        const BallComplex& e = roots[(static_cast<unsigned long>(j) * k) % M];
        // Re(f_j * conj(e))
        inner += values[j].real() * e.real() + values[j].imag() * e.imag();
      }
      sum += inner * 2L;
      acc = BallComplex(sum);
    } else {
      for (unsigned j = 0; j < M; ++j) acc += values[j] * roots[(M - (static_cast<unsigned long>(j) * k) % M) % M];
    }
    acc = acc / (rk * static_cast<long>(M));
    Mag alias = alias_base * Mag(std::exp2(static_cast<double>(k) * -std::log2(opt.bound_radius)) * (1 + 1e-12));
    acc.real().add_error(alias);
    if (!opt.real_on_axis) acc.imag().add_error(alias);
    out.coefficients.push_back(acc.with_precision(bits));
    rk = rk * r;
  }
  return out;
}

}  // namespace licrit::contour
