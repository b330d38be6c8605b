#include "licrit/zeros.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "licrit/parallel.hpp"
#include "licrit/special_functions.hpp"

namespace licrit::zeros {

namespace {

BallReal point(mpfr_srcptr x, Precision bits) { return BallReal::with_radius(x, Mag(), bits); }

int cmp(const BallReal& a, const BallReal& b) { return mpfr_cmp(a.mid(), b.mid()); }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Number of decimals of a plain positive decimal literal, or -1 if malformed.
int decimals_of(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '+') ? 1 : 0;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (digits == 0) return -1;
  if (i == s.size()) return 0;
  if (s[i] != '.') return -1;
  std::size_t start = ++i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i != s.size() || i == start) return -1;
  return static_cast<int>(i - start);
}

Precision validation_bits(int decimals, double height) {
  double b = 64.0 + 3.33 * decimals + 2.0 * std::log2(height + 2.0);
  return static_cast<Precision>(std::ceil(b / 32.0) * 32.0);
}

}  // namespace

ZeroTable ZeroTable::prefix(std::size_t n) const {
  ZeroTable t = *this;
  if (n < t.zeros.size()) t.zeros.resize(n);
  return t;
}

BallReal TailBound::as_ball(Precision bits) const {
  Mag half = value * Mag(0.5);
  return BallReal::with_radius(half.get(), half, bits);
}

int xi_sign(const BallReal& z, const PrecisionContext& ctx) {
  Precision bits = ctx.working_bits;
  for (int round = 0; round < 4; ++round, bits *= 2) {
    BallReal v = sf::big_xi_real(z, ctx.with_bits(bits));
    if (v.is_positive()) return 1;
    if (v.is_negative()) return -1;
  }
  return 0;
}

ZeroTable import_zeros(std::string_view text, const PrecisionContext& ctx, const ImportOptions& options) {
  struct Entry {
    std::size_t line;
    std::string literal;
    int decimals;
  };
  std::vector<Entry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    std::string line = trim(raw);
    if (!line.empty() && line[0] != '#') {
      int d = decimals_of(line);
      if (d < 0) throw FormatError("line " + std::to_string(line_no) + ": not a decimal ordinate: " + line);
      entries.push_back({line_no, line, d});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  ZeroTable table;
  table.source = Source::imported;
  table.precision = ctx.working_bits;
  table.zeros.reserve(entries.size());
  for (const Entry& e : entries) {
    BallReal v = BallReal::from_string(e.literal, ctx.working_bits);
    if (!v.is_positive()) throw FormatError("line " + std::to_string(e.line) + ": ordinate must be positive");
    if (!table.zeros.empty() && cmp(table.zeros.back(), v) >= 0)
      throw FormatError("line " + std::to_string(e.line) + ": ordinates must be strictly increasing");
    v.add_error(Mag::from_string("1e-" + std::to_string(e.decimals)));
    table.zeros.push_back(std::move(v));
  }

  if (options.validate) {
    std::vector<int> ok = parallel_map(entries.size(), [&](std::size_t i) {
      const Entry& e = entries[i];
      const BallReal& z = table.zeros[i];
      Precision vb = validation_bits(e.decimals, z.mid_double());
      PrecisionContext c = ctx.with_bits(vb);
      mpfr_t x;
      mpfr_init2(x, vb + 64);
      z.lower(x);
      BallReal lo = point(x, vb + 64);
      z.upper(x);
      BallReal hi = point(x, vb + 64);
      mpfr_clear(x);
      int sl = xi_sign(lo, c);
      int sh = xi_sign(hi, c);
      return (sl != 0 && sh != 0 && sl != sh) ? 1 : 0;
    });
    for (std::size_t i = 0; i < ok.size(); ++i)
      if (!ok[i])
        throw ValidationError("line " + std::to_string(entries[i].line) + ": no certified sign change of Xi around " +
                              entries[i].literal);
    table.validated = true;
  }
  return table;
}

BallReal refine_zero(const BallReal& lo, const BallReal& hi, const PrecisionContext& ctx) {
  const Precision wp = ctx.working_bits;
  BallReal a = lo.midpoint_ball().with_precision(wp);
  BallReal b = hi.midpoint_ball().with_precision(wp);
  if (cmp(a, b) > 0) std::swap(a, b);
  const int sa = xi_sign(a, ctx);
  const int sb = xi_sign(b, ctx);
  if (sa == 0 || sb == 0 || sa == sb)
    throw BracketError("Xi has no certified sign change between " + a.to_string(12) + " and " + b.to_string(12));

  Mag goal = ctx.target_radius * Mag(2.0);
  const Mag floor_width = Mag::pow2(-static_cast<long>(wp) + 8) * max(a.abs_upper(), Mag(1.0));
  if (goal < floor_width) goal = floor_width;

  mpfr_t x;
  mpfr_init2(x, wp);
  for (unsigned iter = 0; iter < 4 * static_cast<unsigned>(wp); ++iter) {
    const Mag width = (b - a).abs_upper();
    if (width <= goal) break;

    bool advanced = false;
    if (width < Mag(1e-3)) {
      BallReal X = BallReal::hull(a, b);
      BallReal m = X.midpoint_ball();
      BallReal d = sf::big_xi_derivative_real(X, ctx);
      if (!d.contains_zero()) {
        BallReal n = m - sf::big_xi_real(m, ctx) / d;
        n.lower(x);
        BallReal nlo = point(x, wp);
        n.upper(x);
        BallReal nhi = point(x, wp);
        BallReal na = cmp(nlo, a) > 0 ? nlo : a;
        BallReal nb = cmp(nhi, b) < 0 ? nhi : b;
        if (cmp(na, nb) <= 0 && (nb - na).abs_upper() * Mag(2.0) <= width) {
          a = na;
          b = nb;
          advanced = true;
        }
      }
    }
    if (!advanced) {
      int sm = 0;
      BallReal m(wp);
      for (long num : {4L, 3L, 5L}) {  // 1/2, then 3/8 and 5/8 if undecided
        m = (a + (b - a) * num / 8L).midpoint_ball();
        sm = xi_sign(m, ctx);
        if (sm != 0) break;
      }
      if (sm == 0) break;
      if (sm == sa) a = m;
      else b = m;
    }
  }
  mpfr_clear(x);
  return BallReal::hull(a, b);
}

ZeroTable scan_zeros(double t_max, double step, const PrecisionContext& ctx) {
  if (!(step > 0)) throw std::invalid_argument("scan step must be positive");
  const std::size_t n = t_max > 0 ? static_cast<std::size_t>(std::floor(t_max / step)) + 1 : 0;
  std::vector<int> signs = parallel_map(n, [&](std::size_t j) {
    return xi_sign(BallReal(static_cast<double>(j) * step, ctx.working_bits), ctx);
  });
  std::vector<std::pair<double, double>> brackets;
  std::size_t prev = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (signs[j] == 0) continue;
    if (prev < n && signs[prev] != signs[j]) brackets.emplace_back(prev * step, j * step);
    prev = j;
  }
  ZeroTable table;
  table.source = Source::computed;
  table.precision = ctx.working_bits;
  table.zeros = parallel_map(brackets.size(), [&](std::size_t i) {
    return refine_zero(BallReal(brackets[i].first, ctx.working_bits), BallReal(brackets[i].second, ctx.working_bits),
                       ctx);
  });
  table.validated = true;
  return table;
}

Mag power_tail(const BallReal& cutoff_height, unsigned m) {
  if (m < 2) throw std::invalid_argument("power_tail needs m >= 2");
  // 2 * (1/2pi) * T0^(1-m)/(m-1) * (log(T0/2pi) + 1/(m-1)) at T0 = lower bound of z_N
  mpfr_t t0, two_pi, l, p;
  mpfr_inits2(64, t0, two_pi, l, p, static_cast<mpfr_ptr>(nullptr));
  cutoff_height.lower(t0);
  mpfr_const_pi(two_pi, MPFR_RNDD);
  mpfr_mul_ui(two_pi, two_pi, 2, MPFR_RNDD);
  mpfr_div(l, t0, two_pi, MPFR_RNDU);
  mpfr_log(l, l, MPFR_RNDU);
  if (mpfr_sgn(l) < 0) mpfr_set_zero(l, 1);
  mpfr_set_ui(p, 1, MPFR_RNDU);
  mpfr_div_ui(p, p, m - 1, MPFR_RNDU);
  mpfr_add(l, l, p, MPFR_RNDU);  // log(T0/2pi) + 1/(m-1)
  mpfr_pow_si(p, t0, 1 - static_cast<long>(m), MPFR_RNDU);
  mpfr_mul(l, l, p, MPFR_RNDU);
  mpfr_div_ui(l, l, m - 1, MPFR_RNDU);
  mpfr_div(l, l, two_pi, MPFR_RNDU);
  mpfr_mul_ui(l, l, 2, MPFR_RNDU);
  Mag out;
  mpfr_set(out.raw(), l, MPFR_RNDU);
  mpfr_clears(t0, two_pi, l, p, static_cast<mpfr_ptr>(nullptr));
  return out;
}

TruncatedProduct truncated_product(const BallComplex& z, const ZeroTable& table) {
  if (table.empty()) throw std::invalid_argument("truncated_product needs a nonempty table");
  const Precision wp = std::max(z.precision(), table.precision);
  BallComplex z2 = sqr(z.with_precision(wp));
  BallComplex prod(BallReal(1L, wp));
  BallComplex one = prod;
  for (const BallReal& g : table.zeros) {
    BallReal gw = g.with_precision(wp);
    prod *= one - z2 / (gw * gw);
  }
  // |prod_{n>N}(1 - z^2/z_n^2) - 1| ~ |exp(-z^2 S) - 1| <= exp(|z|^2 S) - 1
  Mag s = power_tail(table.zeros.back(), 2);
  Mag a = z.abs_upper();
  Mag e;
  mpfr_mul(e.raw(), (a * a).get(), s.get(), MPFR_RNDU);
  mpfr_expm1(e.raw(), e.get(), MPFR_RNDU);
  return {prod, e};
}

BallReal ZeroSum::with_tail() const {
  if (tail.unbounded) {
    BallReal r = partial;
    r.add_error(Mag::infinity());
    return r;
  }
  return partial + tail.as_ball(partial.precision());
}

ZeroSum zero_sum(const BallReal& z_in, unsigned k, const ZeroTable& table) {
  if (table.empty()) throw std::invalid_argument("zero_sum needs a nonempty table");
  if (z_in.is_negative() || (!z_in.contains_zero() && !z_in.is_positive()))
    throw std::invalid_argument("zero_sum needs z >= 0");
  const Precision wp = std::max(z_in.precision(), table.precision);
  BallReal z = z_in.with_precision(wp);
  BallReal sum(wp);
  for (const BallReal& g : table.zeros) {
    BallReal gw = g.with_precision(wp);
    BallReal d = z + gw * gw;
    sum += BallReal(1L, wp) / pow_ui(d, k + 1);
  }
  ZeroSum out{sum, TailBound()};
  out.tail.cutoff_index = table.count();
  out.tail.cutoff_height = table.zeros.back();
  out.tail.kind = (k == 0 && z.is_exact() && z.contains_zero()) ? TailKind::sum_reciprocal_squares
                                                                 : TailKind::sum_power_k;
  out.tail.value = power_tail(table.zeros.back(), 2 * k + 2);
  return out;
}

}  // namespace licrit::zeros
