#include "licrit/ball.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace licrit {

namespace {

// Short scratch number used for rounded-down bounds.
struct Scratch {
  mpfr_t v;
  explicit Scratch(Precision bits = Mag::kBits) { mpfr_init2(v, bits); mpfr_set_zero(v, 1); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

// Half-ulp bound (taken as a full ulp) for a rounded result.
void add_rounding(Mag& rad, mpfr_srcptr mid, int ternary) {
  if (ternary == 0) return;
  if (!mpfr_number_p(mid)) {
    rad = Mag::infinity();
    return;
  }
  if (mpfr_zero_p(mid)) {
    rad += Mag::pow2(mpfr_get_emin());
    return;
  }
  rad += Mag::pow2(mpfr_get_exp(mid) - mpfr_get_prec(mid));
}

// Lower bound of |m| - r, clamped at zero.
void abs_minus_rad_down(mpfr_ptr out, mpfr_srcptr m, const Mag& r) {
  mpfr_abs(out, m, MPFR_RNDD);  // out has Mag::kBits, rounds down
  mpfr_sub(out, out, r.get(), MPFR_RNDD);
  if (mpfr_sgn(out) < 0) mpfr_set_zero(out, 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Mag

void Mag::init() {
  mpfr_custom_init(limbs_, kBits);
  mpfr_custom_init_set(value_, MPFR_ZERO_KIND, 0, kBits, limbs_);
}

Mag::Mag() { init(); }

Mag::Mag(double v) {
  if (!(v >= 0)) throw std::invalid_argument("Mag must be nonnegative");
  init();
  mpfr_set_d(value_, v, MPFR_RNDU);
}

Mag::Mag(const Mag& other) {
  init();
  mpfr_set(value_, other.value_, MPFR_RNDU);
}

Mag::Mag(Mag&& other) noexcept {
  init();
  mpfr_set(value_, other.value_, MPFR_RNDU);
}

Mag& Mag::operator=(const Mag& other) {
  if (this != &other) mpfr_set(value_, other.value_, MPFR_RNDU);
  return *this;
}

Mag& Mag::operator=(Mag&& other) noexcept {
  if (this != &other) mpfr_set(value_, other.value_, MPFR_RNDU);
  return *this;
}

Mag::~Mag() = default;

Mag Mag::from_string(std::string_view text) {
  Mag m;
  std::string s(text);
  if (mpfr_set_str(m.value_, s.c_str(), 10, MPFR_RNDU) != 0 || !mpfr_number_p(m.value_))
    throw std::invalid_argument("not a number: " + s);
  if (mpfr_sgn(m.value_) < 0) throw std::invalid_argument("negative magnitude: " + s);
  return m;
}

Mag Mag::abs_of(mpfr_srcptr x) {
  Mag m;
  mpfr_abs(m.value_, x, MPFR_RNDU);
  return m;
}

Mag Mag::pow2(long e) {
  Mag m;
  mpfr_set_ui_2exp(m.value_, 1, e, MPFR_RNDU);
  return m;
}

Mag Mag::infinity() {
  Mag m;
  mpfr_set_inf(m.value_, 1);
  return m;
}

bool Mag::is_zero() const { return mpfr_zero_p(value_) != 0; }
bool Mag::is_finite() const { return mpfr_number_p(value_) != 0; }
double Mag::to_double() const { return mpfr_get_d(value_, MPFR_RNDU); }

long Mag::exponent() const {
  if (is_zero()) return mpfr_get_emin();
  if (!is_finite()) return mpfr_get_emax();
  return mpfr_get_exp(value_);
}

Mag& Mag::operator+=(const Mag& o) {
  mpfr_add(value_, value_, o.value_, MPFR_RNDU);
  return *this;
}

Mag& Mag::operator*=(const Mag& o) {
  if (is_zero() || o.is_zero()) {
    mpfr_set_zero(value_, 1);
    return *this;
  }
  mpfr_mul(value_, value_, o.value_, MPFR_RNDU);
  return *this;
}

Mag operator/(const Mag& a, const Mag& b) {
  Mag r;
  if (a.is_zero()) return r;
  if (b.is_zero()) return Mag::infinity();
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDU);
  return r;
}

Mag max(const Mag& a, const Mag& b) { return a < b ? b : a; }
Mag min(const Mag& a, const Mag& b) { return a < b ? a : b; }
bool operator<(const Mag& a, const Mag& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
bool operator<=(const Mag& a, const Mag& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
bool operator==(const Mag& a, const Mag& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

Mag Mag::pow_ui(unsigned long n) const {
  Mag r;
  mpfr_pow_ui(r.value_, value_, n, MPFR_RNDU);
  return r;
}

Mag Mag::sqrt() const {
  Mag r;
  mpfr_sqrt(r.value_, value_, MPFR_RNDU);
  return r;
}

// ---------------------------------------------------------------------------
// PrecisionContext

PrecisionContext::PrecisionContext(Precision bits, Mag target, Precision max)
    : working_bits(bits), target_radius(std::move(target)), max_bits(max) {
  validate();
}

void PrecisionContext::validate() const {
  if (working_bits < kMinWorkingBits)
    throw std::invalid_argument("working_bits must be at least 64");
  if (max_bits < working_bits) throw std::invalid_argument("max_bits must be >= working_bits");
  if (!target_radius.is_finite()) throw std::invalid_argument("target_radius must be finite");
}

PrecisionContext PrecisionContext::with_bits(Precision bits) const {
  PrecisionContext c = *this;
  c.working_bits = bits;
  if (c.max_bits < bits) c.max_bits = bits;
  return c;
}

// ---------------------------------------------------------------------------
// BallReal

class BallOps {
 public:
  static BallReal make(Precision bits) { return BallReal(bits); }
  static mpfr_ptr mid(BallReal& x) { return x.mid_; }
  static Mag& rad(BallReal& x) { return x.rad_; }
};

BallReal::BallReal(Precision bits) {
  mpfr_init2(mid_, bits);
  mpfr_set_zero(mid_, 1);
}

BallReal::BallReal(long value, Precision bits) {
  mpfr_init2(mid_, bits);
  int t = mpfr_set_si(mid_, value, MPFR_RNDN);
  add_rounding(rad_, mid_, t);
}

BallReal::BallReal(double value, Precision bits) {
  mpfr_init2(mid_, bits);
  int t = mpfr_set_d(mid_, value, MPFR_RNDN);
  add_rounding(rad_, mid_, t);
}

BallReal::BallReal(const BallReal& other) : rad_(other.rad_) {
  mpfr_init2(mid_, other.precision());
  mpfr_set(mid_, other.mid_, MPFR_RNDN);
}

BallReal::BallReal(BallReal&& other) noexcept : rad_(std::move(other.rad_)) {
  mpfr_init2(mid_, mpfr_get_prec(other.mid_));
  mpfr_swap(mid_, other.mid_);
}

BallReal& BallReal::operator=(const BallReal& other) {
  if (this == &other) return *this;
  mpfr_set_prec(mid_, other.precision());
  mpfr_set(mid_, other.mid_, MPFR_RNDN);
  rad_ = other.rad_;
  return *this;
}

BallReal& BallReal::operator=(BallReal&& other) noexcept {
  mpfr_swap(mid_, other.mid_);
  rad_ = std::move(other.rad_);
  return *this;
}

BallReal::~BallReal() { mpfr_clear(mid_); }

BallReal BallReal::from_string(std::string_view text, Precision bits) {
  BallReal r(bits);
  std::string s(text);
  char* end = nullptr;
  int t = mpfr_strtofr(r.mid_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0' || !mpfr_number_p(r.mid_))
    throw std::invalid_argument("not a decimal number: " + s);
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

BallReal BallReal::with_radius(mpfr_srcptr mid, const Mag& rad, Precision bits) {
  BallReal r(bits);
  int t = mpfr_set(r.mid_, mid, MPFR_RNDN);
  r.rad_ = rad;
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

BallReal BallReal::rational(long p, unsigned long q, Precision bits) {
  BallReal r(bits);
  mpq_t v;
  mpq_init(v);
  mpq_set_si(v, p, q);
  mpq_canonicalize(v);
  int t = mpfr_set_q(r.mid_, v, MPFR_RNDN);
  mpq_clear(v);
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

BallReal BallReal::hull(const BallReal& lo, const BallReal& hi) {
  Precision bits = std::max(lo.precision(), hi.precision());
  mpfr_t l, u;
  mpfr_init2(l, bits + 8);
  mpfr_init2(u, bits + 8);
  lo.lower(l);
  hi.upper(u);
  BallReal a = lo, b = hi;
  if (mpfr_cmp(l, u) > 0) mpfr_swap(l, u);
  // Also include the other endpoints so the hull covers both balls entirely.
  {
    mpfr_t t;
    mpfr_init2(t, bits + 8);
    hi.lower(t);
    if (mpfr_cmp(t, l) < 0) mpfr_set(l, t, MPFR_RNDD);
    lo.upper(t);
    if (mpfr_cmp(t, u) > 0) mpfr_set(u, t, MPFR_RNDU);
    mpfr_clear(t);
  }
  BallReal r(bits);
  mpfr_add(r.mid_, l, u, MPFR_RNDN);
  mpfr_div_2ui(r.mid_, r.mid_, 1, MPFR_RNDN);
  Scratch d1, d2;
  mpfr_sub(d1.v, u, r.mid_, MPFR_RNDU);
  mpfr_sub(d2.v, r.mid_, l, MPFR_RNDU);
  mpfr_max(r.rad_.raw(), d1.v, d2.v, MPFR_RNDU);
  if (mpfr_sgn(r.rad_.get()) < 0) mpfr_set_zero(r.rad_.raw(), 1);
  mpfr_clear(l);
  mpfr_clear(u);
  return r;
}

double BallReal::mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
long double BallReal::mid_long_double() const { return mpfr_get_ld(mid_, MPFR_RNDN); }

bool BallReal::is_finite() const { return mpfr_number_p(mid_) && rad_.is_finite(); }

bool BallReal::contains_zero() const { return mpfr_cmpabs(mid_, rad_.get()) <= 0; }

bool BallReal::is_positive() const {
  return is_finite() && mpfr_sgn(mid_) > 0 && mpfr_cmpabs(mid_, rad_.get()) > 0;
}

bool BallReal::is_negative() const {
  return is_finite() && mpfr_sgn(mid_) < 0 && mpfr_cmpabs(mid_, rad_.get()) > 0;
}

bool BallReal::contains(const BallReal& inner) const {
  if (!is_finite() || !inner.is_finite()) return false;
  Scratch d;
  mpfr_sub(d.v, inner.mid_, mid_, MPFR_RNDA);
  mpfr_abs(d.v, d.v, MPFR_RNDU);
  mpfr_add(d.v, d.v, inner.rad_.get(), MPFR_RNDU);
  return mpfr_lessequal_p(d.v, rad_.get()) != 0;
}

bool BallReal::contains(double x) const { return contains(BallReal(x, 64)); }

bool BallReal::overlaps(const BallReal& other) const {
  if (!is_finite() || !other.is_finite()) return false;
  Scratch d, s;
  mpfr_sub(d.v, other.mid_, mid_, MPFR_RNDZ);
  mpfr_abs(d.v, d.v, MPFR_RNDD);
  mpfr_add(s.v, rad_.get(), other.rad_.get(), MPFR_RNDU);
  return mpfr_lessequal_p(d.v, s.v) != 0;
}

Mag BallReal::abs_upper() const { return Mag::abs_of(mid_) + rad_; }

Mag BallReal::abs_lower() const {
  Mag m;
  abs_minus_rad_down(m.raw(), mid_, rad_);
  return m;
}

void BallReal::lower(mpfr_ptr out) const {
  mpfr_sub(out, mid_, rad_.get(), MPFR_RNDD);
}

void BallReal::upper(mpfr_ptr out) const {
  mpfr_add(out, mid_, rad_.get(), MPFR_RNDU);
}

BallReal& BallReal::add_error(const Mag& err) {
  rad_ += err;
  return *this;
}

BallReal BallReal::with_precision(Precision bits) const {
  BallReal r(bits);
  int t = mpfr_set(r.mid_, mid_, MPFR_RNDN);
  r.rad_ = rad_;
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

BallReal BallReal::midpoint_ball() const {
  BallReal r(precision());
  mpfr_set(r.mid_, mid_, MPFR_RNDN);
  return r;
}

bool BallReal::identical(const BallReal& other) const {
  auto same = [](mpfr_srcptr a, mpfr_srcptr b) {
    if (mpfr_nan_p(a) || mpfr_nan_p(b)) return mpfr_nan_p(a) && mpfr_nan_p(b);
    return mpfr_get_prec(a) == mpfr_get_prec(b) && mpfr_equal_p(a, b) &&
           mpfr_signbit(a) == mpfr_signbit(b);
  };
  return same(mid_, other.mid_) && same(rad_.get(), other.rad_.get());
}

std::string BallReal::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "[%.*Rg +/- %.3Rg]", digits, mid_, rad_.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::ostream& operator<<(std::ostream& os, const BallReal& x) { return os << x.to_string(); }

BallReal& BallReal::operator+=(const BallReal& o) { return *this = *this + o; }
BallReal& BallReal::operator-=(const BallReal& o) { return *this = *this - o; }
BallReal& BallReal::operator*=(const BallReal& o) { return *this = *this * o; }
BallReal& BallReal::operator/=(const BallReal& o) { return *this = *this / o; }

BallReal operator+(const BallReal& a, const BallReal& b) {
  BallReal r(std::max(a.precision(), b.precision()));
  int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  r.rad_ = a.rad_ + b.rad_;
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

BallReal operator-(const BallReal& a, const BallReal& b) {
  BallReal r(std::max(a.precision(), b.precision()));
  int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  r.rad_ = a.rad_ + b.rad_;
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

BallReal operator-(const BallReal& a) {
  BallReal r(a.precision());
  mpfr_neg(r.mid_, a.mid_, MPFR_RNDN);
  r.rad_ = a.rad_;
  return r;
}

BallReal operator*(const BallReal& a, const BallReal& b) {
  BallReal r(std::max(a.precision(), b.precision()));
  int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  r.rad_ = Mag::abs_of(a.mid_) * b.rad_ + Mag::abs_of(b.mid_) * a.rad_ + a.rad_ * b.rad_;
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

BallReal operator*(const BallReal& a, long n) {
  BallReal r(a.precision());
  int t = mpfr_mul_si(r.mid_, a.mid_, n, MPFR_RNDN);
  r.rad_ = a.rad_ * Mag(static_cast<double>(n < 0 ? -n : n));
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

BallReal operator/(const BallReal& a, long n) {
  if (n == 0) throw DivisionByZeroBall("division by exact zero");
  BallReal r(a.precision());
  int t = mpfr_div_si(r.mid_, a.mid_, n, MPFR_RNDN);
  r.rad_ = a.rad_ / Mag(static_cast<double>(n < 0 ? -n : n));
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

BallReal operator/(const BallReal& a, const BallReal& b) {
  if (b.contains_zero() || !b.is_finite())
    throw DivisionByZeroBall("divisor ball contains zero");
  BallReal r(std::max(a.precision(), b.precision()));
  int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  if (!b.rad_.is_zero() || !a.rad_.is_zero()) {
    Mag num = Mag::abs_of(a.mid_) * b.rad_ + Mag::abs_of(b.mid_) * a.rad_;
    Scratch den, low;
    mpfr_abs(den.v, b.mid_, MPFR_RNDD);
    abs_minus_rad_down(low.v, b.mid_, b.rad_);
    mpfr_mul(den.v, den.v, low.v, MPFR_RNDD);
    Mag den_mag;
    mpfr_set(den_mag.raw(), den.v, MPFR_RNDD);
    r.rad_ = num / den_mag;
  }
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

BallReal abs(const BallReal& x) {
  BallReal r = x;
  mpfr_abs(BallOps::mid(r), x.mid(), MPFR_RNDN);
  if (x.contains_zero()) {
    // [0, |m| + r] re-centred.
    Mag up = x.abs_upper();
    BallReal zero(x.precision());
    BallReal top = BallReal::with_radius(up.get(), Mag(), x.precision());
    top.add_error(Mag::pow2(up.exponent() - x.precision()));
    return BallReal::hull(zero, top);
  }
  return r;
}

BallReal sqr(const BallReal& x) {
  BallReal r(x.precision());
  int t = mpfr_sqr(BallOps::mid(r), x.mid(), MPFR_RNDN);
  BallOps::rad(r) = Mag(2.0) * Mag::abs_of(x.mid()) * x.rad() + x.rad() * x.rad();
  add_rounding(BallOps::rad(r), r.mid(), t);
  return r;
}

BallReal exp(const BallReal& x) {
  BallReal r(x.precision());
  int t = mpfr_exp(BallOps::mid(r), x.mid(), MPFR_RNDN);
  Mag& rad = BallOps::rad(r);
  if (!x.rad().is_zero()) {
    Mag e1;
    mpfr_expm1(e1.raw(), x.rad().get(), MPFR_RNDU);
    Mag top = Mag::abs_of(r.mid());
    top += Mag::pow2(mpfr_number_p(r.mid()) && !mpfr_zero_p(r.mid())
                         ? mpfr_get_exp(r.mid()) - r.precision()
                         : mpfr_get_emin());
    rad = top * e1;
  }
  add_rounding(rad, r.mid(), t);
  return r;
}

BallReal expm1(const BallReal& x) {
  BallReal r(x.precision());
  int t = mpfr_expm1(BallOps::mid(r), x.mid(), MPFR_RNDN);
  Mag& rad = BallOps::rad(r);
  if (!x.rad().is_zero()) {
    // |d/dx expm1| = e^x <= e^(m+r)
    Scratch hi;
    mpfr_add(hi.v, x.mid(), x.rad().get(), MPFR_RNDU);
    mpfr_exp(hi.v, hi.v, MPFR_RNDU);
    Mag d;
    mpfr_set(d.raw(), hi.v, MPFR_RNDU);
    rad = d * x.rad();
  }
  add_rounding(rad, r.mid(), t);
  return r;
}

BallReal log(const BallReal& x) {
  if (!x.is_positive()) throw DomainErrorBall("log of a ball that is not strictly positive");
  BallReal r(x.precision());
  int t = mpfr_log(BallOps::mid(r), x.mid(), MPFR_RNDN);
  Mag& rad = BallOps::rad(r);
  if (!x.rad().is_zero()) {
    // log(m) - log(m - r) = -log1p(-r/m)
    Scratch q;
    mpfr_div(q.v, x.rad().get(), x.mid(), MPFR_RNDU);
    mpfr_neg(q.v, q.v, MPFR_RNDD);
    mpfr_log1p(q.v, q.v, MPFR_RNDD);
    mpfr_neg(rad.raw(), q.v, MPFR_RNDU);
  }
  add_rounding(rad, r.mid(), t);
  return r;
}

BallReal sqrt(const BallReal& x) {
  if (!(x.is_positive() || (x.is_exact() && mpfr_zero_p(x.mid()))))
    throw DomainErrorBall("sqrt of a ball that is not strictly positive");
  BallReal r(x.precision());
  int t = mpfr_sqrt(BallOps::mid(r), x.mid(), MPFR_RNDN);
  Mag& rad = BallOps::rad(r);
  if (!x.rad().is_zero()) {
    Scratch s;
    mpfr_sqrt(s.v, x.mid(), MPFR_RNDD);
    Mag den;
    mpfr_set(den.raw(), s.v, MPFR_RNDD);
    rad = x.rad() / den;
  }
  add_rounding(rad, r.mid(), t);
  return r;
}

BallReal pow(const BallReal& base, const BallReal& exponent) {
  return exp(exponent * log(base));
}

BallReal pow_ui(const BallReal& base, unsigned long n) {
  BallReal result(1L, base.precision());
  BallReal b = base;
  while (n > 0) {
    if (n & 1UL) result *= b;
    n >>= 1;
    if (n > 0) b = sqr(b);
  }
  return result;
}

BallReal sin(const BallReal& x) {
  BallReal r(x.precision());
  int t = mpfr_sin(BallOps::mid(r), x.mid(), MPFR_RNDN);
  BallOps::rad(r) = min(x.rad(), Mag(2.0));
  add_rounding(BallOps::rad(r), r.mid(), t);
  return r;
}

BallReal cos(const BallReal& x) {
  BallReal r(x.precision());
  int t = mpfr_cos(BallOps::mid(r), x.mid(), MPFR_RNDN);
  BallOps::rad(r) = min(x.rad(), Mag(2.0));
  add_rounding(BallOps::rad(r), r.mid(), t);
  return r;
}

BallReal atan(const BallReal& x) {
  BallReal r(x.precision());
  int t = mpfr_atan(BallOps::mid(r), x.mid(), MPFR_RNDN);
  BallOps::rad(r) = x.rad();
  add_rounding(BallOps::rad(r), r.mid(), t);
  return r;
}

BallReal atan2(const BallReal& y, const BallReal& x) {
  if (y.contains_zero() && !x.is_positive())
    throw DomainErrorBall("atan2: ball touches the branch cut");
  Precision bits = std::max(x.precision(), y.precision());
  BallReal r(bits);
  int t = mpfr_atan2(BallOps::mid(r), y.mid(), x.mid(), MPFR_RNDN);
  Mag delta = x.rad() + y.rad();
  if (!delta.is_zero()) {
    // |arg w - arg z| <= (pi/2) * delta / |z| when |z| > delta.
    Scratch h, a;
    mpfr_hypot(h.v, x.mid(), y.mid(), MPFR_RNDD);
    mpfr_sub(a.v, h.v, delta.get(), MPFR_RNDD);
    if (mpfr_sgn(a.v) <= 0) throw DomainErrorBall("atan2: ball too close to the origin");
    Mag den;
    mpfr_set(den.raw(), h.v, MPFR_RNDD);
    BallOps::rad(r) = Mag(1.5707963267948967) * delta / den;
  }
  add_rounding(BallOps::rad(r), r.mid(), t);
  return r;
}

namespace {

// f(mid) with radius max|f'| * rad, where |f'| <= cosh(|mid| + rad) for both
// sinh and cosh.
template <typename Eval>
BallReal hyperbolic(const BallReal& x, Eval eval) {
  BallReal r(x.precision());
  int t = eval(BallOps::mid(r), x.mid());
  Mag& rad = BallOps::rad(r);
  if (!x.rad().is_zero()) {
    Scratch hi;
    mpfr_abs(hi.v, x.mid(), MPFR_RNDU);
    mpfr_add(hi.v, hi.v, x.rad().get(), MPFR_RNDU);
    mpfr_cosh(hi.v, hi.v, MPFR_RNDU);
    Mag d;
    mpfr_set(d.raw(), hi.v, MPFR_RNDU);
    rad = d * x.rad();
  }
  add_rounding(rad, r.mid(), t);
  return r;
}

}  // namespace

BallReal cosh(const BallReal& x) {
  return hyperbolic(x, [](mpfr_ptr out, mpfr_srcptr in) { return mpfr_cosh(out, in, MPFR_RNDN); });
}

BallReal sinh(const BallReal& x) {
  return hyperbolic(x, [](mpfr_ptr out, mpfr_srcptr in) { return mpfr_sinh(out, in, MPFR_RNDN); });
}

BallReal min(const BallReal& a, const BallReal& b) {
  Precision bits = std::max(a.precision(), b.precision());
  mpfr_t la, lb, ua, ub;
  for (auto* p : {&la, &lb, &ua, &ub}) mpfr_init2(*p, bits + 8);
  a.lower(la);
  b.lower(lb);
  a.upper(ua);
  b.upper(ub);
  mpfr_min(la, la, lb, MPFR_RNDD);
  mpfr_min(ua, ua, ub, MPFR_RNDU);
  BallReal lo = BallReal::with_radius(la, Mag(), bits + 8);
  BallReal hi = BallReal::with_radius(ua, Mag(), bits + 8);
  for (auto* p : {&la, &lb, &ua, &ub}) mpfr_clear(*p);
  return BallReal::hull(lo, hi).with_precision(bits);
}

BallReal max(const BallReal& a, const BallReal& b) { return -min(-a, -b); }

// ---------------------------------------------------------------------------
// BallComplex

BallComplex::BallComplex(Precision bits) : re_(bits), im_(bits) {}
BallComplex::BallComplex(BallReal re) : re_(std::move(re)), im_(re_.precision()) {}
BallComplex::BallComplex(BallReal re, BallReal im) : re_(std::move(re)), im_(std::move(im)) {}
BallComplex::BallComplex(double re, double im, Precision bits) : re_(re, bits), im_(im, bits) {}

Precision BallComplex::precision() const { return std::max(re_.precision(), im_.precision()); }
bool BallComplex::is_finite() const { return re_.is_finite() && im_.is_finite(); }
bool BallComplex::contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
bool BallComplex::contains(const BallComplex& inner) const {
  return re_.contains(inner.re_) && im_.contains(inner.im_);
}
bool BallComplex::overlaps(const BallComplex& other) const {
  return re_.overlaps(other.re_) && im_.overlaps(other.im_);
}
Mag BallComplex::rad() const { return max(re_.rad(), im_.rad()); }

Mag BallComplex::abs_upper() const {
  Mag a = re_.abs_upper(), b = im_.abs_upper();
  return (a * a + b * b).sqrt();
}

Mag BallComplex::abs_lower() const {
  Scratch a, b;
  mpfr_set(a.v, re_.abs_lower().get(), MPFR_RNDD);
  mpfr_set(b.v, im_.abs_lower().get(), MPFR_RNDD);
  mpfr_sqr(a.v, a.v, MPFR_RNDD);
  mpfr_sqr(b.v, b.v, MPFR_RNDD);
  mpfr_add(a.v, a.v, b.v, MPFR_RNDD);
  mpfr_sqrt(a.v, a.v, MPFR_RNDD);
  Mag m;
  mpfr_set(m.raw(), a.v, MPFR_RNDD);
  return m;
}

BallComplex BallComplex::conj() const { return BallComplex(re_, -im_); }

BallComplex BallComplex::with_precision(Precision bits) const {
  return BallComplex(re_.with_precision(bits), im_.with_precision(bits));
}

bool BallComplex::identical(const BallComplex& other) const {
  return re_.identical(other.re_) && im_.identical(other.im_);
}

BallComplex& BallComplex::operator+=(const BallComplex& o) { return *this = *this + o; }
BallComplex& BallComplex::operator-=(const BallComplex& o) { return *this = *this - o; }
BallComplex& BallComplex::operator*=(const BallComplex& o) { return *this = *this * o; }
BallComplex& BallComplex::operator/=(const BallComplex& o) { return *this = *this / o; }

BallComplex operator+(const BallComplex& a, const BallComplex& b) {
  return BallComplex(a.re_ + b.re_, a.im_ + b.im_);
}
BallComplex operator-(const BallComplex& a, const BallComplex& b) {
  return BallComplex(a.re_ - b.re_, a.im_ - b.im_);
}
BallComplex operator-(const BallComplex& a) { return BallComplex(-a.re_, -a.im_); }

BallComplex operator*(const BallComplex& a, const BallComplex& b) {
  if (b.im_.is_exact() && mpfr_zero_p(b.im_.mid())) return a * b.re_;
  if (a.im_.is_exact() && mpfr_zero_p(a.im_.mid())) return b * a.re_;
  return BallComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

BallComplex operator*(const BallComplex& a, const BallReal& b) {
  return BallComplex(a.re_ * b, a.im_ * b);
}
BallComplex operator*(const BallReal& a, const BallComplex& b) { return b * a; }
BallComplex operator/(const BallComplex& a, const BallReal& b) {
  return BallComplex(a.re_ / b, a.im_ / b);
}

BallComplex operator/(const BallComplex& a, const BallComplex& b) {
  if (b.im_.is_exact() && mpfr_zero_p(b.im_.mid())) return a / b.re_;
  return a * inv(b);
}

std::string BallComplex::to_string(int digits) const {
  return re_.to_string(digits) + " + i*" + im_.to_string(digits);
}

std::ostream& operator<<(std::ostream& os, const BallComplex& z) { return os << z.to_string(); }

BallReal norm(const BallComplex& z) { return sqr(z.real()) + sqr(z.imag()); }

BallReal abs(const BallComplex& z) {
  if (z.imag().is_exact() && mpfr_zero_p(z.imag().mid())) return abs(z.real());
  BallReal n = norm(z);
  if (n.is_positive()) return sqrt(n);
  return abs(z.real()) + abs(z.imag());  // crude but valid when near 0
}

BallComplex sqr(const BallComplex& z) {
  return BallComplex(sqr(z.real()) - sqr(z.imag()), (z.real() * z.imag()) * 2L);
}

BallComplex inv(const BallComplex& z) {
  BallReal n = norm(z);
  if (!n.is_positive()) throw DivisionByZeroBall("complex divisor ball contains zero");
  return BallComplex(z.real() / n, -z.imag() / n);
}

BallComplex exp(const BallComplex& z) {
  BallReal m = exp(z.real());
  if (z.imag().is_exact() && mpfr_zero_p(z.imag().mid())) return BallComplex(m, BallReal(m.precision()));
  return BallComplex(m * cos(z.imag()), m * sin(z.imag()));
}

BallReal arg(const BallComplex& z) { return atan2(z.imag(), z.real()); }

BallComplex log(const BallComplex& z) {
  if (z.imag().is_exact() && mpfr_zero_p(z.imag().mid()) && z.real().is_positive())
    return BallComplex(log(z.real()), BallReal(z.precision()));
  BallReal n = norm(z);
  if (!n.is_positive()) throw DomainErrorBall("log of a complex ball containing zero");
  return BallComplex(log(n) / 2L, arg(z));
}

BallComplex sqrt(const BallComplex& z) {
  if (z.imag().is_exact() && mpfr_zero_p(z.imag().mid()) && z.real().is_positive())
    return BallComplex(sqrt(z.real()), BallReal(z.precision()));
  BallComplex h = log(z);
  return exp(BallComplex(h.real() / 2L, h.imag() / 2L));
}

BallComplex pow(const BallComplex& base, const BallComplex& exponent) {
  return exp(exponent * log(base));
}

BallComplex pow_ui(const BallComplex& base, unsigned long n) {
  BallComplex result(BallReal(1L, base.precision()));
  BallComplex b = base;
  while (n > 0) {
    if (n & 1UL) result *= b;
    n >>= 1;
    if (n > 0) b = sqr(b);
  }
  return result;
}

BallComplex sin(const BallComplex& z) {
  if (z.imag().is_exact() && mpfr_zero_p(z.imag().mid())) return BallComplex(sin(z.real()));
  return BallComplex(sin(z.real()) * cosh(z.imag()), cos(z.real()) * sinh(z.imag()));
}

BallComplex cos(const BallComplex& z) {
  if (z.imag().is_exact() && mpfr_zero_p(z.imag().mid())) return BallComplex(cos(z.real()));
  return BallComplex(cos(z.real()) * cosh(z.imag()), -(sin(z.real()) * sinh(z.imag())));
}

// ---------------------------------------------------------------------------
// Constants

BallReal constant(Constant name, Precision bits) {
  BallReal r(bits);
  int t = 0;
  switch (name) {
    case Constant::pi:
      t = mpfr_const_pi(BallOps::mid(r), MPFR_RNDN);
      break;
    case Constant::euler_gamma:
      t = mpfr_const_euler(BallOps::mid(r), MPFR_RNDN);
      break;
    case Constant::log2:
      t = mpfr_const_log2(BallOps::mid(r), MPFR_RNDN);
      break;
    case Constant::log_pi:
      return log(constant(Constant::pi, bits + 8)).with_precision(bits);
  }
  add_rounding(BallOps::rad(r), r.mid(), t);
  return r;
}

BallReal constant(Constant name, const PrecisionContext& ctx) {
  return constant(name, ctx.working_bits);
}

}  // namespace licrit
