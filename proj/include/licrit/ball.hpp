#ifndef LICRIT_BALL_HPP
#define LICRIT_BALL_HPP

// Midpoint-radius ("ball") arithmetic on top of MPFR.
//
// A BallReal stores an MPFR midpoint at the working precision and a radius
// kept as a short MPFR number that is always rounded towards +infinity.  Every
// operation returns a ball that contains all results obtainable from points
// of the operands; MPFR's correctly rounded operations make the rounding part
// of each error term a simple half-ulp bound.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace licrit {

using Precision = mpfr_prec_t;

inline constexpr Precision kMinWorkingBits = 64;
inline constexpr Precision kDefaultWorkingBits = 256;
inline constexpr Precision kDefaultMaxBits = 32768;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZeroBall : public Error {
 public:
  using Error::Error;
};

class DomainErrorBall : public Error {
 public:
  using Error::Error;
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------

/// Nonnegative upper bound with a short mantissa.  All arithmetic rounds up,
/// so a Mag computed from other Mags never underestimates.  raw() must not be
/// passed to functions that change the precision.
class Mag {
 public:
  static constexpr Precision kBits = 64;

  Mag();
  explicit Mag(double v);  // v >= 0, exact
  Mag(const Mag& other);
  Mag(Mag&& other) noexcept;
  Mag& operator=(const Mag& other);
  Mag& operator=(Mag&& other) noexcept;
  ~Mag();

  /// Upper bound of a decimal string such as "1e-30".
  static Mag from_string(std::string_view text);
  /// Upper bound of |x|.
  static Mag abs_of(mpfr_srcptr x);
  /// 2^e.
  static Mag pow2(long e);
  static Mag infinity();

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr raw() { return value_; }

  bool is_zero() const;
  bool is_finite() const;
  double to_double() const;  // rounded up
  /// Exponent e with value < 2^e (for a nonzero value).
  long exponent() const;

  Mag& operator+=(const Mag& o);
  Mag& operator*=(const Mag& o);
  friend Mag operator+(Mag a, const Mag& b) { return a += b; }
  friend Mag operator*(Mag a, const Mag& b) { return a *= b; }
  /// a / b rounded up; b must be a lower bound of the true divisor.
  friend Mag operator/(const Mag& a, const Mag& b);
  friend Mag max(const Mag& a, const Mag& b);
  friend Mag min(const Mag& a, const Mag& b);
  friend bool operator<(const Mag& a, const Mag& b);
  friend bool operator<=(const Mag& a, const Mag& b);
  friend bool operator==(const Mag& a, const Mag& b);

  Mag pow_ui(unsigned long n) const;
  Mag sqrt() const;

 private:
  static constexpr int kLimbs = (kBits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
  void init();
  // Inline storage through MPFR's custom interface: no heap traffic.
  mp_limb_t limbs_[kLimbs];
  mpfr_t value_;
};

class BallReal;
class BallComplex;

/// Working precision and accuracy goal for adaptive computations.
struct PrecisionContext {
  Precision working_bits = kDefaultWorkingBits;
  Mag target_radius = Mag::from_string("1e-20");
  Precision max_bits = kDefaultMaxBits;

  PrecisionContext() = default;
  PrecisionContext(Precision bits, Mag target, Precision max);

  /// Throws std::invalid_argument if an invariant is violated.
  void validate() const;
  PrecisionContext with_bits(Precision bits) const;
};

// ---------------------------------------------------------------------------

class BallReal {
 public:
  explicit BallReal(Precision bits = kDefaultWorkingBits);  // exact zero
  BallReal(long value, Precision bits);
  BallReal(double value, Precision bits);  // exact (doubles are dyadic)
  BallReal(const BallReal& other);
  BallReal(BallReal&& other) noexcept;
  BallReal& operator=(const BallReal& other);
  BallReal& operator=(BallReal&& other) noexcept;
  ~BallReal();

  /// Ball around the decimal value of `text`; the conversion error goes into
  /// the radius.
  static BallReal from_string(std::string_view text, Precision bits);
  /// Ball with the given midpoint (rounded to `bits`) and radius.
  static BallReal with_radius(mpfr_srcptr mid, const Mag& rad, Precision bits);
  /// Exact rational p/q rounded into a ball.
  static BallReal rational(long p, unsigned long q, Precision bits);
  /// The smallest ball containing [lo, hi] (endpoints may be balls).
  static BallReal hull(const BallReal& lo, const BallReal& hi);

  Precision precision() const { return mpfr_get_prec(mid_); }
  mpfr_srcptr mid() const { return mid_; }
  const Mag& rad() const { return rad_; }
  double mid_double() const;
  long double mid_long_double() const;

  bool is_exact() const { return rad_.is_zero(); }
  bool is_finite() const;
  bool contains_zero() const;
  bool is_positive() const;  // every point > 0
  bool is_negative() const;  // every point < 0
  /// Every point of `inner` is inside this ball.
  bool contains(const BallReal& inner) const;
  bool contains(double x) const;
  bool overlaps(const BallReal& other) const;

  /// Upper bound of max |x| over the ball.
  Mag abs_upper() const;
  /// Lower bound of min |x| over the ball (zero if the ball contains 0).
  Mag abs_lower() const;
  /// Lower / upper endpoint as MPFR values rounded outward.
  void lower(mpfr_ptr out) const;
  void upper(mpfr_ptr out) const;

  BallReal& add_error(const Mag& err);
  BallReal with_precision(Precision bits) const;
  /// Midpoint only, radius zero; useful for picking points inside a ball.
  BallReal midpoint_ball() const;

  BallReal& operator+=(const BallReal& o);
  BallReal& operator-=(const BallReal& o);
  BallReal& operator*=(const BallReal& o);
  BallReal& operator/=(const BallReal& o);

  friend BallReal operator+(const BallReal& a, const BallReal& b);
  friend BallReal operator-(const BallReal& a, const BallReal& b);
  friend BallReal operator*(const BallReal& a, const BallReal& b);
  friend BallReal operator/(const BallReal& a, const BallReal& b);
  friend BallReal operator-(const BallReal& a);
  friend BallReal operator*(const BallReal& a, long n);
  friend BallReal operator/(const BallReal& a, long n);

  /// Bit-identical midpoint and radius.
  bool identical(const BallReal& other) const;

  std::string to_string(int digits = 20) const;

 private:
  friend class BallOps;
  mpfr_t mid_;
  Mag rad_;
};

std::ostream& operator<<(std::ostream& os, const BallReal& x);

BallReal abs(const BallReal& x);
BallReal sqr(const BallReal& x);
BallReal exp(const BallReal& x);
BallReal expm1(const BallReal& x);
BallReal log(const BallReal& x);
BallReal sqrt(const BallReal& x);
BallReal pow(const BallReal& base, const BallReal& exponent);
BallReal pow_ui(const BallReal& base, unsigned long n);
BallReal sin(const BallReal& x);
BallReal cos(const BallReal& x);
BallReal atan(const BallReal& x);
BallReal atan2(const BallReal& y, const BallReal& x);
BallReal cosh(const BallReal& x);
BallReal sinh(const BallReal& x);
BallReal min(const BallReal& a, const BallReal& b);
BallReal max(const BallReal& a, const BallReal& b);

// ---------------------------------------------------------------------------

/// Rectangular complex ball: componentwise containment.
class BallComplex {
 public:
  explicit BallComplex(Precision bits = kDefaultWorkingBits);
  BallComplex(BallReal re);
  BallComplex(BallReal re, BallReal im);
  BallComplex(double re, double im, Precision bits);

  const BallReal& real() const { return re_; }
  const BallReal& imag() const { return im_; }
  BallReal& real() { return re_; }
  BallReal& imag() { return im_; }
  Precision precision() const;

  bool is_finite() const;
  bool contains_zero() const;
  bool contains(const BallComplex& inner) const;
  bool overlaps(const BallComplex& other) const;
  /// Upper bound of the larger component radius.
  Mag rad() const;
  Mag abs_upper() const;
  Mag abs_lower() const;
  BallComplex conj() const;
  BallComplex with_precision(Precision bits) const;
  bool identical(const BallComplex& other) const;

  BallComplex& operator+=(const BallComplex& o);
  BallComplex& operator-=(const BallComplex& o);
  BallComplex& operator*=(const BallComplex& o);
  BallComplex& operator/=(const BallComplex& o);

  friend BallComplex operator+(const BallComplex& a, const BallComplex& b);
  friend BallComplex operator-(const BallComplex& a, const BallComplex& b);
  friend BallComplex operator*(const BallComplex& a, const BallComplex& b);
  friend BallComplex operator/(const BallComplex& a, const BallComplex& b);
  friend BallComplex operator-(const BallComplex& a);
  friend BallComplex operator*(const BallComplex& a, const BallReal& b);
  friend BallComplex operator*(const BallReal& a, const BallComplex& b);
  friend BallComplex operator/(const BallComplex& a, const BallReal& b);

  std::string to_string(int digits = 20) const;

 private:
  BallReal re_;
  BallReal im_;
};

std::ostream& operator<<(std::ostream& os, const BallComplex& z);

/// Enclosure of |z| (as a real ball).
BallReal abs(const BallComplex& z);
BallReal norm(const BallComplex& z);  // |z|^2
BallComplex sqr(const BallComplex& z);
BallComplex inv(const BallComplex& z);
BallComplex exp(const BallComplex& z);
/// Principal branch; the ball must not touch the cut (-inf, 0].
BallComplex log(const BallComplex& z);
BallComplex sqrt(const BallComplex& z);
BallComplex pow(const BallComplex& base, const BallComplex& exponent);
BallComplex pow_ui(const BallComplex& base, unsigned long n);
BallComplex sin(const BallComplex& z);
BallComplex cos(const BallComplex& z);
/// Principal argument of z.
BallReal arg(const BallComplex& z);

// ---------------------------------------------------------------------------
// Constants

enum class Constant { pi, euler_gamma, log_pi, log2 };

BallReal constant(Constant name, Precision bits);
BallReal constant(Constant name, const PrecisionContext& ctx);

}  // namespace licrit

#endif  // LICRIT_BALL_HPP
