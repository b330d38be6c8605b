#ifndef LICRIT_LI_HPP
#define LICRIT_LI_HPP

// Li's coefficients
//
//     lambda_n = 1/(n-1)! d^n/ds^n [s^(n-1) log xi(s)] at s = 1
//
// from the Taylor series log xi(1 + w) = sum_k a_k w^k, which turns the
// definition into lambda_n = n sum_{k=1..n} C(n-1, n-k) a_k.  A second route
// sums 1 - (1 - 1/rho)^n over a zero table (conjugate pairs combined) under
// the model that all zeros are on the critical line.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "licrit/ball.hpp"
#include "licrit/zeros.hpp"

namespace licrit::li {

class RadiusError : public Error {
 public:
  using Error::Error;
};

class OrderError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kDefaultContourRadius = 0.25;
inline constexpr std::string_view kZeroSumLabel = "RH-model, truncated";

enum class Verdict { positive_certified, negative_certified, undecided };
std::string_view to_string(Verdict v);
Verdict verdict_of(const BallReal& x);

struct XiSeriesAtOne {
  std::vector<BallReal> coefficients;  // a_0 .. a_K of log xi(1 + w)
  double radius = kDefaultContourRadius;
  unsigned nodes = 0;
  Precision bits = 0;

  unsigned order() const { return coefficients.empty() ? 0 : static_cast<unsigned>(coefficients.size() - 1); }
};

/// a_0..a_K by a trapezoid rule on |w| = radius, escalating precision until
/// every coefficient has radius <= ctx.target_radius.  RadiusError if
/// radius >= 1/2.
XiSeriesAtOne log_xi_series(unsigned order, const PrecisionContext& ctx,
                            double radius = kDefaultContourRadius);

/// lambda_n from the series; OrderError if series.order() < n.
BallReal li_lambda_derivative(unsigned n, const XiSeriesAtOne& series);

struct ZeroSumLambda {
  BallReal partial;
  zeros::TailBound tail;
  /// partial widened by [0, tail]: every omitted term is nonnegative.
  BallReal with_tail() const;
};

/// sum over the table of 2 (1 - cos(n theta_j)), theta_j = 2 atan(1/(2 z_j)),
/// with the tail n^2 sum_{j>N} z_j^-2.
ZeroSumLambda li_lambda_zero_sum(unsigned n, const zeros::ZeroTable& table);

struct LiEntry {
  unsigned n = 0;
  BallReal derivative_route;
  std::optional<BallReal> zero_sum_route;
  std::optional<zeros::TailBound> tail;
  Verdict verdict = Verdict::undecided;
  /// The derivative route meets the zero-sum route widened by its tail
  /// (true when there is no zero-sum route).
  bool routes_agree = true;
};

struct LiSequence {
  std::vector<LiEntry> entries;
  Precision bits = 0;
  bool exhausted = false;
};

/// lambda_1..lambda_N with verdicts.  Precision is doubled until every
/// verdict is decided or ctx.max_bits is reached.
LiSequence li_positivity_report(unsigned N, const PrecisionContext& ctx,
                                const zeros::ZeroTable* table = nullptr);

}  // namespace licrit::li

#endif  // LICRIT_LI_HPP
