#ifndef LICRIT_ZEROS_HPP
#define LICRIT_ZEROS_HPP

// Certified zeros z_n of Xi (ordinates of the nontrivial zeta zeros), zero
// products and zero sums.
//
// Tails over unseen zeros use the zero-counting density
// dN(T) = (1/2pi) log(T/2pi) dT with a safety factor 2, under the model that
// every zero beyond the table is real and at least z_N.  That model is part
// of every TailBound.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "licrit/ball.hpp"

namespace licrit::zeros {

class FormatError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

enum class Source { imported, computed };

struct ZeroTable {
  std::vector<BallReal> zeros;
  Source source = Source::computed;
  bool validated = false;
  Precision precision = kDefaultWorkingBits;

  std::size_t count() const { return zeros.size(); }
  bool empty() const { return zeros.empty(); }
  /// The first n zeros (n <= count()).
  ZeroTable prefix(std::size_t n) const;
};

enum class TailKind { sum_reciprocal_squares, sum_power_k, li_coefficient };

inline constexpr std::string_view kTailModel =
    "zeros beyond the cutoff assumed real, density (1/2pi)log(T/2pi), safety factor 2";

struct TailBound {
  std::size_t cutoff_index = 0;
  BallReal cutoff_height{};
  TailKind kind = TailKind::sum_reciprocal_squares;
  Mag value;               // upper bound of the omitted sum
  bool unbounded = false;  // the omitted sum diverges under the model

  /// [0, value] as a ball.
  BallReal as_ball(Precision bits) const;
};

/// Certified sign of Xi at a real point: +1, -1, or 0 when undecided after
/// escalating precision a few times.
int xi_sign(const BallReal& z, const PrecisionContext& ctx);

struct ImportOptions {
  bool validate = true;
};

/// Parses a zero table ('#' comments, one increasing decimal per line); each
/// value v with d decimals becomes the ball [v +/- 10^-d] and is checked for a
/// certified sign change of Xi across it.
ZeroTable import_zeros(std::string_view text, const PrecisionContext& ctx, const ImportOptions& options = {});

/// Enclosure of the zero of Xi between the two bracket points (their
/// midpoints are used), of radius <= ctx.target_radius when reachable.
BallReal refine_zero(const BallReal& lo, const BallReal& hi, const PrecisionContext& ctx);

/// Sign-change scan of Xi on [0, t_max] with the given step.  Zeros closer
/// than the step can be missed in pairs.
ZeroTable scan_zeros(double t_max, double step, const PrecisionContext& ctx);

inline constexpr double kDefaultScanStep = 0.25;

struct TruncatedProduct {
  BallComplex value;           // prod_{n<=N} (1 - z^2/z_n^2)
  Mag relative_tail_estimate;  // model estimate of |prod_{n>N} - 1|
};

TruncatedProduct truncated_product(const BallComplex& z, const ZeroTable& table);

struct ZeroSum {
  BallReal partial;  // sum_{n<=N} 1/(z + z_n^2)^(k+1)
  TailBound tail;
  /// partial widened by [0, tail].
  BallReal with_tail() const;
};

/// Partial zero sum and tail for z >= 0 and k >= 0.
ZeroSum zero_sum(const BallReal& z, unsigned k, const ZeroTable& table);

/// Upper bound of sum_{n>N} z_n^-m under the tail model, given z_N.
Mag power_tail(const BallReal& cutoff_height, unsigned m);

}  // namespace licrit::zeros

#endif  // LICRIT_ZEROS_HPP
