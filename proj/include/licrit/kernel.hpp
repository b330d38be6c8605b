#ifndef LICRIT_KERNEL_HPP
#define LICRIT_KERNEL_HPP

// The kernel g(z^2) = xi'(1/2 + z) / (2 z xi(1/2 + z)), its complete
// monotonicity, Gram matrices [g((z_i - z_j)^2)] and certified determinant
// and eigenvalue signs.
//
// Two routes are kept side by side:
//   route a  from xi'/xi (exact, cancellation-prone near z = 0);
//   route b  the truncated zero sum g(w) ~ sum_n 1/(w + z_n^2), which is a
//            nonnegative combination of Cauchy kernels and hence PSD, but
//            relies on the zeros being real and omits a tail.
//
// Analyticity: xi has no zeros with |Im s| < 14, so g is analytic on
// |w| < 196 and every disc bound used below stays inside that region.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "licrit/ball.hpp"
#include "licrit/zeros.hpp"

namespace licrit::kernel {

using Matrix = std::vector<std::vector<BallReal>>;

enum class Route { a, b };
enum class SignVerdict { positive_certified, negative_certified, zero_straddling };
enum class PsdVerdict { psd_certified, not_psd_certified, undecided };
enum class ClaimStatus { reproduced, refuted, undecided };

std::string_view to_string(Route r);
std::string_view to_string(SignVerdict v);
std::string_view to_string(PsdVerdict v);
std::string_view to_string(ClaimStatus s);
SignVerdict sign_of(const BallReal& x);

// --- g ------------------------------------------------------------------------

/// g(z) = xi'(1/2 + sqrt z) / (2 sqrt z xi(1/2 + sqrt z)); z must be > 0.
BallReal g_route_a(const BallReal& z, const PrecisionContext& ctx);

/// The same value as -xi'(1/2 - sqrt z) / (2 sqrt z xi(1/2 - sqrt z)).
BallReal g_route_a_reflected(const BallReal& z, const PrecisionContext& ctx);

/// g(0) = xi''(1/2) / (2 xi(1/2)) from contour coefficients of xi(1/2 + w).
BallReal g_at_zero(const PrecisionContext& ctx);

/// g at any real w: route a for w > 0, g(0) for an exact zero, the
/// continuation through sqrt(w) = i sqrt(-w) for w < 0, and g(0) widened by
/// a Lipschitz bound for small balls around 0.
BallReal g_value(const BallReal& w, const PrecisionContext& ctx);

/// g at complex w (|w| well away from 0; used for disc bounds).
BallComplex g_complex(const BallComplex& w, const PrecisionContext& ctx);

/// Upper bound of |g| on the circle |w - center| = radius.
Mag g_circle_bound(double center, double radius);

struct KernelEvaluation {
  BallReal argument;
  BallReal route_a;
  std::optional<zeros::ZeroSum> route_b;
  bool agree = true;  // route_a meets route_b widened by its tail
};

KernelEvaluation evaluate(const BallReal& w, const PrecisionContext& ctx, const zeros::ZeroTable* table);

// --- complete monotonicity ------------------------------------------------------

struct MonotonicityPoint {
  BallReal z;
  unsigned k = 0;
  BallReal route_b;  // k! sum_n 1/(z + z_n^2)^(k+1), partial
  Mag route_b_tail;  // k! times the zero-sum tail
  bool route_b_positive = false;
  BallReal route_a;  // (-1)^k g^(k)(z) by central differences
  bool agree = false;
};

struct MonotonicityReport {
  std::vector<MonotonicityPoint> points;
  std::size_t disagreements = 0;
  std::size_t nonpositive = 0;
};

MonotonicityReport complete_monotonicity_scan(unsigned k_max, const std::vector<BallReal>& grid,
                                              const zeros::ZeroTable& table, const PrecisionContext& ctx);

// --- nu -------------------------------------------------------------------------

inline constexpr std::string_view kNuModelNote = "RH-model: nu(y) = sum exp(-z_n |y|)/(2 z_n), truncated";

struct NuDensity {
  BallReal partial;
  Mag tail;
  bool unbounded = false;  // y = 0: the model density diverges
};

NuDensity nu_density(const BallReal& y, const zeros::ZeroTable& table);

// --- Gram matrices and their signs ----------------------------------------------

struct KernelGram {
  std::vector<BallReal> points;
  Matrix matrix;
  Route route = Route::a;
  std::optional<zeros::TailBound> tail;  // route b: every entry omits at most this
  Precision bits = 0;
};

KernelGram gram_matrix(const std::vector<BallReal>& points, const PrecisionContext& ctx, Route route,
                       const zeros::ZeroTable* table = nullptr);

/// sum_ij g((z_i - z_j)^2) c_i conj(c_j) with route a entries.
BallReal quadratic_form(const std::vector<BallReal>& points, const std::vector<BallComplex>& coeffs,
                        const PrecisionContext& ctx);
/// The same form for a given matrix.
BallComplex quadratic_form(const Matrix& m, const std::vector<BallComplex>& coeffs);

struct Determinant {
  BallReal value;
  SignVerdict verdict = SignVerdict::zero_straddling;
  Precision bits = 0;
  bool exhausted = false;
};

/// Fraction-free elimination with full pivoting at the precision of the
/// entries.
Determinant determinant(const Matrix& m);

/// Determinant of a fixed matrix (no precision to escalate).
Determinant certified_determinant(const Matrix& m, const PrecisionContext& ctx);

/// Rebuilds the matrix at doubling precision until the sign is certified
/// and the radius is at most ctx.target_radius, or ctx.max_bits is reached.
Determinant certified_determinant(const std::function<Matrix(const PrecisionContext&)>& build,
                                  const PrecisionContext& ctx);

struct PsdResult {
  BallReal min_eig_lower;
  PsdVerdict verdict = PsdVerdict::undecided;
  std::vector<double> witness;  // approximate eigenvector of the least eigenvalue
};

/// Lower bound of the least eigenvalue: the largest shift lambda for which
/// a ball Cholesky factorization of m - lambda I succeeds.
PsdResult psd_check(const Matrix& m);

/// Sum of the radii of all entries.
Mag radius_sum(const Matrix& m);

// --- published determinant claims -----------------------------------------------

struct Claim {
  std::string label;
  std::vector<BallReal> points;
  double paper_value = 0;
  std::string paper_value_text;
  Determinant route_a;
  ClaimStatus status = ClaimStatus::undecided;
  bool sign_matches_claim = false;
  Determinant route_b_partial;  // truncated zero sums
  BallReal route_b_control;     // determinant with every entry widened by the tail
  bool route_b_consistent = false;
  bool discrepancy = false;     // route a certified negative beyond all tail slack
};

struct ExperimentReport {
  std::vector<Claim> claims;
  std::string model_note;
};

ExperimentReport paper_experiment(const PrecisionContext& ctx, const zeros::ZeroTable& table);

}  // namespace licrit::kernel

#endif  // LICRIT_KERNEL_HPP
