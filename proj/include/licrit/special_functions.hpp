#ifndef LICRIT_SPECIAL_FUNCTIONS_HPP
#define LICRIT_SPECIAL_FUNCTIONS_HPP

// Certified Gamma, digamma, zeta, xi, Xi, phi and the moments of phi.
//
// Conventions:
//   xi(s)  = s(s-1)/2 * pi^(-s/2) * Gamma(s/2) * zeta(s)
//          = [(s-1) zeta(s)] * Gamma(1 + s/2) * pi^(-s/2)      (pole-free form)
//   Xi(z)  = xi(1/2 + i z)
//   Phi(u) = sum_n (4 pi^2 n^4 e^(9u/2) - 6 pi n^2 e^(5u/2)) exp(-pi n^2 e^(2u))
//   Xi(z)  = integral over R of e^(-i t z) Phi(t) dt = 2 int_0^inf cos(t z) Phi(t) dt
//
// Phi is even.  The printed series with e^(-9t/2), e^(-5t/2), e^(-2t) is
// Phi(-t); both orientations are exposed (phi, phi_printed) so the evenness
// can be checked numerically.
//
// Every function takes the working precision from the context, evaluates with
// a few guard bits and returns a ball rounded back to ctx.working_bits.

#include <vector>

#include "licrit/ball.hpp"

namespace licrit::sf {

class PoleError : public Error {
 public:
  using Error::Error;
};

class NearZeroError : public Error {
 public:
  using Error::Error;
};

// --- Gamma family -----------------------------------------------------------

/// Gamma(s) by recurrence shift and the Stirling series with its remainder
/// bound.  Throws PoleError if the ball meets a pole.
BallComplex gamma(const BallComplex& s, const PrecisionContext& ctx);

/// Gamma(s) from the split "sum_n (-1)^n / (n! (s+n)) + int_1^inf e^-t t^(s-1) dt"
/// (independent cross-check; costly at high precision).
BallComplex gamma_via_split(const BallComplex& s, const PrecisionContext& ctx);

/// log Gamma(s) for Re(s) > 0 (principal branch of the Stirling form).
BallComplex log_gamma(const BallComplex& s, const PrecisionContext& ctx);

/// psi(s) = Gamma'(s)/Gamma(s).
BallComplex digamma(const BallComplex& s, const PrecisionContext& ctx);

// --- zeta -------------------------------------------------------------------

enum class ZetaRoute {
  euler_maclaurin,  // primary, any s != 1
  alternating,      // accelerated eta series, Re(s) > 0
  dirichlet,        // raw series, Re(s) > 1.5, limited accuracy
};

BallComplex zeta(const BallComplex& s, const PrecisionContext& ctx,
                 ZetaRoute route = ZetaRoute::euler_maclaurin);

BallComplex zeta_derivative(const BallComplex& s, const PrecisionContext& ctx);

/// F(s) = (s - 1) zeta(s) and F'(s); entire in s.
struct ZetaJet {
  BallComplex value;
  BallComplex derivative;
};
ZetaJet zeta_times_s_minus_one(const BallComplex& s, const PrecisionContext& ctx);

// --- xi / Xi ----------------------------------------------------------------

BallComplex xi(const BallComplex& s, const PrecisionContext& ctx);
BallComplex xi_derivative(const BallComplex& s, const PrecisionContext& ctx);

/// xi from 2 xi(s) = 1 + s(s-1) int_1^inf (x^(s/2) + x^((1-s)/2)) omega(x) dx/x.
BallComplex xi_via_integral(const BallComplex& s, const PrecisionContext& ctx);

/// xi'(s)/xi(s) assembled as psi(1+s/2)/2 - log(pi)/2 + F'(s)/F(s).
/// Throws NearZeroError if the xi enclosure contains zero.
BallComplex xi_log_derivative(const BallComplex& s, const PrecisionContext& ctx);

BallComplex big_xi(const BallComplex& z, const PrecisionContext& ctx);

/// Real part of Xi at real z (the imaginary part vanishes there).
BallReal big_xi_real(const BallReal& z, const PrecisionContext& ctx);

/// d/dz Xi(z) at real z, real part.
BallReal big_xi_derivative_real(const BallReal& z, const PrecisionContext& ctx);

/// Xi(z) for real z by quadrature of 2 int_0^T cos(tz) Phi(t) dt plus tail.
BallReal big_xi_fourier(const BallReal& z, const PrecisionContext& ctx);

// --- omega / phi / moments ---------------------------------------------------

/// omega(x) = sum_{n>=1} exp(-n^2 pi x), Re(x) > 0.
BallComplex omega(const BallComplex& x, const PrecisionContext& ctx);

/// Phi(u) from the fast-converging orientation; valid for |Im u| < pi/4.
BallComplex phi_series(const BallComplex& u, const PrecisionContext& ctx);

/// phi(t) = Phi(|t|).
BallReal phi(const BallReal& t, const PrecisionContext& ctx);

/// The printed series evaluated literally at t (converges slowly for t > 0).
BallReal phi_printed(const BallReal& t, const PrecisionContext& ctx);

/// m_{2n} = int_R t^{2n} phi(t) dt.
BallReal moment(unsigned n, const PrecisionContext& ctx);

struct MomentSeries {
  BallReal partial;  // sum_{n<=N} (-z^2)^n m_{2n} / (2n)!
  Mag tail;          // bound on the omitted terms
  BallReal value() const;
};

/// Truncated power series of Xi(z) in z^2 built from the moments.
MomentSeries xi_moment_series(const BallReal& z, unsigned terms, const PrecisionContext& ctx);

}  // namespace licrit::sf

#endif  // LICRIT_SPECIAL_FUNCTIONS_HPP
