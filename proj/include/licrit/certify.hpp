#ifndef LICRIT_CERTIFY_HPP
#define LICRIT_CERTIFY_HPP

#include <concepts>
#include <type_traits>
#include <optional>
#include <utility>

#include "licrit/ball.hpp"

namespace licrit {

/// Result of an adaptive computation.  `exhausted` is set when the cap was
/// reached before the acceptance test passed; `value` is then the last
/// (highest-precision) result.
template <typename T>
struct Certified {
  T value;
  Precision bits = 0;
  bool exhausted = false;
  int rounds = 0;
};

template <typename T>
Mag radius_of(const T& v) {
  return v.rad();
}

/// Reruns `computation` at doubling precision until `accept(result)` holds
/// or the precision would exceed ctx.max_bits.  Errors thrown by the
/// computation at a given precision (e.g. a divisor ball that still touches
/// zero) count as a failed round.
template <typename F, typename Accept>
auto certify_until(F&& computation, const PrecisionContext& ctx, Accept&& accept)
    -> Certified<std::invoke_result_t<F&, const PrecisionContext&>> {
  using T = std::invoke_result_t<F&, const PrecisionContext&>;
  std::optional<T> last;
  Precision bits = ctx.working_bits;
  Precision used = bits;
  int rounds = 0;
  while (bits <= ctx.max_bits) {
    ++rounds;
    PrecisionContext round_ctx = ctx.with_bits(bits);
    try {
      T value = computation(round_ctx);
      used = bits;
      if (accept(value)) return {std::move(value), bits, false, rounds};
      last.emplace(std::move(value));
    } catch (const DivisionByZeroBall&) {
    } catch (const DomainErrorBall&) {
    }
    bits *= 2;
  }
  if (!last) throw PrecisionExhausted("no round produced a finite enclosure");
  return {std::move(*last), used, true, rounds};
}

/// Doubles precision until the result radius is at most ctx.target_radius.
template <typename F>
auto certify(F&& computation, const PrecisionContext& ctx) {
  const Mag target = ctx.target_radius;
  return certify_until(std::forward<F>(computation), ctx,
                       [&target](const auto& v) { return radius_of(v) <= target; });
}

}  // namespace licrit

#endif  // LICRIT_CERTIFY_HPP
