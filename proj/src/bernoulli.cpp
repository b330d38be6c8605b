#include "licrit/bernoulli.hpp"

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <vector>

namespace licrit {

namespace {

using Table = std::vector<mpq_class>;  // index k -> B_{2k}, entry 0 unused

// Brent-Harvey tangent-number recurrence: integer-only, O(n^2).
std::shared_ptr<const Table> build_table(unsigned n) {
  std::vector<mpz_class> t(n + 1);
  t[1] = 1;
  for (unsigned k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
  for (unsigned k = 2; k <= n; ++k)
    for (unsigned j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  auto table = std::make_shared<Table>(n + 1);
  for (unsigned k = 1; k <= n; ++k) {
    mpz_class four_k;
    mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
    mpq_class b(mpz_class(2 * k) * t[k], four_k * (four_k - 1));
    b.canonicalize();
    if (k % 2 == 0) b = -b;
    (*table)[k] = b;
  }
  return table;
}

std::mutex table_mutex;
std::shared_ptr<const Table> shared_table;

std::shared_ptr<const Table> table_for(unsigned k) {
  std::lock_guard<std::mutex> lock(table_mutex);
  if (!shared_table || shared_table->size() <= k) {
    unsigned n = 128;
    while (n < k) n *= 2;
    shared_table = build_table(n);
  }
  return shared_table;
}

}  // namespace

BallReal bernoulli_b2k(unsigned k, Precision bits) {
  auto table = table_for(k);
  mpfr_t v;
  mpfr_init2(v, bits);
  int t = mpfr_set_q(v, (*table)[k].get_mpq_t(), MPFR_RNDN);
  Mag err;
  if (t != 0) err = Mag::pow2(mpfr_get_exp(v) - bits);
  BallReal r = BallReal::with_radius(v, err, bits);
  mpfr_clear(v);
  return r;
}

Mag bernoulli_b2k_over_factorial_bound(unsigned k) {
  // zeta(2k) <= 1 + 2^{1-2k} for k >= 1 (crude tail bound of the series).
  Mag zeta_bound = Mag(1.0) + Mag::pow2(1 - 2 * static_cast<long>(k)) * Mag(1.0);
  zeta_bound += Mag::pow2(1 - 2 * static_cast<long>(k));
  Mag two_pi;
  mpfr_const_pi(two_pi.raw(), MPFR_RNDD);
  mpfr_mul_2ui(two_pi.raw(), two_pi.raw(), 1, MPFR_RNDD);
  Mag denom;
  mpfr_pow_ui(denom.raw(), two_pi.get(), 2 * k, MPFR_RNDD);
  return Mag(2.0) * zeta_bound / denom;
}

}  // namespace licrit
