#include "met/semicircle.hpp"

#include <cmath>
#include <numbers>

#include "met/errors.hpp"

namespace met::semicircle {

double density(double x) {
  if (std::abs(x) >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
}

double cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) +
         std::asin(x / 2.0) / std::numbers::pi;
}

mpz_class moment_exact(int k) {
  if (k < 0) throw DomainError("semicircle moment: negative order");
  if (k % 2 == 1) return 0;
  const unsigned long m = static_cast<unsigned long>(k) / 2;
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * m, m);
  mpz_class out;
  mpz_divexact_ui(out.get_mpz_t(), c.get_mpz_t(), m + 1);
  return out;
}

double moment(int k) { return moment_exact(k).get_d(); }

double abs_moment() { return 8.0 / (3.0 * std::numbers::pi); }

}  // namespace met::semicircle
