#include "met/emd.hpp"

#include <algorithm>
#include <cmath>

#include "met/errors.hpp"
#include "met/semicircle.hpp"

namespace met {

namespace {

double ipow(double x, int k) {
  double out = 1.0, base = x;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) out *= base;
    base *= base;
  }
  return out;
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> sample)
    : sample_(std::move(sample)) {
  if (sample_.empty())
    throw DomainError("empirical distribution: empty sample");
  std::sort(sample_.begin(), sample_.end());
}

EmpiricalDistribution EmpiricalDistribution::from_spectrum(
    const NormalizedSpectrum& s) {
  return EmpiricalDistribution(s.lambdas);
}

double EmpiricalDistribution::eval(double x) const {
  const auto it = std::upper_bound(sample_.begin(), sample_.end(), x);
  return static_cast<double>(it - sample_.begin()) /
         static_cast<double>(sample_.size());
}

double EmpiricalDistribution::moment(int k) const {
  if (k < 0) throw DomainError("empirical moment: negative order");
  double acc = 0;
  for (double x : sample_) acc += ipow(x, k);
  return acc / static_cast<double>(sample_.size());
}

double EmpiricalDistribution::mean_abs() const {
  double acc = 0;
  for (double x : sample_) acc += std::abs(x);
  return acc / static_cast<double>(sample_.size());
}

double EmpiricalDistribution::ks_distance() const {
  const auto n = static_cast<double>(sample_.size());
  double d = 0;
  for (std::size_t i = 0; i < sample_.size(); ++i) {
    const double f = semicircle::cdf(sample_[i]);
    d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
    d = std::max(d, std::abs(static_cast<double>(i) / n - f));
  }
  return d;
}

}  // namespace met
