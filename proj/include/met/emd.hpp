#pragma once

#include <vector>

#include "met/roots.hpp"

namespace met {

// Empirical distribution of a finite real sample (normalized matching roots):
// F_n(x) = (fraction of sample <= x).
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> sample);
  static EmpiricalDistribution from_spectrum(const NormalizedSpectrum& s);

  int size() const { return static_cast<int>(sample_.size()); }
  const std::vector<double>& sample() const { return sample_; }  // ascending

  // Right-continuous step CDF.
  double eval(double x) const;
  // (1/n) sum lambda_i^k.
  double moment(int k) const;
  // (1/n) sum |lambda_i|.
  double mean_abs() const;
  // sup_x |F_n(x) - F_sc(x)| against the semicircle CDF; the sup is attained
  // at sample points, checking both sides of each jump.
  double ks_distance() const;

 private:
  std::vector<double> sample_;
};

}  // namespace met
