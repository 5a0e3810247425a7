#pragma once

#include <string>
#include <vector>

namespace sdpolicy::sd {

/// Whether small sample values are good (Loss) or bad (Return). Dominance
/// tests, Omega and CVaR all require an explicit orientation; nothing in
/// this module ever negates a sample silently.
enum class Orientation { kLoss, kReturn };

/// Weighted sorted sample. Weights are positive and sum to one (within
/// 1e-12); values are finite and ascending.
class EmpiricalDistribution {
 public:
  static EmpiricalDistribution from_samples(std::vector<double> values,
                                            Orientation orientation);
  static EmpiricalDistribution from_weighted(std::vector<double> values,
                                             std::vector<double> weights,
                                             Orientation orientation);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }
  Orientation orientation() const { return orientation_; }
  std::size_t size() const { return values_.size(); }

  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double mean() const;

  /// P(X <= x).
  double cdf(double x) const;

  /// Upper partial moment E[(X - x)_+^j]. For j = 0 this is the mass
  /// strictly above x; ties at x are excluded.
  double upper_partial_moment(double x, int j) const;

  /// Lower partial moment E[(x - X)_+^j]. For j = 0 this is the mass
  /// strictly below x; ties at x are excluded.
  double lower_partial_moment(double x, int j) const;

 private:
  EmpiricalDistribution(std::vector<double> values,
                        std::vector<double> weights,
                        Orientation orientation);

  std::vector<double> values_;
  std::vector<double> weights_;
  Orientation orientation_;
};

/// Omega ratio at threshold: (mean - threshold) / E[(threshold - r)_+] + 1.
/// Returns +infinity when there is no downside mass and mean > threshold;
/// throws std::domain_error when the ratio is undefined (no downside mass
/// and mean <= threshold). Requires return orientation.
double omega_ratio(const EmpiricalDistribution& d, double threshold);

struct VarCvar {
  double var;
  double cvar;
};

/// Lower-quantile VaR and the variational CVaR
///   CVaR_a = min_v { v + E[(X - v)_+] / (1 - a) },
/// evaluated in closed form at v* = VaR_a. Requires loss orientation
/// (negate returns before calling, as in CVaR(-r'lambda)).
VarCvar var_cvar(const EmpiricalDistribution& d, double alpha);

}  // namespace sdpolicy::sd
