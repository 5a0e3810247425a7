#include "sdpolicy/sd/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sdpolicy::sd {

namespace {
constexpr double kWeightSumTol = 1e-12;

double pow_int(double base, int j) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= base;
  return r;
}
}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values,
                                             std::vector<double> weights,
                                             Orientation orientation)
    : values_(std::move(values)),
      weights_(std::move(weights)),
      orientation_(orientation) {
  if (values_.empty()) {
    throw std::invalid_argument("EmpiricalDistribution: empty sample");
  }
  if (values_.size() != weights_.size()) {
    throw std::invalid_argument(
        "EmpiricalDistribution: values/weights size mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("EmpiricalDistribution: non-finite value");
    }
    if (!(weights_[i] > 0.0)) {
      throw std::invalid_argument(
          "EmpiricalDistribution: weights must be positive");
    }
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw std::invalid_argument(
        "EmpiricalDistribution: weights must sum to 1");
  }
  if (!std::is_sorted(values_.begin(), values_.end())) {
    throw std::logic_error("EmpiricalDistribution: values not sorted");
  }
}

EmpiricalDistribution EmpiricalDistribution::from_samples(
    std::vector<double> values, Orientation orientation) {
  const std::size_t n = values.size();
  if (n == 0) {
    throw std::invalid_argument("EmpiricalDistribution: empty sample");
  }
  return from_weighted(std::move(values),
                       std::vector<double>(n, 1.0 / static_cast<double>(n)),
                       orientation);
}

EmpiricalDistribution EmpiricalDistribution::from_weighted(
    std::vector<double> values, std::vector<double> weights,
    Orientation orientation) {
  if (values.size() != weights.size()) {
    throw std::invalid_argument(
        "EmpiricalDistribution: values/weights size mismatch");
  }
  // Sort jointly by value, then renormalise the weights exactly.
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> v(values.size()), w(values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    v[i] = values[idx[i]];
    w[i] = weights[idx[i]];
    sum += w[i];
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw std::invalid_argument("EmpiricalDistribution: bad weight sum");
  }
  for (auto& x : w) x /= sum;
  return EmpiricalDistribution(std::move(v), std::move(w), orientation);
}

double EmpiricalDistribution::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) m += weights_[i] * values_[i];
  return m;
}

double EmpiricalDistribution::cdf(double x) const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size() && values_[i] <= x; ++i) {
    m += weights_[i];
  }
  return m;
}

double EmpiricalDistribution::upper_partial_moment(double x, int j) const {
  if (j < 0 || j > 8) {
    throw std::invalid_argument("upper_partial_moment: j must be in [0,8]");
  }
  double acc = 0.0;
  if (j == 0) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] > x) acc += weights_[i];
    }
    return acc;
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double d = values_[i] - x;
    if (d > 0.0) acc += weights_[i] * pow_int(d, j);
  }
  return acc;
}

double EmpiricalDistribution::lower_partial_moment(double x, int j) const {
  if (j < 0 || j > 8) {
    throw std::invalid_argument("lower_partial_moment: j must be in [0,8]");
  }
  double acc = 0.0;
  if (j == 0) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] < x) acc += weights_[i];
    }
    return acc;
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double d = x - values_[i];
    if (d > 0.0) acc += weights_[i] * pow_int(d, j);
  }
  return acc;
}

double omega_ratio(const EmpiricalDistribution& d, double threshold) {
  if (d.orientation() != Orientation::kReturn) {
    throw std::invalid_argument("omega_ratio: requires return orientation");
  }
  const double mean = d.mean();
  const double downside = d.lower_partial_moment(threshold, 1);
  if (downside == 0.0) {
    if (mean > threshold) return std::numeric_limits<double>::infinity();
    throw std::domain_error(
        "omega_ratio: undefined (no downside mass and mean <= threshold)");
  }
  return (mean - threshold) / downside + 1.0;
}

VarCvar var_cvar(const EmpiricalDistribution& d, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("var_cvar: alpha must be in (0,1)");
  }
  if (d.orientation() != Orientation::kLoss) {
    throw std::invalid_argument(
        "var_cvar: requires loss orientation (negate returns first)");
  }
  // Lower alpha-quantile: smallest atom with cdf >= alpha.
  const auto& v = d.values();
  const auto& w = d.weights();
  double acc = 0.0;
  double var = v.back();
  for (std::size_t i = 0; i < v.size(); ++i) {
    acc += w[i];
    if (acc >= alpha - 1e-15) {
      var = v[i];
      break;
    }
  }
  // Rockafellar-Uryasev objective attains its minimum at any alpha-quantile.
  const double cvar = var + d.upper_partial_moment(var, 1) / (1.0 - alpha);
  return {var, cvar};
}

}  // namespace sdpolicy::sd
