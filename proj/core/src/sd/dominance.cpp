#include "sdpolicy/sd/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdpolicy::sd {

namespace {

constexpr double kTol = 1e-12;

struct Comparison {
  bool holds_weak = true;
  bool strict = false;
  double max_violation = 0.0;
  double violation_at = 0.0;

  // `a` should be <= `b` for dominance; record the margin either way.
  void observe(double lhs, double rhs, double at) {
    const double gap = lhs - rhs;
    if (gap > kTol) {
      holds_weak = false;
      if (gap > max_violation) {
        max_violation = gap;
        violation_at = at;
      }
    } else if (gap < -kTol) {
      strict = true;
    }
  }
};

// Shared engine for both orientations. For losses the comparison functions
// are upper partial moments with endpoint moments at the pooled minimum;
// for returns, lower partial moments with endpoint moments at the maximum.
SDResult compare(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
                 int k, bool losses) {
  if (k < 1 || k > 8) {
    throw std::invalid_argument("sd dominance: order k must be in [1,8]");
  }
  const auto pts = detail::test_points(a, b);
  Comparison cmp;

  if (k == 1) {
    // CDF comparison is exact at atoms; both step functions are constant
    // between consecutive pooled atoms.
    for (const double x : pts) {
      if (losses) {
        cmp.observe(b.cdf(x), a.cdf(x), x);  // need F_a >= F_b
      } else {
        cmp.observe(a.cdf(x), b.cdf(x), x);  // need F_a <= F_b
      }
    }
  } else {
    for (const double x : pts) {
      const double lhs = losses ? a.upper_partial_moment(x, k - 1)
                                : a.lower_partial_moment(x, k - 1);
      const double rhs = losses ? b.upper_partial_moment(x, k - 1)
                                : b.lower_partial_moment(x, k - 1);
      cmp.observe(lhs, rhs, x);
    }
    // Endpoint moments E[(L-m)^j] (losses) / E[(M-r)^j] (returns) for
    // j = 1..k-2 complete the characterisation of the disutility class.
    const double endpoint = losses ? pts.front() : pts.back();
    for (int j = 1; j <= k - 2; ++j) {
      const double lhs = losses ? a.upper_partial_moment(endpoint, j)
                                : a.lower_partial_moment(endpoint, j);
      const double rhs = losses ? b.upper_partial_moment(endpoint, j)
                                : b.lower_partial_moment(endpoint, j);
      cmp.observe(lhs, rhs, endpoint);
    }
  }

  SDResult r;
  r.order = k;
  r.max_violation = cmp.max_violation;
  r.violation_at = cmp.violation_at;
  r.strict = cmp.strict;
  r.dominates = cmp.holds_weak && cmp.strict;
  return r;
}

// Weak variant used by the multi-period sufficiency check.
std::pair<bool, bool> compare_weak(const EmpiricalDistribution& a,
                                   const EmpiricalDistribution& b, int k,
                                   bool losses) {
  SDResult r = compare(a, b, k, losses);
  return {r.max_violation <= kTol, r.strict};
}

}  // namespace

namespace detail {

std::vector<double> test_points(const EmpiricalDistribution& a,
                                const EmpiricalDistribution& b) {
  std::vector<double> pts;
  pts.reserve(2 * (a.size() + b.size()));
  pts.insert(pts.end(), a.values().begin(), a.values().end());
  pts.insert(pts.end(), b.values().begin(), b.values().end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    pts.push_back(0.5 * (pts[i] + pts[i + 1]));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace detail

SDResult sd_dominates_losses(const EmpiricalDistribution& a,
                             const EmpiricalDistribution& b, int k) {
  if (a.orientation() != Orientation::kLoss ||
      b.orientation() != Orientation::kLoss) {
    throw std::invalid_argument(
        "sd_dominates_losses: both distributions must be loss-oriented");
  }
  return compare(a, b, k, /*losses=*/true);
}

SDResult sd_dominates_returns(const EmpiricalDistribution& a,
                              const EmpiricalDistribution& b, int k) {
  if (a.orientation() != Orientation::kReturn ||
      b.orientation() != Orientation::kReturn) {
    throw std::invalid_argument(
        "sd_dominates_returns: both distributions must be return-oriented");
  }
  return compare(a, b, k, /*losses=*/false);
}

std::optional<int> min_dominance_order(const EmpiricalDistribution& a,
                                       const EmpiricalDistribution& b,
                                       int kmax) {
  if (kmax < 1 || kmax > 8) {
    throw std::invalid_argument("min_dominance_order: kmax must be in [1,8]");
  }
  const bool losses = a.orientation() == Orientation::kLoss;
  for (int k = 1; k <= kmax; ++k) {
    const SDResult r = losses ? sd_dominates_losses(a, b, k)
                              : sd_dominates_returns(a, b, k);
    if (r.dominates) return k;
  }
  return std::nullopt;
}

RuleRanking rank_rules(
    const std::vector<std::pair<std::string, EmpiricalDistribution>>& dists,
    int kmax) {
  if (dists.size() < 2) {
    throw std::invalid_argument("rank_rules: need at least 2 distributions");
  }
  const std::size_t n = dists.size();
  RuleRanking out;
  out.families.reserve(n);
  for (const auto& [name, d] : dists) out.families.push_back(name);
  out.min_order.assign(n, std::vector<std::optional<int>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      out.min_order[i][j] =
          min_dominance_order(dists[i].second, dists[j].second, kmax);
    }
  }
  // Smallest common order at which one family dominates all others.
  for (int k = 1; k <= kmax && !out.optimal_family; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      bool all = true;
      for (std::size_t j = 0; j < n && all; ++j) {
        if (i == j) continue;
        all = out.min_order[i][j].has_value() && *out.min_order[i][j] <= k;
      }
      if (all) {
        out.optimal_family = out.families[i];
        out.optimal_order = k;
        break;
      }
    }
  }
  return out;
}

bool multi_period_sd(const std::vector<EmpiricalDistribution>& seq1,
                     const std::vector<EmpiricalDistribution>& seq2,
                     int order) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("multi_period_sd: order must be 1 or 2");
  }
  if (seq1.size() != seq2.size() || seq1.empty()) {
    throw std::invalid_argument(
        "multi_period_sd: sequences must be non-empty and equal length");
  }
  bool any_strict = false;
  for (std::size_t i = 0; i < seq1.size(); ++i) {
    if (seq1[i].orientation() != seq2[i].orientation()) {
      throw std::invalid_argument("multi_period_sd: orientation mismatch");
    }
    const bool losses = seq1[i].orientation() == Orientation::kLoss;
    const auto [weak, strict] = compare_weak(seq1[i], seq2[i], order, losses);
    if (!weak) return false;
    any_strict = any_strict || strict;
  }
  return any_strict;
}

}  // namespace sdpolicy::sd
