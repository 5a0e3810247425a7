#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdpolicy/sd/empirical.hpp"

namespace sdpolicy::sd {

/// Outcome of a k-order dominance test between two distributions.
struct SDResult {
  bool dominates = false;
  int order = 0;
  /// Largest violation of the weak inequalities (0 when none).
  double max_violation = 0.0;
  /// Evaluation point of the worst violation.
  double violation_at = 0.0;
  /// Some inequality holds with margin > 1e-12.
  bool strict = false;
};

/// k-order stochastic dominance of losses: does `a` dominate `b`
/// (a <=_SDk b, i.e. every decision maker with disutility derivatives
/// u', ..., u^(k) >= 0 weakly prefers a, someone strictly)?
///
/// Order 1 compares CDFs at all pooled atoms and midpoints. Orders >= 2
/// compare the degree-(k-1) upper partial moments E[(L - x)_+^(k-1)] at all
/// pooled test points, plus the lower-degree moments E[(L - m)^j],
/// j = 1..k-2, at the pooled minimum m. The second group is required for
/// equivalence with the disutility-class definition; see
/// docs/dominance-testpoints.md for the argument.
SDResult sd_dominates_losses(const EmpiricalDistribution& a,
                             const EmpiricalDistribution& b, int k);

/// Return-orientation counterpart: `a` dominates `b` when every increasing
/// utility with alternating higher derivatives weakly prefers a. Order 1
/// compares CDFs (a below b), orders >= 2 compare lower partial moments at
/// all test points plus endpoint moments at the pooled maximum.
SDResult sd_dominates_returns(const EmpiricalDistribution& a,
                              const EmpiricalDistribution& b, int k);

/// Smallest k <= kmax at which `a` dominates `b`, searching ascending
/// (dominance at k implies dominance at every higher order).
std::optional<int> min_dominance_order(const EmpiricalDistribution& a,
                                       const EmpiricalDistribution& b,
                                       int kmax);

/// Pairwise ranking over named loss distributions.
struct RuleRanking {
  std::vector<std::string> families;
  /// min_order[i][j]: smallest k at which family i dominates family j.
  std::vector<std::vector<std::optional<int>>> min_order;
  /// Family dominating all others at a common order, when one exists.
  std::optional<std::string> optimal_family;
  std::optional<int> optimal_order;
};

RuleRanking rank_rules(
    const std::vector<std::pair<std::string, EmpiricalDistribution>>& dists,
    int kmax);

/// Sufficiency check for multi-period dominance at order 1 or 2: true iff
/// seq1 weakly dominates seq2 in every period with at least one strict
/// period. A false verdict is not a proof of non-dominance.
bool multi_period_sd(const std::vector<EmpiricalDistribution>& seq1,
                     const std::vector<EmpiricalDistribution>& seq2,
                     int order);

namespace detail {
/// Pooled atoms of both samples plus midpoints of consecutive distinct
/// pooled atoms, sorted ascending.
std::vector<double> test_points(const EmpiricalDistribution& a,
                                const EmpiricalDistribution& b);
}  // namespace detail

}  // namespace sdpolicy::sd
