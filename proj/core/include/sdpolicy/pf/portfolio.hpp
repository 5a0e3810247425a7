#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdpolicy/sd/dominance.hpp"

namespace sdpolicy::pf {

/// Scenario returns: T scenarios by N assets with scenario probabilities.
struct ReturnsPanel {
  Eigen::MatrixXd returns;  // T x N
  Eigen::VectorXd probs;    // length T, positive, sums to 1
  std::vector<std::string> assets;

  int scenarios() const { return static_cast<int>(returns.rows()); }
  int n_assets() const { return static_cast<int>(returns.cols()); }
  void validate() const;
};

/// Checks lambda lies on the unit simplex (entries >= 0, sum 1 within
/// 1e-9); throws otherwise.
void validate_weights(const Eigen::VectorXd& lambda, int n_assets);

/// Distribution of portfolio returns: atoms rho_t' lambda with scenario
/// probabilities, return orientation.
sd::EmpiricalDistribution portfolio_return_dist(const ReturnsPanel& panel,
                                                const Eigen::VectorXd& lambda);

/// Does lambda dominate tau at order k (return orientation)?
sd::SDResult portfolio_dominates(const ReturnsPanel& panel,
                                 const Eigen::VectorXd& lambda,
                                 const Eigen::VectorXd& tau, int k);

struct EfficiencyReport {
  Eigen::VectorXd tau;
  /// True means no searched candidate dominates tau: efficiency at the
  /// searched resolution, not a proof.
  bool efficient_at_resolution = true;
  std::optional<Eigen::VectorXd> dominating;  // lexicographically smallest
  int order = 1;
  int grid_resolution = 0;
  int random_tries = 0;
  std::uint64_t seed = 0;
  long candidates_checked = 0;
};

/// Searches the simplex lattice with denominator `grid_resolution` plus
/// `random_tries` Dirichlet(1,...,1) points for a portfolio that strictly
/// dominates tau at order k.
EfficiencyReport is_sd_efficient(const ReturnsPanel& panel,
                                 const Eigen::VectorXd& tau, int k,
                                 int grid_resolution, int random_tries,
                                 std::uint64_t seed);

/// Reads a panel from a numeric table; a column named "prob" (when
/// present) carries scenario probabilities, all other columns are assets.
ReturnsPanel panel_from_table(const std::vector<std::string>& header,
                              const std::vector<std::vector<double>>& rows);

/// Arbitrage diagnostic: an arbitrage opportunity between two assets needs
/// first-order dominance of x over y under the market measure together
/// with an investor belief whose CDF never ranks y below x, i.e.
/// P(y <= a) - P(x <= a) <= 0 at every threshold. Both inputs are samples;
/// this reports the two conditions and their conjunction, nothing more.
struct ArbitrageReport {
  sd::SDResult market_fsd;      // x dominates y under the market measure
  bool belief_condition = false;
  bool arbitrage = false;
};

ArbitrageReport arbitrage_check(const sd::EmpiricalDistribution& x_market,
                                const sd::EmpiricalDistribution& y_market,
                                const sd::EmpiricalDistribution& x_belief,
                                const sd::EmpiricalDistribution& y_belief);

}  // namespace sdpolicy::pf
