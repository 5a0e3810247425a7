#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sdpolicy/lre/solver.hpp"
#include "sdpolicy/optim/box_minimize.hpp"
#include "sdpolicy/param.hpp"
#include "sdpolicy/rules/rules.hpp"

namespace sdpolicy::optim {

/// One rule family's minimization problem on a model: which coefficients
/// are searched over which box, which state variables enter the loss with
/// which diagonal weights, and the penalty assigned to indeterminate
/// coefficient points.
struct PolicyProblem {
  const lre::StructuralModel* model = nullptr;
  rules::RuleFamily family = rules::RuleFamily::kTaylor;
  rules::RuleCoefficients base = rules::RuleCoefficients::defaults(family);
  /// Diagonal loss weights by x-variable name; default pi:1, y:0.05.
  std::map<std::string, double> weights{{"pi", 1.0}, {"y", 0.05}};
  double penalty = 1e6;
  lre::SolveOptions solve;
  BoxMinimizeOptions search;

  static PolicyProblem for_family(const lre::StructuralModel& model,
                                  rules::RuleFamily family);

  /// Names of the searched coefficients (catalog order).
  std::vector<std::string> optimized_names() const;
  Box optimized_box() const;
};

/// tr(W Sigma_z) restricted to the weighted variables: the sum of
/// weight * var(x_name) at the rule's stationary distribution, or
/// `penalty` when (theta, phi) leaves the determinacy region.
double welfare_loss(const ParameterDraw& theta,
                    const rules::RuleCoefficients& phi,
                    const PolicyProblem& prob);

/// Monte-Carlo estimate of the expected per-period quadratic loss over a
/// finite horizon starting from state z0 (equal weights across the
/// horizon). Deterministic given the seed; path p uses substream
/// mix_seed(seed, p). Throws on indeterminate (theta, phi).
double conditional_loss(const ParameterDraw& theta,
                        const rules::RuleCoefficients& phi,
                        const PolicyProblem& prob, const Eigen::VectorXd& z0,
                        int horizon, int n_paths, std::uint64_t seed);

struct OptimizeInfo {
  int evaluations = 0;
  bool feasible = true;  // false when every grid point was penalized
};

/// min over phi in the box of welfare_loss(theta, phi): coarse grid then
/// Nelder-Mead. The returned coefficients always lie inside the box and the
/// returned loss is never above the best grid value.
std::pair<rules::RuleCoefficients, double> optimize_rule(
    const ParameterDraw& theta, const PolicyProblem& prob,
    OptimizeInfo* info = nullptr);

struct OptimalDraw {
  ParameterDraw theta;
  rules::RuleCoefficients phi_min;
  double loss_min = 0.0;
  bool determinate = true;
  int evaluations = 0;
};

/// Sample of minimized welfare losses across parameter draws. Atoms carry
/// equal weights; draws with no feasible coefficient point are dropped and
/// counted.
struct LossDistribution {
  rules::RuleFamily family;
  std::string tag;
  std::vector<double> losses;
  std::uint64_t seed = 0;
  int draw_count = 0;
  int dropped = 0;
};

std::pair<LossDistribution, std::vector<OptimalDraw>> loss_distribution(
    const PolicyProblem& prob, const std::vector<ParameterDraw>& draws,
    std::uint64_t seed = 0);

}  // namespace sdpolicy::optim
