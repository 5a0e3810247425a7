#include "sdpolicy/optim/policy_optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "sdpolicy/rng.hpp"

namespace sdpolicy::optim {

PolicyProblem PolicyProblem::for_family(const lre::StructuralModel& model,
                                        rules::RuleFamily family) {
  PolicyProblem p;
  p.model = &model;
  p.family = family;
  p.base = rules::RuleCoefficients::defaults(family);
  return p;
}

std::vector<std::string> PolicyProblem::optimized_names() const {
  std::vector<std::string> names;
  for (const auto& spec : rules::family_info(family).coefficients) {
    if (spec.optimized) names.push_back(spec.name);
  }
  return names;
}

Box PolicyProblem::optimized_box() const {
  Box box;
  for (const auto& spec : rules::family_info(family).coefficients) {
    if (spec.optimized) box.emplace_back(spec.lower, spec.upper);
  }
  return box;
}

namespace {

rules::RuleCoefficients with_values(const PolicyProblem& prob,
                                    const std::vector<std::string>& names,
                                    const Eigen::VectorXd& x) {
  rules::RuleCoefficients c = prob.base;
  for (std::size_t i = 0; i < names.size(); ++i) {
    c.set(names[i], x(static_cast<Eigen::Index>(i)));
  }
  return c;
}

double loss_from_covariance(const Eigen::MatrixXd& cov,
                            const lre::StructuralModel& model,
                            const std::map<std::string, double>& weights) {
  double loss = 0.0;
  for (const auto& [name, w] : weights) {
    if (w == 0.0) continue;
    if (w < 0.0) {
      throw std::invalid_argument("welfare_loss: weights must be >= 0");
    }
    const int idx = model.x_index(name);
    loss += w * cov(idx, idx);
  }
  return loss;
}

}  // namespace

double welfare_loss(const ParameterDraw& theta,
                    const rules::RuleCoefficients& phi,
                    const PolicyProblem& prob) {
  const auto& model = *prob.model;
  const auto block = rules::rule_to_policy_block(phi, model.layout);
  const auto canon = lre::assemble_canonical(model, block, theta);
  lre::SolvedModel solved;
  try {
    solved = lre::solve_re(canon, prob.solve);
  } catch (const std::runtime_error&) {
    return prob.penalty;  // singular system at this coefficient point
  }
  if (!solved.determinate) return prob.penalty;
  const Eigen::MatrixXd cov = lre::lyapunov(solved);
  return loss_from_covariance(cov, model, prob.weights);
}

double conditional_loss(const ParameterDraw& theta,
                        const rules::RuleCoefficients& phi,
                        const PolicyProblem& prob, const Eigen::VectorXd& z0,
                        int horizon, int n_paths, std::uint64_t seed) {
  if (horizon < 1) {
    throw std::invalid_argument("conditional_loss: horizon must be >= 1");
  }
  if (n_paths < 1) {
    throw std::invalid_argument("conditional_loss: n_paths must be >= 1");
  }
  const auto& model = *prob.model;
  const auto block = rules::rule_to_policy_block(phi, model.layout);
  const auto canon = lre::assemble_canonical(model, block, theta);
  const auto solved = lre::solve_re(canon, prob.solve);
  if (!solved.determinate) {
    throw std::invalid_argument("conditional_loss: indeterminate model");
  }

  std::vector<std::pair<int, double>> terms;
  for (const auto& [name, w] : prob.weights) {
    if (w != 0.0) terms.emplace_back(model.x_index(name), w);
  }

  double total = 0.0;
  for (int p = 0; p < n_paths; ++p) {
    const Eigen::MatrixXd path =
        lre::simulate(solved, z0, horizon, mix_seed(seed, p));
    double acc = 0.0;
    for (int h = 0; h < horizon; ++h) {
      for (const auto& [idx, w] : terms) {
        acc += w * path(h, idx) * path(h, idx);
      }
    }
    total += acc / static_cast<double>(horizon);
  }
  return total / static_cast<double>(n_paths);
}

std::pair<rules::RuleCoefficients, double> optimize_rule(
    const ParameterDraw& theta, const PolicyProblem& prob,
    OptimizeInfo* info) {
  const auto names = prob.optimized_names();
  const auto box = prob.optimized_box();
  BoxMinimizeOptions opts = prob.search;
  opts.infeasible_at = prob.penalty;

  const auto objective = [&](const Eigen::VectorXd& x) {
    return welfare_loss(theta, with_values(prob, names, x), prob);
  };
  const auto res = minimize_over_box(objective, box, opts);
  if (info) {
    info->evaluations = res.evaluations;
    info->feasible = !res.all_grid_infeasible;
  }
  return {with_values(prob, names, res.x), res.value};
}

std::pair<LossDistribution, std::vector<OptimalDraw>> loss_distribution(
    const PolicyProblem& prob, const std::vector<ParameterDraw>& draws,
    std::uint64_t seed) {
  if (draws.empty()) {
    throw std::invalid_argument("loss_distribution: draws must be nonempty");
  }
  LossDistribution dist;
  dist.family = prob.family;
  dist.tag = rules::family_info(prob.family).tag;
  dist.seed = seed;
  dist.draw_count = static_cast<int>(draws.size());

  std::vector<OptimalDraw> optimal;
  optimal.reserve(draws.size());
  for (const auto& theta : draws) {
    OptimizeInfo info;
    auto [phi, loss] = optimize_rule(theta, prob, &info);
    optimal.push_back(
        OptimalDraw{theta, std::move(phi), loss, info.feasible,
                    info.evaluations});
    if (info.feasible) {
      dist.losses.push_back(loss);
    } else {
      ++dist.dropped;
    }
  }
  if (dist.losses.empty()) {
    throw std::runtime_error(
        "loss_distribution: no feasible draws for family " + dist.tag);
  }
  return {std::move(dist), std::move(optimal)};
}

}  // namespace sdpolicy::optim
