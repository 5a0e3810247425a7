#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sdpolicy/bayes/prior.hpp"
#include "sdpolicy/lre/kalman.hpp"

namespace sdpolicy::bayes {

/// Maps a parameter draw to a bound state space; returns nullopt when the
/// draw yields no determinate solution (treated as likelihood -inf).
using BindFn =
    std::function<std::optional<lre::StateSpace>(const ParameterDraw&)>;

struct RwmhOptions {
  int chain_len = 5000;
  int burn_in = 1000;
  int thin = 1;
  double proposal_scale = 0.25;
  std::uint64_t seed = 0;
  /// Attempts to find a determinate starting draw (prior mean first, then
  /// prior samples) before giving up.
  int init_retries = 200;
};

struct PosteriorSample {
  std::vector<ParameterDraw> draws;  // equal weights
  double acceptance_rate = 0.0;
  int kept = 0;
  std::uint64_t seed = 0;

  double mean(const std::string& parameter) const;
  double sd(const std::string& parameter) const;
  /// Lower empirical quantile of one marginal, p in [0,1].
  double quantile(const std::string& parameter, double p) const;
};

/// Single-block Gaussian random-walk Metropolis targeting
/// prior(theta) * likelihood(Y | theta). Proposal steps are
/// proposal_scale * prior sd per coordinate, so point-mass coordinates
/// stay fixed. Draws outside the prior support or without a determinate
/// solution are rejected. Deterministic given (spec, data, options).
PosteriorSample rwmh_posterior(const PriorSpec& prior, const Eigen::MatrixXd& Y,
                               const BindFn& bind, const RwmhOptions& opts);

}  // namespace sdpolicy::bayes
