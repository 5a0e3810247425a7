#include "sdpolicy/bayes/rwmh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sdpolicy::bayes {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double PosteriorSample::mean(const std::string& parameter) const {
  double acc = 0.0;
  for (const auto& d : draws) acc += d.at(parameter);
  return acc / static_cast<double>(draws.size());
}

double PosteriorSample::sd(const std::string& parameter) const {
  const double m = mean(parameter);
  double acc = 0.0;
  for (const auto& d : draws) {
    const double dev = d.at(parameter) - m;
    acc += dev * dev;
  }
  return std::sqrt(acc / static_cast<double>(draws.size()));
}

double PosteriorSample::quantile(const std::string& parameter, double p) const {
  if (draws.empty()) throw std::logic_error("PosteriorSample: empty");
  std::vector<double> xs;
  xs.reserve(draws.size());
  for (const auto& d : draws) xs.push_back(d.at(parameter));
  std::sort(xs.begin(), xs.end());
  const double pos = p * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  const double frac = pos - std::floor(pos);
  return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

PosteriorSample rwmh_posterior(const PriorSpec& prior, const Eigen::MatrixXd& Y,
                               const BindFn& bind, const RwmhOptions& opts) {
  if (opts.chain_len <= opts.burn_in) {
    throw std::invalid_argument("rwmh: chain_len must exceed burn_in");
  }
  if (!(opts.proposal_scale > 0.0)) {
    throw std::invalid_argument("rwmh: proposal_scale must be > 0");
  }
  if (opts.thin < 1) throw std::invalid_argument("rwmh: thin must be >= 1");
  prior.validate();

  const auto log_target = [&](const ParameterDraw& d) -> double {
    const double lp = prior.log_density(d);
    if (lp == kNegInf) return kNegInf;
    const auto ss = bind(d);
    if (!ss) return kNegInf;
    try {
      return lp + lre::kalman_loglik(*ss, Y);
    } catch (const std::runtime_error&) {
      return kNegInf;  // singular forecast covariance at this draw
    }
  };

  Rng rng(opts.seed);

  // Starting point: prior mean, then prior samples.
  ParameterDraw current = prior.mean_draw();
  double current_lt = log_target(current);
  for (int tries = 0; current_lt == kNegInf && tries < opts.init_retries;
       ++tries) {
    current = prior.sample_draw(rng);
    current_lt = log_target(current);
  }
  if (current_lt == kNegInf) {
    throw std::runtime_error(
        "rwmh: no determinate starting draw found within init_retries");
  }

  std::vector<double> step(prior.entries.size());
  for (std::size_t i = 0; i < prior.entries.size(); ++i) {
    step[i] = opts.proposal_scale * prior.entries[i].sd();
  }

  PosteriorSample out;
  out.seed = opts.seed;
  long accepted = 0;
  for (int it = 0; it < opts.chain_len; ++it) {
    ParameterDraw prop = current;
    for (std::size_t i = 0; i < step.size(); ++i) {
      if (step[i] > 0.0) prop.values[i] += step[i] * rng.normal();
    }
    const double prop_lt = log_target(prop);
    const double log_u = std::log(std::max(rng.uniform(), 0x1.0p-53));
    if (prop_lt - current_lt > log_u) {
      current = prop;
      current_lt = prop_lt;
      ++accepted;
    }
    if (it >= opts.burn_in && (it - opts.burn_in) % opts.thin == 0) {
      out.draws.push_back(current);
    }
  }
  out.acceptance_rate =
      static_cast<double>(accepted) / static_cast<double>(opts.chain_len);
  out.kept = static_cast<int>(out.draws.size());
  return out;
}

}  // namespace sdpolicy::bayes
