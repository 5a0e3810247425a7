#include <doctest.h>

#include <stdexcept>

#include <Eigen/Dense>
#include <cmath>

#include "sdpolicy/bayes/rwmh.hpp"
#include "sdpolicy/rng.hpp"

using namespace sdpolicy;
using namespace sdpolicy::bayes;

namespace {

// y_t = theta + noise(1): state space with no dynamics and a measurement
// intercept carrying theta.
lre::StateSpace conjugate_ss(double theta) {
  lre::StateSpace ss;
  ss.solved.A = Eigen::MatrixXd::Zero(1, 1);
  ss.solved.B = Eigen::MatrixXd::Zero(1, 1);
  ss.solved.determinate = true;
  ss.solved.converged = true;
  ss.meas.intercept = Eigen::VectorXd::Constant(1, theta);
  ss.meas.Hm = Eigen::MatrixXd::Zero(1, 1);
  ss.meas.Noise = Eigen::MatrixXd::Identity(1, 1);
  return ss;
}

}  // namespace

TEST_CASE("point-mass prior keeps the chain constant") {
  PriorSpec prior;
  prior.entries.push_back({"theta", PriorKind::kPointMass, 1.5, 0.0});
  Eigen::MatrixXd Y(3, 1);
  Y << 1.0, 2.0, 1.4;
  RwmhOptions opts;
  opts.chain_len = 200;
  opts.burn_in = 50;
  const auto post = rwmh_posterior(
      prior, Y, [](const ParameterDraw& d) { return conjugate_ss(d.at("theta")); },
      opts);
  for (const auto& d : post.draws) CHECK(d.at("theta") == 1.5);
}

TEST_CASE("conjugate normal toy matches the closed-form posterior") {
  // Prior theta ~ N(0,1); y_t = theta + N(0,1), T = 50.
  const int T = 50;
  Rng rng(2024);
  const double theta_true = 0.8;
  Eigen::MatrixXd Y(T, 1);
  for (int t = 0; t < T; ++t) Y(t, 0) = theta_true + rng.normal();
  const double ybar = Y.col(0).mean();
  const double post_mean = T * ybar / (T + 1.0);
  const double post_sd = std::sqrt(1.0 / (T + 1.0));

  PriorSpec prior;
  prior.entries.push_back({"theta", PriorKind::kNormal, 0.0, 1.0});
  RwmhOptions opts;
  opts.chain_len = 20000;
  opts.burn_in = 2000;
  opts.proposal_scale = 0.3;
  opts.seed = 11;
  const auto post = rwmh_posterior(
      prior, Y, [](const ParameterDraw& d) { return conjugate_ss(d.at("theta")); },
      opts);

  CHECK(post.acceptance_rate > 0.05);
  CHECK(post.acceptance_rate < 0.95);
  CHECK(std::abs(post.mean("theta") - post_mean) < 3.0 * post_sd);
  CHECK(post.sd("theta") == doctest::Approx(post_sd).epsilon(0.15));
}

TEST_CASE("deterministic given identical inputs") {
  PriorSpec prior;
  prior.entries.push_back({"theta", PriorKind::kNormal, 0.0, 1.0});
  Eigen::MatrixXd Y(5, 1);
  Y << 0.1, 0.4, -0.2, 0.9, 0.3;
  RwmhOptions opts;
  opts.chain_len = 500;
  opts.burn_in = 100;
  opts.seed = 3;
  const auto bind = [](const ParameterDraw& d) {
    return conjugate_ss(d.at("theta"));
  };
  const auto a = rwmh_posterior(prior, Y, bind, opts);
  const auto b = rwmh_posterior(prior, Y, bind, opts);
  REQUIRE(a.draws.size() == b.draws.size());
  for (std::size_t i = 0; i < a.draws.size(); ++i) {
    CHECK(a.draws[i].at("theta") == b.draws[i].at("theta"));
  }
  CHECK(a.acceptance_rate == b.acceptance_rate);
}

TEST_CASE("draws never leave the prior support") {
  PriorSpec prior;
  PriorEntry e{"theta", PriorKind::kNormal, 0.3, 1.0};
  e.lower = 0.0;
  e.upper = 0.6;
  prior.entries.push_back(e);
  Eigen::MatrixXd Y(10, 1);
  Y.setConstant(5.0);  // pulls hard toward the upper clamp
  RwmhOptions opts;
  opts.chain_len = 2000;
  opts.burn_in = 100;
  opts.seed = 5;
  const auto post = rwmh_posterior(
      prior, Y, [](const ParameterDraw& d) { return conjugate_ss(d.at("theta")); },
      opts);
  for (const auto& d : post.draws) {
    CHECK(d.at("theta") >= 0.0);
    CHECK(d.at("theta") <= 0.6);
  }
}

TEST_CASE("no determinate starting point is an error") {
  PriorSpec prior;
  prior.entries.push_back({"theta", PriorKind::kNormal, 0.0, 1.0});
  Eigen::MatrixXd Y(2, 1);
  Y << 0.0, 0.1;
  RwmhOptions opts;
  opts.chain_len = 10;
  opts.burn_in = 1;
  opts.init_retries = 5;
  const auto bind = [](const ParameterDraw&) {
    return std::optional<lre::StateSpace>{};
  };
  CHECK_THROWS_AS(rwmh_posterior(prior, Y, bind, opts), std::runtime_error);
}

TEST_CASE("invalid options rejected") {
  PriorSpec prior;
  prior.entries.push_back({"theta", PriorKind::kNormal, 0.0, 1.0});
  Eigen::MatrixXd Y(1, 1);
  Y << 0.0;
  const auto bind = [](const ParameterDraw& d) {
    return conjugate_ss(d.at("theta"));
  };
  RwmhOptions opts;
  opts.chain_len = 10;
  opts.burn_in = 10;
  CHECK_THROWS_AS(rwmh_posterior(prior, Y, bind, opts), std::invalid_argument);
}
