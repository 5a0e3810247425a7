#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "sdpolicy/bayes/prior.hpp"
#include "sdpolicy/lre/kalman.hpp"
#include "sdpolicy/lre/model.hpp"
#include "sdpolicy/lre/solver.hpp"
#include "sdpolicy/optim/policy_optimizer.hpp"
#include "sdpolicy/rng.hpp"
#include "sdpolicy/rules/rules.hpp"
#include "sdpolicy/rules/supply.hpp"
#include "sdpolicy/sd/dominance.hpp"

using namespace sdpolicy;

namespace {

const lre::StructuralModel& nk3() {
  static const auto model = lre::load_model("nk3");
  return model;
}

ParameterDraw reference_theta() {
  return bayes::load_prior("nk3-default").mean_draw();
}

lre::CanonicalForm taylor_canonical() {
  const auto block = rules::rule_to_policy_block(
      rules::RuleCoefficients::defaults(rules::RuleFamily::kTaylor),
      nk3().layout);
  return lre::assemble_canonical(nk3(), block, reference_theta());
}

void BM_SolveRe(benchmark::State& state) {
  const auto canon = taylor_canonical();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lre::solve_re(canon));
  }
}
BENCHMARK(BM_SolveRe);

void BM_Lyapunov(benchmark::State& state) {
  const auto solved = lre::solve_re(taylor_canonical());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lre::lyapunov(solved));
  }
}
BENCHMARK(BM_Lyapunov);

void BM_KalmanLoglik(benchmark::State& state) {
  lre::StateSpace ss;
  ss.solved = lre::solve_re(taylor_canonical());
  ss.meas = lre::bind_measurement(nk3(), reference_theta());
  const int T = static_cast<int>(state.range(0));
  const auto states = lre::simulate(ss.solved, Eigen::VectorXd::Zero(9), T, 1);
  Eigen::MatrixXd Y = states * ss.meas.Hm.transpose();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lre::kalman_loglik(ss, Y));
  }
}
BENCHMARK(BM_KalmanLoglik)->Arg(120)->Arg(480);

void BM_WelfareLossEval(benchmark::State& state) {
  const auto theta = reference_theta();
  auto prob = optim::PolicyProblem::for_family(
      nk3(), rules::RuleFamily::kAugmentedMoneyGrowth);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optim::welfare_loss(theta, prob.base, prob));
  }
}
BENCHMARK(BM_WelfareLossEval);

void BM_SdDominates(benchmark::State& state) {
  Rng rng(5);
  std::vector<double> v1(50), v2(50);
  for (auto& x : v1) x = rng.uniform(0.0, 10.0);
  for (auto& x : v2) x = rng.uniform(0.0, 10.0);
  const auto d1 =
      sd::EmpiricalDistribution::from_samples(v1, sd::Orientation::kLoss);
  const auto d2 =
      sd::EmpiricalDistribution::from_samples(v2, sd::Orientation::kLoss);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sd::sd_dominates_losses(d1, d2, k));
  }
}
BENCHMARK(BM_SdDominates)->Arg(1)->Arg(2)->Arg(4);

void BM_BlockSupply(benchmark::State& state) {
  const rules::SupplySchedule s;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.block_supply_units(s.terminal_height()));
  }
}
BENCHMARK(BM_BlockSupply);

}  // namespace

BENCHMARK_MAIN();
