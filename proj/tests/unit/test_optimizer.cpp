#include <doctest.h>

#include <stdexcept>

#include <Eigen/Dense>
#include <cmath>

#include "sdpolicy/bayes/prior.hpp"
#include "sdpolicy/optim/policy_optimizer.hpp"
#include "sdpolicy/rng.hpp"

using namespace sdpolicy;
using namespace sdpolicy::optim;

namespace {

ParameterDraw nk3_reference_draw() {
  ParameterDraw d;
  d.set("sigma_inv", 1.0);
  d.set("beta", 0.99);
  d.set("kappa", 0.2);
  d.set("eta_md", 1.0);
  d.set("rho_g", 0.75);
  d.set("rho_e", 0.5);
  d.set("rho_em", 0.75);
  d.set("sig_g", 0.01);
  d.set("sig_e", 0.005);
  d.set("sig_em", 0.01);
  d.set("sig_me", 0.002);
  return d;
}

const lre::StructuralModel& nk3() {
  static const lre::StructuralModel model = lre::load_model("nk3");
  return model;
}

}  // namespace

TEST_CASE("minimize_over_box on synthetic losses") {
  SUBCASE("singleton box returns that point") {
    const auto res = minimize_over_box(
        [](const Eigen::VectorXd& x) { return x(0) * x(0); },
        {{0.7, 0.7}});
    CHECK(res.x(0) == 0.7);
    CHECK(res.value == doctest::Approx(0.49));
  }
  SUBCASE("1-D convex loss is located to 1e-4") {
    const auto res = minimize_over_box(
        [](const Eigen::VectorXd& x) {
          return (x(0) - 0.3) * (x(0) - 0.3) + 1.0;
        },
        {{0.0, 1.0}});
    CHECK(res.x(0) == doctest::Approx(0.3).epsilon(1e-4));
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-7));
  }
  SUBCASE("2-D with a boundary solution stays inside the box") {
    const auto res = minimize_over_box(
        [](const Eigen::VectorXd& x) {
          return (x(0) + 1.0) * (x(0) + 1.0) + (x(1) - 0.25) * (x(1) - 0.25);
        },
        {{0.0, 1.0}, {0.0, 1.0}});
    CHECK(res.x(0) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(res.x(1) == doctest::Approx(0.25).epsilon(1e-3));
  }
  SUBCASE("all-infeasible grid is flagged") {
    BoxMinimizeOptions opts;
    opts.infeasible_at = 10.0;
    const auto res = minimize_over_box(
        [](const Eigen::VectorXd&) { return 11.0; }, {{0.0, 1.0}}, opts);
    CHECK(res.all_grid_infeasible);
    CHECK(res.value == 11.0);
  }
  SUBCASE("zero-dimensional box evaluates once") {
    const auto res = minimize_over_box(
        [](const Eigen::VectorXd&) { return 3.5; }, {});
    CHECK(res.value == 3.5);
    CHECK(res.evaluations == 1);
  }
}

TEST_CASE("welfare loss") {
  const auto& model = nk3();
  const auto theta = nk3_reference_draw();
  SUBCASE("zero weights give zero loss for a determinate rule") {
    auto prob = PolicyProblem::for_family(model, rules::RuleFamily::kTaylor);
    prob.weights = {{"pi", 0.0}, {"y", 0.0}};
    CHECK(welfare_loss(theta, prob.base, prob) == 0.0);
  }
  SUBCASE("default weights match the lyapunov variances") {
    auto prob = PolicyProblem::for_family(model, rules::RuleFamily::kTaylor);
    const auto block =
        rules::rule_to_policy_block(prob.base, model.layout);
    const auto solved =
        lre::solve_re(lre::assemble_canonical(model, block, theta));
    REQUIRE(solved.determinate);
    const auto cov = lre::lyapunov(solved);
    const double expect =
        cov(model.x_index("pi"), model.x_index("pi")) +
        0.05 * cov(model.x_index("y"), model.x_index("y"));
    CHECK(welfare_loss(theta, prob.base, prob) == doctest::Approx(expect));
  }
  SUBCASE("violating the Taylor principle hits the penalty") {
    auto prob = PolicyProblem::for_family(model, rules::RuleFamily::kTaylor);
    auto passive = prob.base;
    passive.set_unchecked("phi_pi", 0.5);  // outside the box, diagnostic
    passive.set_unchecked("phi_y", 0.0);
    CHECK(welfare_loss(theta, passive, prob) == prob.penalty);
    CHECK(welfare_loss(theta, prob.base, prob) < prob.penalty);
  }
  SUBCASE("scalar persistent state matches the geometric-series loss") {
    // One state with s = 0.5 s(-1) + v: variance 1/(1-0.25) = 4/3.
    lre::StructuralModel m;
    m.n = 1;
    m.k = 1;
    m.q = 1;
    m.r = 0;
    m.m = 0;
    m.x_names = {"s"};
    m.u_names = {"u"};
    m.shock_names = {"v"};
    m.cur_x = {{0, 0, 1.0, "", 1.0}};
    m.lag_x = {{0, 0, -0.5, "", 1.0}};
    m.shock = {{0, 0, -1.0, "", 1.0}};
    m.layout.n = 1;
    m.layout.k = 1;
    m.layout.q = 1;
    m.layout.col_pi = 0;
    m.layout.col_y = 0;
    m.layout.col_mr = 0;
    m.layout.shock_policy = 0;
    m.layout.instrument[rules::RuleFamily::kConstantMoneyGrowth] = 0;
    m.layout.common = rules::PolicyBlock::zero(1, 1, 1);
    m.validate();
    auto sprob = PolicyProblem::for_family(
        m, rules::RuleFamily::kConstantMoneyGrowth);
    sprob.base.set("sigma_u", 0.0);
    sprob.weights = {{"s", 1.0}};
    CHECK(welfare_loss(ParameterDraw{}, sprob.base, sprob) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("scaling the weights scales the loss") {
    auto prob = PolicyProblem::for_family(model, rules::RuleFamily::kTaylor);
    const double base = welfare_loss(theta, prob.base, prob);
    auto scaled = prob;
    scaled.weights = {{"pi", 3.0}, {"y", 0.15}};
    CHECK(welfare_loss(theta, prob.base, scaled) ==
          doctest::Approx(3.0 * base).epsilon(1e-12));
  }
}

TEST_CASE("conditional loss") {
  const auto& model = nk3();
  const auto theta = nk3_reference_draw();
  auto prob = PolicyProblem::for_family(model, rules::RuleFamily::kTaylor);

  SUBCASE("scalar decay model matches hand arithmetic") {
    // One persistent state s with s = 0.5 s(-1), no shock loading, and a
    // trivial policy row: from z0 = (1, 0) over H = 2 the per-period losses
    // are 0.25 and 0.0625, averaging 0.15625.
    lre::StructuralModel m;
    m.n = 1;
    m.k = 1;
    m.q = 1;
    m.r = 0;
    m.m = 0;
    m.x_names = {"s"};
    m.u_names = {"u"};
    m.shock_names = {"v"};
    m.cur_x = {{0, 0, 1.0, "", 1.0}};
    m.lag_x = {{0, 0, -0.5, "", 1.0}};
    m.layout.n = 1;
    m.layout.k = 1;
    m.layout.q = 1;
    m.layout.col_pi = 0;
    m.layout.col_y = 0;
    m.layout.col_mr = 0;
    m.layout.shock_policy = 0;
    m.layout.rule_row = 0;
    m.layout.instrument[rules::RuleFamily::kConstantMoneyGrowth] = 0;
    m.layout.common = rules::PolicyBlock::zero(1, 1, 1);
    m.validate();

    auto sprob = optim::PolicyProblem::for_family(
        m, rules::RuleFamily::kConstantMoneyGrowth);
    sprob.base.set("sigma_u", 0.0);
    sprob.weights = {{"s", 1.0}};
    Eigen::VectorXd z0(2);
    z0 << 1.0, 0.0;
    const double loss =
        conditional_loss(ParameterDraw{}, sprob.base, sprob, z0, 2, 3, 1);
    CHECK(loss == doctest::Approx(0.15625));
  }
  SUBCASE("deterministic decay from a known state") {
    // Scalar check through a hand-built problem is covered in test_lre;
    // here: zero state and no shocks gives zero loss.
    auto zero_shocks = theta;
    zero_shocks.set("sig_g", 0.0);
    zero_shocks.set("sig_e", 0.0);
    zero_shocks.set("sig_em", 0.0);
    auto phi = prob.base;
    phi.set("sigma_u", 0.0);
    const double loss =
        conditional_loss(zero_shocks, phi, prob, Eigen::VectorXd::Zero(9), 8,
                         3, 42);
    CHECK(loss == doctest::Approx(0.0));
  }
  SUBCASE("deterministic given the seed") {
    const Eigen::VectorXd z0 = Eigen::VectorXd::Zero(9);
    const double a = conditional_loss(theta, prob.base, prob, z0, 8, 16, 9);
    const double b = conditional_loss(theta, prob.base, prob, z0, 8, 16, 9);
    CHECK(a == b);
  }
  SUBCASE("converges to the unconditional loss from the stationary state") {
    // With z0 = 0 (the stationary mean) and a long horizon, the average
    // per-period loss approaches tr(W Sigma).
    const double expect = welfare_loss(theta, prob.base, prob);
    const double mc =
        conditional_loss(theta, prob.base, prob, Eigen::VectorXd::Zero(9),
                         400, 200, 31);
    CHECK(std::abs(mc - expect) / expect < 0.05);
  }
}

TEST_CASE("optimize_rule") {
  const auto& model = nk3();
  const auto theta = nk3_reference_draw();
  SUBCASE("taylor optimum beats a random-search audit") {
    auto prob = PolicyProblem::for_family(model, rules::RuleFamily::kTaylor);
    auto [phi, loss] = optimize_rule(theta, prob);
    CHECK(loss < prob.penalty);
    Rng rng(77);
    const auto names = prob.optimized_names();
    const auto box = prob.optimized_box();
    for (int trial = 0; trial < 1000; ++trial) {
      auto probe = prob.base;
      for (std::size_t i = 0; i < names.size(); ++i) {
        probe.set(names[i], rng.uniform(box[i].first, box[i].second));
      }
      CHECK(loss <= welfare_loss(theta, probe, prob) + 1e-9);
    }
  }
  SUBCASE("scaling the weights leaves the argmin unchanged") {
    auto prob = PolicyProblem::for_family(
        model, rules::RuleFamily::kAugmentedMoneyGrowth);
    auto scaled = prob;
    scaled.weights = {{"pi", 4.0}, {"y", 0.2}};
    const auto [phi_a, loss_a] = optimize_rule(theta, prob);
    const auto [phi_b, loss_b] = optimize_rule(theta, scaled);
    CHECK(loss_b == doctest::Approx(4.0 * loss_a).epsilon(1e-6));
    // The loss surface is flat near the optimum in some directions, so the
    // argmins agree in value rather than coordinates: each is epsilon-
    // optimal for the other's objective.
    CHECK(welfare_loss(theta, phi_b, prob) <= loss_a * (1.0 + 1e-4));
    CHECK(welfare_loss(theta, phi_a, scaled) <= loss_b * (1.0 + 1e-4));
  }
  SUBCASE("bitcoin supply has nothing to optimize") {
    auto prob =
        PolicyProblem::for_family(model, rules::RuleFamily::kBitcoinSupply);
    CHECK(prob.optimized_box().empty());
    OptimizeInfo info;
    auto [phi, loss] = optimize_rule(theta, prob, &info);
    CHECK(info.evaluations == 1);
    CHECK(loss ==
          doctest::Approx(welfare_loss(theta, prob.base, prob)));
  }
}

TEST_CASE("loss_distribution and the nesting property") {
  const auto& model = nk3();
  const auto prior = bayes::load_prior("nk3-default");
  const auto draws = bayes::sample_prior(prior, 12, 2024);

  auto prob_const = PolicyProblem::for_family(
      model, rules::RuleFamily::kConstantMoneyGrowth);
  auto prob_aug = PolicyProblem::for_family(
      model, rules::RuleFamily::kAugmentedMoneyGrowth);

  const auto [dist_const, opt_const] = loss_distribution(prob_const, draws, 1);
  const auto [dist_aug, opt_aug] = loss_distribution(prob_aug, draws, 1);

  REQUIRE(dist_const.losses.size() == draws.size());
  REQUIRE(dist_aug.losses.size() == draws.size());
  CHECK(dist_const.dropped == 0);
  CHECK(dist_aug.dropped == 0);

  int strict = 0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    // Constant growth is the rho = 0 point of the augmented family, so the
    // per-draw minimized loss can never be larger for the augmented rule.
    CHECK(dist_aug.losses[i] <= dist_const.losses[i] + 1e-6);
    if (dist_aug.losses[i] < dist_const.losses[i] - 1e-12) ++strict;
    CHECK(opt_aug[i].phi_min.at("rho_mm") >= 0.0);
    CHECK(opt_aug[i].phi_min.at("rho_mm") <= 0.97);
  }
  CHECK(strict > 0);

  SUBCASE("identical draws produce identical atoms") {
    const std::vector<ParameterDraw> twice = {draws[0], draws[0]};
    const auto [d2, o2] = loss_distribution(prob_const, twice, 1);
    CHECK(d2.losses[0] == d2.losses[1]);
  }
  SUBCASE("empty draw list rejected") {
    CHECK_THROWS_AS(loss_distribution(prob_const, {}, 1),
                    std::invalid_argument);
  }
}
