#include "sdpolicy/rules/rules.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace sdpolicy::rules {

namespace {

std::vector<FamilyInfo> build_catalog() {
  std::vector<FamilyInfo> cat;

  // Interest-rate rule. rho2 and rho3 are kept at their conventional
  // values and not searched; the inflation and output-growth responses and
  // the smoothing coefficient are. i_bar/pi_bar are level targets that drop
  // out of the log-linearized block.
  cat.push_back(FamilyInfo{
      RuleFamily::kTaylor,
      "taylor",
      {
          {"rho1", 0.0, 0.97, 0.8, true},
          {"rho2", 0.0, 2.0, 1.0, false},
          {"rho3", 0.0, 1.0, 0.0, false},
          {"phi_pi", 1.01, 5.0, 1.5, true},
          {"phi_y", 0.0, 2.0, 0.125, true},
          {"i_bar", -1.0, 1.0, 0.01, false},
          {"pi_bar", -1.0, 1.0, 0.005, false},
          {"sigma_u", 0.0, 0.1, 0.0025, false},
      },
  });

  // Friedman-style constant growth. Only the steady-state growth rate is
  // adjustable; it does not move the log-linearized block, so the welfare
  // loss is flat over this box.
  cat.push_back(FamilyInfo{
      RuleFamily::kConstantMoneyGrowth,
      "constant_money_growth",
      {
          {"mu_ss", 1.0, 1.05, 1.005, true},
          {"pi_ss", 0.9, 1.1, 1.005, false},
          {"x_ss", 0.5, 2.0, 1.0, false},
          {"sigma_u", 0.0, 0.1, 0.0025, false},
      },
  });

  // Fixed supply schedule; nothing to optimize. In the log-linearized
  // model it behaves as constant money growth (no feedback to observables);
  // the level schedule lives in SupplySchedule.
  cat.push_back(FamilyInfo{
      RuleFamily::kBitcoinSupply,
      "bitcoin_supply",
      {
          {"sigma_u", 0.0, 0.1, 0.0025, false},
      },
  });

  // Base-growth rule with velocity correction; 17-lag structure is not
  // representable in the built-in state-space layouts, so this family is
  // evaluated standalone.
  cat.push_back(FamilyInfo{
      RuleFamily::kMcCallum,
      "mccallum",
      {
          {"dx_star", -0.05, 0.05, 0.0074, false},
          {"lambda_fb", 0.0, 1.0, 0.5, true},
      },
  });

  cat.push_back(FamilyInfo{
      RuleFamily::kAugmentedMoneyGrowth,
      "augmented_money_growth",
      {
          {"rho_mm", 0.0, 0.97, 0.5, true},
          {"rho_mpi", -2.0, 0.0, -0.5, true},
          {"rho_mx", -2.0, 0.0, -0.25, true},
          {"mu_ss", 1.0, 1.05, 1.005, false},
          {"pi_ss", 0.9, 1.1, 1.005, false},
          {"x_ss", 0.5, 2.0, 1.0, false},
          {"sigma_u", 0.0, 0.1, 0.0025, false},
      },
  });

  cat.push_back(FamilyInfo{
      RuleFamily::kChinaQuantity,
      "china_quantity",
      {
          {"theta1", 0.0, 0.97, 0.88, true},
          {"theta2", 0.0, 2.0, 0.16, true},
          {"theta3", 0.0, 2.0, 0.06, true},
          {"pi_star", -0.1, 0.1, 0.005, false},
          {"sigma_u", 0.0, 0.1, 0.0025, false},
      },
  });

  return cat;
}

}  // namespace

const std::vector<FamilyInfo>& rule_catalog() {
  static const std::vector<FamilyInfo> cat = build_catalog();
  return cat;
}

const FamilyInfo& family_info(RuleFamily family) {
  for (const auto& f : rule_catalog()) {
    if (f.family == family) return f;
  }
  throw std::logic_error("family_info: unknown family");
}

RuleFamily family_from_tag(const std::string& tag) {
  for (const auto& f : rule_catalog()) {
    if (f.tag == tag) return f.family;
  }
  throw std::invalid_argument("unknown rule family tag '" + tag + "'");
}

std::string catalog_to_json() {
  nlohmann::ordered_json doc;
  auto families = nlohmann::ordered_json::array();
  for (const auto& f : rule_catalog()) {
    nlohmann::ordered_json fam;
    fam["tag"] = f.tag;
    auto coefs = nlohmann::ordered_json::array();
    for (const auto& spec : f.coefficients) {
      nlohmann::ordered_json c;
      c["name"] = spec.name;
      c["lower"] = spec.lower;
      c["upper"] = spec.upper;
      c["default"] = spec.default_value;
      c["optimized"] = spec.optimized;
      coefs.push_back(c);
    }
    fam["coefficients"] = coefs;
    families.push_back(fam);
  }
  doc["families"] = families;
  return doc.dump(2) + "\n";
}

RuleCoefficients::RuleCoefficients(RuleFamily family) : family_(family) {
  for (const auto& spec : family_info(family).coefficients) {
    names_.push_back(spec.name);
    values_.push_back(spec.default_value);
  }
}

RuleCoefficients RuleCoefficients::defaults(RuleFamily family) {
  return RuleCoefficients(family);
}

const std::string& RuleCoefficients::tag() const {
  return family_info(family_).tag;
}

double RuleCoefficients::at(const std::string& name) const {
  const auto& specs = family_info(family_).coefficients;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].name == name) return values_[i];
  }
  throw std::out_of_range("RuleCoefficients: unknown coefficient '" + name +
                          "' for family " + tag());
}

void RuleCoefficients::set(const std::string& name, double value) {
  const auto& specs = family_info(family_).coefficients;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].name != name) continue;
    if (value < specs[i].lower || value > specs[i].upper) {
      throw std::invalid_argument(
          "RuleCoefficients: " + name + "=" + std::to_string(value) +
          " outside box [" + std::to_string(specs[i].lower) + "," +
          std::to_string(specs[i].upper) + "]");
    }
    values_[i] = value;
    return;
  }
  throw std::out_of_range("RuleCoefficients: unknown coefficient '" + name +
                          "' for family " + tag());
}

void RuleCoefficients::set_unchecked(const std::string& name, double value) {
  const auto& specs = family_info(family_).coefficients;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].name == name) {
      values_[i] = value;
      return;
    }
  }
  throw std::out_of_range("RuleCoefficients: unknown coefficient '" + name +
                          "' for family " + tag());
}

bool RuleCoefficients::in_box() const {
  const auto& specs = family_info(family_).coefficients;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (values_[i] < specs[i].lower || values_[i] > specs[i].upper) {
      return false;
    }
  }
  return true;
}

PolicyBlock PolicyBlock::zero(int k, int n, int q) {
  PolicyBlock b;
  b.on_u = Eigen::MatrixXd::Zero(k, k);
  b.on_lead_x = Eigen::MatrixXd::Zero(k, n);
  b.on_x = Eigen::MatrixXd::Zero(k, n);
  b.on_lag_x = Eigen::MatrixXd::Zero(k, n);
  b.on_lag_u = Eigen::MatrixXd::Zero(k, k);
  b.on_shocks = Eigen::MatrixXd::Zero(k, q);
  return b;
}

PolicyBlock rule_to_policy_block(const RuleCoefficients& c,
                                 const PolicyLayout& layout) {
  if (!layout.supports(c.family())) {
    throw std::invalid_argument("rule family '" + c.tag() +
                                "' is not supported on this model layout");
  }
  PolicyBlock b = layout.common;
  if (b.on_u.rows() != layout.k) b = PolicyBlock::zero(layout.k, layout.n, layout.q);

  const int row = layout.rule_row;
  const int instr = layout.instrument.at(c.family());
  b.on_u.row(row).setZero();
  b.on_lead_x.row(row).setZero();
  b.on_x.row(row).setZero();
  b.on_lag_x.row(row).setZero();
  b.on_lag_u.row(row).setZero();
  b.on_shocks.row(row).setZero();
  b.on_u(row, instr) = 1.0;

  switch (c.family()) {
    case RuleFamily::kTaylor: {
      // i_t = rho1 i_{t-1} + (rho2-rho1)(phi_pi pi_t + phi_y (y_t - y_{t-1}))
      //     - rho3 (mr_{t-1} - y_{t-1}) + sigma_u v_t
      const double rho1 = c.at("rho1");
      const double gain = c.at("rho2") - rho1;
      const double rho3 = c.at("rho3");
      b.on_lag_u(row, instr) = rho1;
      b.on_x(row, layout.col_pi) = gain * c.at("phi_pi");
      b.on_x(row, layout.col_y) = gain * c.at("phi_y");
      b.on_lag_x(row, layout.col_y) = -gain * c.at("phi_y") + rho3;
      b.on_lag_x(row, layout.col_mr) = -rho3;
      b.on_shocks(row, layout.shock_policy) = c.at("sigma_u");
      break;
    }
    case RuleFamily::kConstantMoneyGrowth:
    case RuleFamily::kBitcoinSupply: {
      // mu_t = sigma_u v_t: no feedback to any observable.
      b.on_shocks(row, layout.shock_policy) = c.at("sigma_u");
      break;
    }
    case RuleFamily::kAugmentedMoneyGrowth: {
      b.on_lag_u(row, instr) = c.at("rho_mm");
      b.on_x(row, layout.col_pi) = c.at("rho_mpi");
      b.on_x(row, layout.col_y) = c.at("rho_mx");
      b.on_shocks(row, layout.shock_policy) = c.at("sigma_u");
      break;
    }
    case RuleFamily::kChinaQuantity: {
      b.on_lag_u(row, instr) = c.at("theta1");
      b.on_x(row, layout.col_y) = -c.at("theta2");
      b.on_x(row, layout.col_pi) = -c.at("theta3");
      b.on_shocks(row, layout.shock_policy) = c.at("sigma_u");
      break;
    }
    case RuleFamily::kMcCallum:
      throw std::invalid_argument(
          "rule family 'mccallum' is not supported on this model layout");
  }
  return b;
}

double mccallum_delta_b(const std::vector<std::pair<double, double>>& history,
                        double x_target, double dx_star, double lambda_fb) {
  if (history.size() != 17) {
    throw std::invalid_argument(
        "mccallum_delta_b: need exactly the last 17 (x, b) pairs");
  }
  if (lambda_fb < 0.0) {
    throw std::invalid_argument("mccallum_delta_b: lambda_fb must be >= 0");
  }
  const auto& [x_back, b_back] = history.front();  // t-17
  const auto& [x_prev, b_prev] = history.back();   // t-1
  const double velocity_adj = (x_prev - b_prev - x_back + b_back) / 16.0;
  return dx_star - velocity_adj + lambda_fb * (x_target - x_prev);
}

double money_growth_step(double mu_prev, double pi_t, double x_t,
                         const RuleCoefficients& c) {
  if (!(mu_prev > 0.0 && pi_t > 0.0 && x_t > 0.0)) {
    throw std::invalid_argument(
        "money_growth_step: all level arguments must be > 0");
  }
  const double mu_ss = c.at("mu_ss");
  const double log_dev = c.at("rho_mm") * std::log(mu_prev / mu_ss) +
                         c.at("rho_mpi") * std::log(pi_t / c.at("pi_ss")) +
                         c.at("rho_mx") * std::log(x_t / c.at("x_ss"));
  return mu_ss * std::exp(log_dev);
}

double china_quantity_step(double dM_prev, double ygap_t, double pi_t,
                           double dM_star, const RuleCoefficients& c) {
  return dM_star + c.at("theta1") * dM_prev - c.at("theta2") * ygap_t -
         c.at("theta3") * (pi_t - c.at("pi_star"));
}

}  // namespace sdpolicy::rules
