#include "sdpolicy/attest/circuit.hpp"

#include <stdexcept>

#include "sdpolicy/rules/rules.hpp"

namespace sdpolicy::attest {

CircuitDescriptor money_growth_circuit() {
  const auto c =
      rules::RuleCoefficients::defaults(rules::RuleFamily::kAugmentedMoneyGrowth);
  return CircuitDescriptor{
      "money-growth-v1",
      {c.at("rho_mm"), c.at("rho_mpi"), c.at("rho_mx"), c.at("mu_ss"),
       c.at("pi_ss"), c.at("x_ss")},
  };
}

bool is_known_circuit(const CircuitDescriptor& c) {
  return c.name == "money-growth-v1" && c.params.size() == 6;
}

double eval_circuit(const CircuitDescriptor& c,
                    const std::vector<double>& input_public,
                    const std::vector<double>& input_private) {
  if (!is_known_circuit(c)) {
    throw std::invalid_argument("unknown circuit '" + c.name + "'");
  }
  if (input_public.size() != 2 || input_private.size() != 1) {
    throw std::invalid_argument("money-growth-v1: expects inputs ([pi, x], [mu_prev])");
  }
  auto coef =
      rules::RuleCoefficients::defaults(rules::RuleFamily::kAugmentedMoneyGrowth);
  coef.set("rho_mm", c.params[0]);
  coef.set("rho_mpi", c.params[1]);
  coef.set("rho_mx", c.params[2]);
  coef.set("mu_ss", c.params[3]);
  coef.set("pi_ss", c.params[4]);
  coef.set("x_ss", c.params[5]);
  return rules::money_growth_step(input_private[0], input_public[0],
                                  input_public[1], coef);
}

}  // namespace sdpolicy::attest
