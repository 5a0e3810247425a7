#include "sdpolicy/lre/builtin.hpp"

namespace sdpolicy::lre {

namespace {

// Built-in small New Keynesian model with a money block. Quarterly log
// deviations from the deterministic steady state. The "doc" block lists
// every structural equation; matrix entries below encode exactly those
// equations.
const char* const kNk3Json = R"json({
  "name": "nk3",
  "doc": [
    "Variables (log deviations): y output gap, pi inflation, mr real money",
    "balances, ylag = y(-1), g demand shifter, e cost-push shifter, em money",
    "demand shifter. Policy variables: i nominal interest rate, mu nominal",
    "money growth.",
    "",
    "Private block:",
    "  IS:    y = E[y(+1)] - sigma_inv*(i - E[pi(+1)]) + g",
    "  PC:    pi = beta*E[pi(+1)] + kappa*y + e",
    "  MD:    mr = y - eta_md*i + em",
    "  YLAG:  ylag = y(-1)",
    "  ARG:   g = rho_g*g(-1) + sig_g*v_g",
    "  ARE:   e = rho_e*e(-1) + sig_e*v_e",
    "  AREM:  em = rho_em*em(-1) + sig_em*v_em",
    "",
    "Policy block (row 0 is replaced by the selected rule family):",
    "  RULE:  taylor sets i; money-growth families set mu",
    "  MGID:  mu = mr - mr(-1) + pi   (nominal money growth identity)",
    "",
    "Under the bitcoin_supply and constant_money_growth families the rule",
    "row is mu = sigma_u*v_u: neither responds to any observable, so both",
    "induce identical deviation dynamics. The supply schedule's level path",
    "is handled by the standalone supply evaluators, not by this block.",
    "",
    "Measurement: obs_pi = pi + sig_me*me_pi,",
    "             obs_dy = y - ylag + sig_me*me_dy"
  ],
  "x": ["y", "pi", "mr", "ylag", "g", "e", "em"],
  "u": ["i", "mu"],
  "shocks": ["v_g", "v_e", "v_em", "v_u"],
  "observables": ["obs_pi", "obs_dy"],
  "meas_noise_names": ["me_pi", "me_dy"],
  "parameters": ["sigma_inv", "beta", "kappa", "eta_md", "rho_g", "rho_e",
                 "rho_em", "sig_g", "sig_e", "sig_em", "sig_me"],
  "equations": {
    "lead_x": [
      {"row": 0, "col": "y", "value": -1},
      {"row": 0, "col": "pi", "param": "sigma_inv", "scale": -1},
      {"row": 1, "col": "pi", "param": "beta", "scale": -1}
    ],
    "cur_x": [
      {"row": 0, "col": "y", "value": 1},
      {"row": 0, "col": "g", "value": -1},
      {"row": 1, "col": "pi", "value": 1},
      {"row": 1, "col": "y", "param": "kappa", "scale": -1},
      {"row": 1, "col": "e", "value": -1},
      {"row": 2, "col": "mr", "value": 1},
      {"row": 2, "col": "y", "value": -1},
      {"row": 2, "col": "em", "value": -1},
      {"row": 3, "col": "ylag", "value": 1},
      {"row": 4, "col": "g", "value": 1},
      {"row": 5, "col": "e", "value": 1},
      {"row": 6, "col": "em", "value": 1}
    ],
    "cur_u": [
      {"row": 0, "col": "i", "param": "sigma_inv", "scale": 1},
      {"row": 2, "col": "i", "param": "eta_md", "scale": 1}
    ],
    "lag_x": [
      {"row": 3, "col": "y", "value": -1},
      {"row": 4, "col": "g", "param": "rho_g", "scale": -1},
      {"row": 5, "col": "e", "param": "rho_e", "scale": -1},
      {"row": 6, "col": "em", "param": "rho_em", "scale": -1}
    ],
    "shock": [
      {"row": 4, "col": "v_g", "param": "sig_g", "scale": -1},
      {"row": 5, "col": "v_e", "param": "sig_e", "scale": -1},
      {"row": 6, "col": "v_em", "param": "sig_em", "scale": -1}
    ]
  },
  "measurement": {
    "x": [
      {"row": "obs_pi", "col": "pi", "value": 1},
      {"row": "obs_dy", "col": "y", "value": 1},
      {"row": "obs_dy", "col": "ylag", "value": -1}
    ],
    "noise": [
      {"row": "obs_pi", "col": "me_pi", "param": "sig_me"},
      {"row": "obs_dy", "col": "me_dy", "param": "sig_me"}
    ]
  },
  "policy": {
    "rule_row": 0,
    "bindings": {"pi": "pi", "y": "y", "mr": "mr", "policy_shock": "v_u"},
    "instruments": {
      "taylor": "i",
      "constant_money_growth": "mu",
      "augmented_money_growth": "mu",
      "bitcoin_supply": "mu",
      "china_quantity": "mu"
    },
    "common": {
      "on_u": [{"row": 1, "col": "mu", "value": 1}],
      "on_x": [
        {"row": 1, "col": "mr", "value": 1},
        {"row": 1, "col": "pi", "value": 1}
      ],
      "on_lag_x": [{"row": 1, "col": "mr", "value": -1}]
    }
  }
})json";

const char* const kNk3DefaultPriorJson = R"json({
  "name": "nk3-default",
  "parameters": [
    {"name": "sigma_inv", "kind": "point", "value": 1.0},
    {"name": "beta", "kind": "point", "value": 0.99},
    {"name": "kappa", "kind": "beta", "a": 2.0, "b": 8.0},
    {"name": "eta_md", "kind": "point", "value": 1.0},
    {"name": "rho_g", "kind": "beta", "a": 6.0, "b": 2.0},
    {"name": "rho_e", "kind": "beta", "a": 2.0, "b": 2.0},
    {"name": "rho_em", "kind": "beta", "a": 6.0, "b": 2.0},
    {"name": "sig_g", "kind": "gamma", "shape": 4.0, "scale": 0.0025},
    {"name": "sig_e", "kind": "gamma", "shape": 4.0, "scale": 0.00125},
    {"name": "sig_em", "kind": "gamma", "shape": 4.0, "scale": 0.0025},
    {"name": "sig_me", "kind": "point", "value": 0.002}
  ]
})json";

}  // namespace

const char* builtin_model_json(const std::string& name) {
  if (name == "nk3") return kNk3Json;
  return nullptr;
}

const char* builtin_prior_json(const std::string& name) {
  if (name == "nk3-default") return kNk3DefaultPriorJson;
  return nullptr;
}

}  // namespace sdpolicy::lre
