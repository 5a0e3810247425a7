#pragma once

#include <Eigen/Core>

namespace sdpolicy::pf {

enum class Market { kDominant, kBitcoin };

/// Per-period series for the two segmented markets: monetary-policy shock
/// levels ms, complete-market consumption C, real exchange rate Q, and
/// gross risk-free rates R. All series share one length and must be
/// strictly positive (logs are taken).
struct PricingInputs {
  double gamma = 1.0;  // relative risk aversion, >= 0
  Eigen::VectorXd ms_d, ms_b;
  Eigen::VectorXd c_d, c_b;
  Eigen::VectorXd q;
  double r_d = 1.0;  // gross risk-free rate, dominant market
  double r_b = 1.0;  // gross risk-free rate, bitcoin market

  void validate() const;
};

/// CRRA stochastic discount factor M_{t+1} = (ms_{t+1} C_{t+1} /
/// (ms_t C_t))^(-gamma); one value per transition, length T-1. The
/// factorization into consumption and monetary components holds
/// elementwise.
Eigen::VectorXd crra_sdf(const PricingInputs& in, Market market);

/// Consumption-only and monetary-only SDF components.
Eigen::VectorXd crra_sdf_consumption(const PricingInputs& in, Market market);
Eigen::VectorXd crra_sdf_monetary(const PricingInputs& in, Market market);

/// Sample decomposition of the arbitrage-free expected depreciation:
///   E(dq) = (r_b - r_d) + 1/2 [Var(m_b) - Var(m_d)]
///         + E m_ms_b - E m_ms_d
/// where lowercase quantities are logs of the SDFs and r = log R. The
/// monetary addend's sign is the dominant-expected-returns diagnostic: a
/// positive value is the appreciation signal for the dominant currency.
struct ReturnDecomposition {
  double rate_differential = 0.0;    // r_b - r_d (log rates)
  double variance_adjustment = 0.0;  // (Var m_b - Var m_d) / 2
  double ms_log_mean_b = 0.0;        // E m_ms_b
  double ms_log_mean_d = 0.0;        // E m_ms_d
  double total = 0.0;
  double ms_addend() const { return ms_log_mean_b - ms_log_mean_d; }
  bool dominant_appreciation() const { return ms_addend() > 0.0; }
};

ReturnDecomposition expected_return_decomposition(const PricingInputs& in);

/// Residuals of the two Euler equations evaluated at sample moments:
///   |mean(M_b Q_{t+1}/Q_t) - 1/R_d|  and  |mean(M_d Q_{t+1}/Q_t) - 1/R_b|.
/// A diagnostic identity check, not an equilibrium solver.
struct PricingResiduals {
  double dominant_leg = 0.0;
  double bitcoin_leg = 0.0;
};

PricingResiduals fundamental_pricing_check(const PricingInputs& in);

}  // namespace sdpolicy::pf
