#pragma once

#include <cstdint>

namespace sdpolicy::rules {

/// Period length for the fitted exponential supply curve.
enum class FitPeriod { kYearly, kQuarterly };

/// Block-reward supply schedule: an initial reward halved every
/// `halving_interval` blocks, with issuance ending after `halving_cap`
/// halvings. Cumulative amounts are computed in integer base units
/// (1e8 per coin) with floor division at each halving, which is what
/// produces the exact terminal supply of 20999999.9769 coins.
struct SupplySchedule {
  double initial_reward = 50.0;
  std::int64_t halving_interval = 210000;
  int halving_cap = 33;
  double fit_alpha_yearly = 0.825;
  double fit_alpha_quarterly = 0.953;
  double cap = 2.1e7;

  double fit_alpha(FitPeriod p) const {
    return p == FitPeriod::kYearly ? fit_alpha_yearly : fit_alpha_quarterly;
  }

  std::int64_t terminal_height() const {
    return halving_interval * halving_cap;
  }

  /// Reward for the block at `height` (1-based), in base units. Block
  /// heights 1..halving_interval pay the full initial reward; the reward
  /// halves (with floor) at each subsequent interval and is zero beyond
  /// the halving cap.
  std::int64_t block_reward_units(std::int64_t height) const;

  /// Cumulative issued supply after `height` blocks, in base units.
  std::int64_t block_supply_units(std::int64_t height) const;

  /// Cumulative issued supply after `height` blocks, in coins.
  double block_supply(std::int64_t height) const;

  /// Fitted exponential supply at period t: cap * (1 - alpha^t).
  /// Throws std::invalid_argument unless alpha is in (0,1) and t >= 0.
  double supply_fit(std::int64_t t, double alpha) const;
  double supply_fit(std::int64_t t, FitPeriod p) const {
    return supply_fit(t, fit_alpha(p));
  }
};

/// Free-function forms over the canonical schedule.
double btc_block_supply(std::int64_t height);
double btc_supply_fit(std::int64_t t, double alpha);

}  // namespace sdpolicy::rules
