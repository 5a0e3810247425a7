#include "sdpolicy/rules/supply.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdpolicy::rules {

namespace {
constexpr double kBaseUnitsPerCoin = 1e8;
}

std::int64_t SupplySchedule::block_reward_units(std::int64_t height) const {
  if (height < 1) {
    throw std::invalid_argument("block_reward_units: height must be >= 1");
  }
  const std::int64_t era = (height - 1) / halving_interval;
  if (era >= halving_cap) return 0;
  const auto initial =
      static_cast<std::int64_t>(std::llround(initial_reward * kBaseUnitsPerCoin));
  return initial >> era;
}

std::int64_t SupplySchedule::block_supply_units(std::int64_t height) const {
  if (height < 0) {
    throw std::invalid_argument("block_supply_units: height must be >= 0");
  }
  const std::int64_t counted = std::min(height, terminal_height());
  const auto initial =
      static_cast<std::int64_t>(std::llround(initial_reward * kBaseUnitsPerCoin));
  std::int64_t total = 0;
  for (int era = 0; era < halving_cap; ++era) {
    const std::int64_t era_start = static_cast<std::int64_t>(era) * halving_interval;
    const std::int64_t blocks =
        std::clamp<std::int64_t>(counted - era_start, 0, halving_interval);
    if (blocks == 0) break;
    total += blocks * (initial >> era);
  }
  return total;
}

double SupplySchedule::block_supply(std::int64_t height) const {
  return static_cast<double>(block_supply_units(height)) / kBaseUnitsPerCoin;
}

double SupplySchedule::supply_fit(std::int64_t t, double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("supply_fit: alpha must be in (0,1)");
  }
  if (t < 0) throw std::invalid_argument("supply_fit: t must be >= 0");
  return cap * (1.0 - std::pow(alpha, static_cast<double>(t)));
}

double btc_block_supply(std::int64_t height) {
  return SupplySchedule{}.block_supply(height);
}

double btc_supply_fit(std::int64_t t, double alpha) {
  return SupplySchedule{}.supply_fit(t, alpha);
}

}  // namespace sdpolicy::rules
