#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdpolicy/param.hpp"
#include "sdpolicy/rng.hpp"

namespace sdpolicy::bayes {

enum class PriorKind { kNormal, kUniform, kBeta, kGamma, kPointMass };

/// One marginal prior. `a`/`b` are interpreted per kind: normal(mean, sd),
/// uniform(lower, upper), beta(shape a, shape b), gamma(shape, scale),
/// point-mass(value, unused). `lower`/`upper` clamp the support; defaults
/// follow the kind's natural support.
struct PriorEntry {
  std::string name;
  PriorKind kind = PriorKind::kPointMass;
  double a = 0.0;
  double b = 0.0;
  double lower = -1e308;
  double upper = 1e308;

  double mean() const;
  double sd() const;
  bool in_support(double x) const;
  /// Log density up to the truncation constant; -inf outside support.
  double log_density(double x) const;
  double sample(Rng& rng) const;
  /// Hyperparameter validation; throws std::invalid_argument.
  void validate() const;
};

struct PriorSpec {
  std::string name;
  std::vector<PriorEntry> entries;

  const PriorEntry& entry(const std::string& parameter) const;
  ParameterDraw mean_draw() const;
  ParameterDraw sample_draw(Rng& rng) const;
  /// Joint log density; -inf when any coordinate leaves its support.
  double log_density(const ParameterDraw& draw) const;
  bool in_support(const ParameterDraw& draw) const;
  void validate() const;
};

/// i.i.d. draws from the prior. Draw i uses the deterministic substream
/// mix_seed(seed, i), so the set is stable under parallel generation.
std::vector<ParameterDraw> sample_prior(const PriorSpec& p, int n,
                                        std::uint64_t seed);

/// Parses a prior document (see docs/model-format.md).
PriorSpec parse_prior(const std::string& json_text);

/// Loads a prior by built-in name ("nk3-default") or from a file path.
PriorSpec load_prior(const std::string& name_or_path);

}  // namespace sdpolicy::bayes
