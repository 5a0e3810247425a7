#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "sdpolicy/param.hpp"
#include "sdpolicy/rules/rules.hpp"

namespace sdpolicy::lre {

/// One matrix entry: a literal, or `scale` times a named parameter.
struct Entry {
  int row = 0;
  int col = 0;
  double literal = 0.0;
  std::string param;  // empty for literals
  double scale = 1.0;

  double resolve(const ParameterDraw& draw) const;
};

/// Structural form around the deterministic steady state:
///
///   Lead_x E_t x_{t+1} + Lead_u E_t u_{t+1} + Cur_x x_t + Cur_u u_t
///     + Lag_x x_{t-1} + Lag_u u_{t-1} + Shock v_t = 0        (private block)
///   y_t = Meas_x x_t + Meas_u u_t + Noise v_m_t              (measurement)
///
/// x has n non-policy variables, u has k policy variables, y has m <= n+k
/// observables, v has q unit-variance innovations and v_m has r measurement
/// noises. Entries may be literals or named parameter slots.
struct StructuralModel {
  std::string name;
  int n = 0, k = 0, m = 0, q = 0, r = 0;
  std::vector<std::string> x_names, u_names, shock_names, obs_names,
      noise_names, param_names;

  std::vector<Entry> lead_x, lead_u, cur_x, cur_u, lag_x, lag_u, shock;
  std::vector<Entry> meas_x, meas_u, meas_noise;

  rules::PolicyLayout layout;

  int x_index(const std::string& name) const;
  int u_index(const std::string& name) const;

  /// Structural validation: dimensions consistent, entry indices in range,
  /// every parameter slot declared, m <= n + k. Throws on violation.
  void validate() const;
};

/// Stacked system over z_t = [x_t', u_t']':
///   F E_t z_{t+1} + G z_t + H z_{t-1} + N v_t = 0
struct CanonicalForm {
  Eigen::MatrixXd F, G, H, N;
};

/// Stacks the private block and the policy block into one system. The
/// policy rows enter as  on_u u_t - (rhs terms) = 0. Throws when a
/// parameter slot is missing from `draw` or dimensions mismatch.
CanonicalForm assemble_canonical(const StructuralModel& model,
                                 const rules::PolicyBlock& block,
                                 const ParameterDraw& draw);

/// Measurement map bound at a draw: y = intercept + Hm z + Noise v_m.
struct Measurement {
  Eigen::VectorXd intercept;
  Eigen::MatrixXd Hm;     // m x (n+k)
  Eigen::MatrixXd Noise;  // m x r
};

Measurement bind_measurement(const StructuralModel& model,
                             const ParameterDraw& draw);

/// Parses a model document (see docs/model-format.md). Accepts a JSON text.
StructuralModel parse_model(const std::string& json_text);

/// Loads a model by built-in name ("nk3") or from a file path.
StructuralModel load_model(const std::string& name_or_path);

}  // namespace sdpolicy::lre
