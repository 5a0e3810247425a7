#pragma once

#include <string>
#include <vector>

namespace sdpolicy {

/// Named vector of structural parameter values. Order is preserved from the
/// prior specification so that tabular output is stable.
struct ParameterDraw {
  std::vector<std::string> names;
  std::vector<double> values;

  bool has(const std::string& name) const;
  /// Value for `name`; throws std::out_of_range when missing.
  double at(const std::string& name) const;
  void set(const std::string& name, double value);
};

}  // namespace sdpolicy
