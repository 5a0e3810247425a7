#include "sdpolicy/param.hpp"

#include <algorithm>
#include <stdexcept>

namespace sdpolicy {

bool ParameterDraw::has(const std::string& name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

double ParameterDraw::at(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    throw std::out_of_range("ParameterDraw: missing parameter '" + name + "'");
  }
  return values[static_cast<std::size_t>(it - names.begin())];
}

void ParameterDraw::set(const std::string& name, double value) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    names.push_back(name);
    values.push_back(value);
  } else {
    values[static_cast<std::size_t>(it - names.begin())] = value;
  }
}

}  // namespace sdpolicy
