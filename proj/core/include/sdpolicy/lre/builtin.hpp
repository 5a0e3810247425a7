#pragma once

#include <string>

namespace sdpolicy::lre {

/// JSON text of a built-in model, or nullptr when the name is unknown.
/// Built-ins: "nk3".
const char* builtin_model_json(const std::string& name);

/// JSON text of a built-in prior, or nullptr. Built-ins: "nk3-default".
const char* builtin_prior_json(const std::string& name);

}  // namespace sdpolicy::lre
