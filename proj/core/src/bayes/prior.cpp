#include "sdpolicy/bayes/prior.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sdpolicy/lre/builtin.hpp"

namespace sdpolicy::bayes {

using json = nlohmann::json;

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double PriorEntry::mean() const {
  switch (kind) {
    case PriorKind::kNormal: return a;
    case PriorKind::kUniform: return 0.5 * (a + b);
    case PriorKind::kBeta: return a / (a + b);
    case PriorKind::kGamma: return a * b;
    case PriorKind::kPointMass: return a;
  }
  return a;
}

double PriorEntry::sd() const {
  switch (kind) {
    case PriorKind::kNormal: return b;
    case PriorKind::kUniform: return (b - a) / std::sqrt(12.0);
    case PriorKind::kBeta: {
      const double s = a + b;
      return std::sqrt(a * b / (s * s * (s + 1.0)));
    }
    case PriorKind::kGamma: return std::sqrt(a) * b;
    case PriorKind::kPointMass: return 0.0;
  }
  return 0.0;
}

bool PriorEntry::in_support(double x) const {
  if (x < lower || x > upper) return false;
  switch (kind) {
    case PriorKind::kNormal: return true;
    case PriorKind::kUniform: return x >= a && x <= b;
    case PriorKind::kBeta: return x > 0.0 && x < 1.0;
    case PriorKind::kGamma: return x > 0.0;
    case PriorKind::kPointMass: return x == a;
  }
  return false;
}

double PriorEntry::log_density(double x) const {
  if (!in_support(x)) return kNegInf;
  switch (kind) {
    case PriorKind::kNormal: {
      const double z = (x - a) / b;
      return -0.5 * z * z - std::log(b);
    }
    case PriorKind::kUniform:
      return -std::log(b - a);
    case PriorKind::kBeta:
      return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
             (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    case PriorKind::kGamma:
      return (a - 1.0) * std::log(x) - x / b - std::lgamma(a) -
             a * std::log(b);
    case PriorKind::kPointMass:
      return 0.0;
  }
  return kNegInf;
}

double PriorEntry::sample(Rng& rng) const {
  for (int tries = 0; tries < 10000; ++tries) {
    double x = 0.0;
    switch (kind) {
      case PriorKind::kNormal: x = rng.normal(a, b); break;
      case PriorKind::kUniform: x = rng.uniform(a, b); break;
      case PriorKind::kBeta: x = rng.beta(a, b); break;
      case PriorKind::kGamma: x = rng.gamma(a, b); break;
      case PriorKind::kPointMass: return a;
    }
    if (in_support(x)) return x;
  }
  throw std::runtime_error("prior sample: support region has negligible mass"
                           " for parameter '" + name + "'");
}

void PriorEntry::validate() const {
  if (name.empty()) throw std::invalid_argument("prior: unnamed parameter");
  const std::string where = "prior '" + name + "': ";
  switch (kind) {
    case PriorKind::kNormal:
      if (!(b > 0.0)) throw std::invalid_argument(where + "sd must be > 0");
      break;
    case PriorKind::kUniform:
      if (!(b > a)) throw std::invalid_argument(where + "upper must be > lower");
      break;
    case PriorKind::kBeta:
      if (!(a > 0.0 && b > 0.0)) {
        throw std::invalid_argument(where + "beta shapes must be > 0");
      }
      break;
    case PriorKind::kGamma:
      if (!(a > 0.0 && b > 0.0)) {
        throw std::invalid_argument(where + "gamma shape/scale must be > 0");
      }
      break;
    case PriorKind::kPointMass:
      break;
  }
  if (lower > upper) {
    throw std::invalid_argument(where + "support bounds inverted");
  }
  if (!in_support(mean()) && kind != PriorKind::kPointMass) {
    // A clamp that excludes the prior mean is almost certainly a typo.
    throw std::invalid_argument(where + "support excludes the prior mean");
  }
}

const PriorEntry& PriorSpec::entry(const std::string& parameter) const {
  for (const auto& e : entries) {
    if (e.name == parameter) return e;
  }
  throw std::out_of_range("prior: no entry for parameter '" + parameter + "'");
}

ParameterDraw PriorSpec::mean_draw() const {
  ParameterDraw d;
  for (const auto& e : entries) {
    d.names.push_back(e.name);
    d.values.push_back(e.mean());
  }
  return d;
}

ParameterDraw PriorSpec::sample_draw(Rng& rng) const {
  ParameterDraw d;
  for (const auto& e : entries) {
    d.names.push_back(e.name);
    d.values.push_back(e.sample(rng));
  }
  return d;
}

double PriorSpec::log_density(const ParameterDraw& draw) const {
  double total = 0.0;
  for (const auto& e : entries) {
    total += e.log_density(draw.at(e.name));
    if (total == kNegInf) return kNegInf;
  }
  return total;
}

bool PriorSpec::in_support(const ParameterDraw& draw) const {
  for (const auto& e : entries) {
    if (!e.in_support(draw.at(e.name))) return false;
  }
  return true;
}

void PriorSpec::validate() const {
  if (entries.empty()) throw std::invalid_argument("prior: no parameters");
  for (const auto& e : entries) e.validate();
}

std::vector<ParameterDraw> sample_prior(const PriorSpec& p, int n,
                                        std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_prior: n must be >= 1");
  p.validate();
  std::vector<ParameterDraw> draws;
  draws.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
    draws.push_back(p.sample_draw(rng));
  }
  return draws;
}

PriorSpec parse_prior(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("prior: invalid JSON: ") + e.what());
  }
  PriorSpec spec;
  spec.name = doc.value("name", "");
  for (const auto& item : doc.at("parameters")) {
    PriorEntry e;
    e.name = item.at("name").get<std::string>();
    const std::string kind = item.at("kind").get<std::string>();
    if (kind == "normal") {
      e.kind = PriorKind::kNormal;
      e.a = item.at("mean").get<double>();
      e.b = item.at("sd").get<double>();
    } else if (kind == "uniform") {
      e.kind = PriorKind::kUniform;
      e.a = item.at("lower").get<double>();
      e.b = item.at("upper").get<double>();
    } else if (kind == "beta") {
      e.kind = PriorKind::kBeta;
      e.a = item.at("a").get<double>();
      e.b = item.at("b").get<double>();
    } else if (kind == "gamma") {
      e.kind = PriorKind::kGamma;
      e.a = item.at("shape").get<double>();
      e.b = item.at("scale").get<double>();
    } else if (kind == "point") {
      e.kind = PriorKind::kPointMass;
      e.a = item.at("value").get<double>();
    } else {
      throw std::invalid_argument("prior: unknown kind '" + kind + "'");
    }
    if (item.contains("support")) {
      e.lower = item.at("support").at(0).get<double>();
      e.upper = item.at("support").at(1).get<double>();
    }
    spec.entries.push_back(e);
  }
  spec.validate();
  return spec;
}

PriorSpec load_prior(const std::string& name_or_path) {
  if (const char* text = lre::builtin_prior_json(name_or_path)) {
    return parse_prior(text);
  }
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("prior: no built-in prior or readable file '" +
                                name_or_path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_prior(buf.str());
}

}  // namespace sdpolicy::bayes
