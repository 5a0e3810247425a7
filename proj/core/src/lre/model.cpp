#include "sdpolicy/lre/model.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sdpolicy/lre/builtin.hpp"

namespace sdpolicy::lre {

using json = nlohmann::json;

double Entry::resolve(const ParameterDraw& draw) const {
  if (param.empty()) return literal;
  if (!draw.has(param)) {
    throw std::invalid_argument("model entry references missing parameter '" +
                                param + "'");
  }
  return scale * draw.at(param);
}

namespace {

int index_of(const std::vector<std::string>& names, const std::string& name,
             const std::string& what) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  throw std::invalid_argument("model: unknown " + what + " '" + name + "'");
}

void check_entries(const std::vector<Entry>& entries, int rows, int cols,
                   const std::set<std::string>& params,
                   const std::string& what) {
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
      throw std::invalid_argument("model: entry out of range in " + what);
    }
    if (!e.param.empty() && params.count(e.param) == 0) {
      throw std::invalid_argument("model: undeclared parameter '" + e.param +
                                  "' in " + what);
    }
  }
}

Eigen::MatrixXd resolve_block(const std::vector<Entry>& entries, int rows,
                              int cols, const ParameterDraw& draw) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(rows, cols);
  for (const auto& e : entries) M(e.row, e.col) += e.resolve(draw);
  return M;
}

std::vector<Entry> parse_entries(const json& arr,
                                 const std::vector<std::string>& row_names,
                                 const std::vector<std::string>& col_names,
                                 const std::string& what) {
  std::vector<Entry> out;
  if (arr.is_null()) return out;
  for (const auto& item : arr) {
    Entry e;
    const auto& row = item.at("row");
    e.row = row.is_string()
                ? index_of(row_names, row.get<std::string>(), what + " row")
                : row.get<int>();
    const auto& col = item.at("col");
    e.col = col.is_string()
                ? index_of(col_names, col.get<std::string>(), what + " col")
                : col.get<int>();
    if (item.contains("param")) {
      e.param = item.at("param").get<std::string>();
      e.scale = item.value("scale", 1.0);
    } else {
      e.literal = item.at("value").get<double>();
    }
    out.push_back(e);
  }
  return out;
}

void fill_policy_entries(Eigen::MatrixXd& M, const json& arr,
                         const std::vector<std::string>& col_names,
                         const std::string& what) {
  if (arr.is_null()) return;
  for (const auto& item : arr) {
    const int row = item.at("row").get<int>();
    const auto& col = item.at("col");
    const int c = col.is_string()
                      ? index_of(col_names, col.get<std::string>(), what)
                      : col.get<int>();
    if (row < 0 || row >= M.rows() || c < 0 || c >= M.cols()) {
      throw std::invalid_argument("model: policy entry out of range in " + what);
    }
    // Common policy rows are fixed wiring; parameter slots are not allowed.
    M(row, c) += item.at("value").get<double>();
  }
}

}  // namespace

int StructuralModel::x_index(const std::string& name) const {
  return index_of(x_names, name, "x variable");
}

int StructuralModel::u_index(const std::string& name) const {
  return index_of(u_names, name, "u variable");
}

void StructuralModel::validate() const {
  if (n != static_cast<int>(x_names.size()) ||
      k != static_cast<int>(u_names.size()) ||
      q != static_cast<int>(shock_names.size()) ||
      m != static_cast<int>(obs_names.size()) ||
      r != static_cast<int>(noise_names.size())) {
    throw std::invalid_argument("model: dimension/name-list mismatch");
  }
  if (m > n + k) {
    throw std::invalid_argument("model: m must be <= n + k");
  }
  const std::set<std::string> params(param_names.begin(), param_names.end());
  check_entries(lead_x, n, n, params, "lead_x");
  check_entries(lead_u, n, k, params, "lead_u");
  check_entries(cur_x, n, n, params, "cur_x");
  check_entries(cur_u, n, k, params, "cur_u");
  check_entries(lag_x, n, n, params, "lag_x");
  check_entries(lag_u, n, k, params, "lag_u");
  check_entries(shock, n, q, params, "shock");
  check_entries(meas_x, m, n, params, "meas_x");
  check_entries(meas_u, m, k, params, "meas_u");
  check_entries(meas_noise, m, r, params, "meas_noise");
  if (layout.n != n || layout.k != k || layout.q != q) {
    throw std::invalid_argument("model: policy layout dimension mismatch");
  }
}

CanonicalForm assemble_canonical(const StructuralModel& model,
                                 const rules::PolicyBlock& block,
                                 const ParameterDraw& draw) {
  const int n = model.n, k = model.k, q = model.q;
  if (block.on_u.rows() != k || block.on_u.cols() != k ||
      block.on_x.cols() != n || block.on_lead_x.cols() != n ||
      block.on_lag_x.cols() != n || block.on_lag_u.cols() != k ||
      block.on_shocks.cols() != q) {
    throw std::invalid_argument("assemble_canonical: policy block dimensions"
                                " do not match the model");
  }
  const int nz = n + k;
  CanonicalForm c;
  c.F = Eigen::MatrixXd::Zero(nz, nz);
  c.G = Eigen::MatrixXd::Zero(nz, nz);
  c.H = Eigen::MatrixXd::Zero(nz, nz);
  c.N = Eigen::MatrixXd::Zero(nz, q);

  c.F.topLeftCorner(n, n) = resolve_block(model.lead_x, n, n, draw);
  c.F.topRightCorner(n, k) = resolve_block(model.lead_u, n, k, draw);
  c.G.topLeftCorner(n, n) = resolve_block(model.cur_x, n, n, draw);
  c.G.topRightCorner(n, k) = resolve_block(model.cur_u, n, k, draw);
  c.H.topLeftCorner(n, n) = resolve_block(model.lag_x, n, n, draw);
  c.H.topRightCorner(n, k) = resolve_block(model.lag_u, n, k, draw);
  c.N.topRows(n) = resolve_block(model.shock, n, q, draw);

  // Policy rows: on_u u - on_lead_x E x' - on_x x - on_lag_x x_-
  //              - on_lag_u u_- - on_shocks v = 0.
  c.F.bottomLeftCorner(k, n) = -block.on_lead_x;
  c.G.bottomLeftCorner(k, n) = -block.on_x;
  c.G.bottomRightCorner(k, k) = block.on_u;
  c.H.bottomLeftCorner(k, n) = -block.on_lag_x;
  c.H.bottomRightCorner(k, k) = -block.on_lag_u;
  c.N.bottomRows(k) = -block.on_shocks;
  return c;
}

Measurement bind_measurement(const StructuralModel& model,
                             const ParameterDraw& draw) {
  Measurement out;
  out.intercept = Eigen::VectorXd::Zero(model.m);
  out.Hm = Eigen::MatrixXd::Zero(model.m, model.n + model.k);
  out.Hm.leftCols(model.n) = resolve_block(model.meas_x, model.m, model.n, draw);
  out.Hm.rightCols(model.k) =
      resolve_block(model.meas_u, model.m, model.k, draw);
  out.Noise = resolve_block(model.meas_noise, model.m, model.r, draw);
  return out;
}

StructuralModel parse_model(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model: invalid JSON: ") + e.what());
  }

  StructuralModel m;
  m.name = doc.value("name", "");
  m.x_names = doc.at("x").get<std::vector<std::string>>();
  m.u_names = doc.at("u").get<std::vector<std::string>>();
  m.shock_names = doc.at("shocks").get<std::vector<std::string>>();
  m.obs_names = doc.at("observables").get<std::vector<std::string>>();
  m.noise_names = doc.at("meas_noise_names").get<std::vector<std::string>>();
  m.param_names = doc.at("parameters").get<std::vector<std::string>>();
  m.n = static_cast<int>(m.x_names.size());
  m.k = static_cast<int>(m.u_names.size());
  m.q = static_cast<int>(m.shock_names.size());
  m.m = static_cast<int>(m.obs_names.size());
  m.r = static_cast<int>(m.noise_names.size());

  const auto& eq = doc.at("equations");
  m.lead_x = parse_entries(eq.value("lead_x", json()), {}, m.x_names, "lead_x");
  m.lead_u = parse_entries(eq.value("lead_u", json()), {}, m.u_names, "lead_u");
  m.cur_x = parse_entries(eq.value("cur_x", json()), {}, m.x_names, "cur_x");
  m.cur_u = parse_entries(eq.value("cur_u", json()), {}, m.u_names, "cur_u");
  m.lag_x = parse_entries(eq.value("lag_x", json()), {}, m.x_names, "lag_x");
  m.lag_u = parse_entries(eq.value("lag_u", json()), {}, m.u_names, "lag_u");
  m.shock = parse_entries(eq.value("shock", json()), {}, m.shock_names, "shock");

  const auto& meas = doc.at("measurement");
  m.meas_x = parse_entries(meas.value("x", json()), m.obs_names, m.x_names,
                           "meas_x");
  m.meas_u = parse_entries(meas.value("u", json()), m.obs_names, m.u_names,
                           "meas_u");
  m.meas_noise = parse_entries(meas.value("noise", json()), m.obs_names,
                               m.noise_names, "meas_noise");

  const auto& pol = doc.at("policy");
  auto& lay = m.layout;
  lay.n = m.n;
  lay.k = m.k;
  lay.q = m.q;
  lay.rule_row = pol.value("rule_row", 0);
  const auto& bind = pol.at("bindings");
  lay.col_pi = m.x_index(bind.at("pi").get<std::string>());
  lay.col_y = m.x_index(bind.at("y").get<std::string>());
  if (bind.contains("mr")) lay.col_mr = m.x_index(bind.at("mr").get<std::string>());
  lay.shock_policy = index_of(m.shock_names,
                              bind.at("policy_shock").get<std::string>(),
                              "policy shock");
  for (const auto& [tag, instr] : pol.at("instruments").items()) {
    lay.instrument[rules::family_from_tag(tag)] =
        m.u_index(instr.get<std::string>());
  }
  lay.common = rules::PolicyBlock::zero(m.k, m.n, m.q);
  if (pol.contains("common")) {
    const auto& com = pol.at("common");
    fill_policy_entries(lay.common.on_u, com.value("on_u", json()), m.u_names,
                        "policy on_u");
    fill_policy_entries(lay.common.on_lead_x, com.value("on_lead_x", json()),
                        m.x_names, "policy on_lead_x");
    fill_policy_entries(lay.common.on_x, com.value("on_x", json()), m.x_names,
                        "policy on_x");
    fill_policy_entries(lay.common.on_lag_x, com.value("on_lag_x", json()),
                        m.x_names, "policy on_lag_x");
    fill_policy_entries(lay.common.on_lag_u, com.value("on_lag_u", json()),
                        m.u_names, "policy on_lag_u");
    fill_policy_entries(lay.common.on_shocks, com.value("on_shocks", json()),
                        m.shock_names, "policy on_shocks");
  }

  m.validate();
  return m;
}

StructuralModel load_model(const std::string& name_or_path) {
  if (const char* text = builtin_model_json(name_or_path)) {
    return parse_model(text);
  }
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("model: no built-in model or readable file '" +
                                name_or_path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace sdpolicy::lre
