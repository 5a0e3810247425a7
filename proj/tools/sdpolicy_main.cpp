// Command-line front end: solve, estimate, optimize, rank, portfolio,
// omega, protocol-demo. All outputs are machine-readable (CSV/JSON) and
// deterministic under --seed.
//
// Exit codes: 0 success, 1 usage/input error, 2 numerical infeasibility
// (indeterminacy), 3 protocol rejection.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sdpolicy/attest/backend.hpp"
#include "sdpolicy/attest/ledger.hpp"
#include "sdpolicy/bayes/prior.hpp"
#include "sdpolicy/bayes/rwmh.hpp"
#include "sdpolicy/csv.hpp"
#include "sdpolicy/lre/kalman.hpp"
#include "sdpolicy/lre/model.hpp"
#include "sdpolicy/lre/solver.hpp"
#include "sdpolicy/optim/policy_optimizer.hpp"
#include "sdpolicy/pf/portfolio.hpp"
#include "sdpolicy/pf/pricing.hpp"
#include "sdpolicy/rng.hpp"
#include "sdpolicy/sd/dominance.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace sdpolicy;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitProtocolReject = 3;

struct GlobalOpts {
  std::uint64_t seed = 42;
  std::string out_dir = ".";
};

fs::path out_path(const GlobalOpts& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return fs::path(g.out_dir) / name;
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("expected name=value, got '" + text + "'");
  }
  return {text.substr(0, eq), std::stod(text.substr(eq + 1))};
}

rules::RuleCoefficients coefficients_for(
    rules::RuleFamily family, const std::vector<std::string>& overrides,
    bool allow_out_of_box = false) {
  auto coef = rules::RuleCoefficients::defaults(family);
  for (const auto& text : overrides) {
    const auto [name, value] = parse_assignment(text);
    if (allow_out_of_box) {
      coef.set_unchecked(name, value);
    } else {
      coef.set(name, value);
    }
  }
  return coef;
}

ParameterDraw theta_for(const bayes::PriorSpec& prior,
                        const std::vector<std::string>& overrides) {
  ParameterDraw draw = prior.mean_draw();
  for (const auto& text : overrides) {
    const auto [name, value] = parse_assignment(text);
    draw.set(name, value);
  }
  return draw;
}

Eigen::MatrixXd panel_matrix(const io::Table& table,
                             const std::vector<std::string>& columns) {
  Eigen::MatrixXd Y(table.rows.size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto idx = table.column(columns[c]);
    for (std::size_t t = 0; t < table.rows.size(); ++t) {
      Y(t, c) = table.rows[t][idx];
    }
  }
  return Y;
}

// theta -> bound state space under a fixed rule; nullopt when the draw has
// no determinate solution.
bayes::BindFn make_bind(const lre::StructuralModel& model,
                        const rules::RuleCoefficients& coef) {
  const auto block = rules::rule_to_policy_block(coef, model.layout);
  return [&model, block](const ParameterDraw& theta)
             -> std::optional<lre::StateSpace> {
    lre::StateSpace ss;
    try {
      ss.solved = lre::solve_re(lre::assemble_canonical(model, block, theta));
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (!ss.solved.determinate) return std::nullopt;
    ss.meas = lre::bind_measurement(model, theta);
    return ss;
  };
}

std::vector<ParameterDraw> uncertainty_draws(const lre::StructuralModel& model,
                                             const bayes::PriorSpec& prior,
                                             const std::string& data_path,
                                             const rules::RuleCoefficients& coef,
                                             int n, std::uint64_t seed) {
  if (data_path.empty()) {
    return bayes::sample_prior(prior, n, seed);
  }
  // Posterior mode: estimate under the selected rule, then thin the kept
  // chain down to n draws.
  const auto table = io::read_csv(data_path);
  const auto Y = panel_matrix(table, model.obs_names);
  bayes::RwmhOptions opts;
  opts.chain_len = std::max(4 * n, 2000);
  opts.burn_in = opts.chain_len / 4;
  opts.seed = seed;
  const auto post =
      bayes::rwmh_posterior(prior, Y, make_bind(model, coef), opts);
  std::vector<ParameterDraw> out;
  const std::size_t kept = post.draws.size();
  for (int i = 0; i < n; ++i) {
    out.push_back(post.draws[(i * kept) / n]);
  }
  return out;
}

io::Table matrix_table(const Eigen::MatrixXd& M,
                       const std::vector<std::string>& cols) {
  io::Table t;
  t.header = cols;
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    std::vector<double> row(M.cols());
    for (Eigen::Index c = 0; c < M.cols(); ++c) row[c] = M(r, c);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::string> z_names(const lre::StructuralModel& model) {
  std::vector<std::string> names = model.x_names;
  names.insert(names.end(), model.u_names.begin(), model.u_names.end());
  return names;
}

// ---------------------------------------------------------------- solve --

int cmd_solve(const GlobalOpts& g, const std::string& model_name,
              const std::string& prior_name, const std::string& rule_tag,
              const std::vector<std::string>& coef_overrides,
              const std::vector<std::string>& theta_overrides, int horizon) {
  const auto model = lre::load_model(model_name);
  const auto prior = bayes::load_prior(prior_name);
  const auto family = rules::family_from_tag(rule_tag);
  // solve is a diagnostic: probing indeterminate out-of-box coefficient
  // points is allowed (they exit with code 2).
  const auto coef =
      coefficients_for(family, coef_overrides, /*allow_out_of_box=*/true);
  const auto theta = theta_for(prior, theta_overrides);

  const auto block = rules::rule_to_policy_block(coef, model.layout);
  const auto solved =
      lre::solve_re(lre::assemble_canonical(model, block, theta));

  json summary;
  summary["model"] = model.name;
  summary["rule"] = rule_tag;
  summary["determinate"] = solved.determinate;
  summary["converged"] = solved.converged;
  summary["spectral_radius"] = solved.spectral_radius;
  summary["residual_norm"] = solved.residual_norm;
  summary["iterations"] = solved.iterations;
  write_json(out_path(g, "solve.json"), summary);

  if (!solved.determinate) {
    std::cerr << "solve: model is not determinate at these coefficients\n";
    return kExitInfeasible;
  }

  const auto names = z_names(model);
  io::write_csv_file(out_path(g, "A.csv").string(),
                     matrix_table(solved.A, names));
  io::write_csv_file(out_path(g, "B.csv").string(),
                     matrix_table(solved.B, model.shock_names));
  for (int j = 0; j < model.q; ++j) {
    io::write_csv_file(
        out_path(g, "irf_" + model.shock_names[j] + ".csv").string(),
        matrix_table(lre::irf(solved, j, horizon), names));
  }
  std::cout << "solved " << model.name << " with " << rule_tag
            << ": spectral radius " << solved.spectral_radius << ", residual "
            << solved.residual_norm << "\n";
  return kExitOk;
}

// -------------------------------------------------------------- estimate --

int cmd_estimate(const GlobalOpts& g, const std::string& model_name,
                 const std::string& prior_name, const std::string& rule_tag,
                 const std::vector<std::string>& coef_overrides,
                 const std::string& data_path, int chain_len, int burn_in,
                 int thin, double scale) {
  const auto model = lre::load_model(model_name);
  const auto prior = bayes::load_prior(prior_name);
  const auto family = rules::family_from_tag(rule_tag);
  const auto coef = coefficients_for(family, coef_overrides);

  const auto table = io::read_csv(data_path);
  const auto Y = panel_matrix(table, model.obs_names);

  bayes::RwmhOptions opts;
  opts.chain_len = chain_len;
  opts.burn_in = burn_in;
  opts.thin = thin;
  opts.proposal_scale = scale;
  opts.seed = g.seed;
  const auto post =
      bayes::rwmh_posterior(prior, Y, make_bind(model, coef), opts);

  io::Table draws;
  draws.header.push_back("draw_index");
  for (const auto& e : prior.entries) draws.header.push_back(e.name);
  for (std::size_t i = 0; i < post.draws.size(); ++i) {
    std::vector<double> row;
    row.push_back(static_cast<double>(i));
    for (const auto& e : prior.entries) {
      row.push_back(post.draws[i].at(e.name));
    }
    draws.rows.push_back(std::move(row));
  }
  io::write_csv_file(out_path(g, "posterior.csv").string(), draws);

  json summary;
  summary["model"] = model.name;
  summary["rule"] = rule_tag;
  summary["observations"] = Y.rows();
  summary["chain_len"] = chain_len;
  summary["burn_in"] = burn_in;
  summary["thin"] = thin;
  summary["acceptance_rate"] = post.acceptance_rate;
  summary["kept_draws"] = post.kept;
  summary["seed"] = g.seed;
  json marginals;
  for (const auto& e : prior.entries) {
    if (e.kind == bayes::PriorKind::kPointMass) continue;
    json m;
    m["mean"] = post.mean(e.name);
    m["sd"] = post.sd(e.name);
    m["q05"] = post.quantile(e.name, 0.05);
    m["q95"] = post.quantile(e.name, 0.95);
    marginals[e.name] = m;
  }
  summary["marginals"] = marginals;
  write_json(out_path(g, "estimate.json"), summary);

  std::cout << "estimated " << model.name << " on " << Y.rows()
            << " periods: acceptance " << post.acceptance_rate << ", kept "
            << post.kept << " draws\n";
  return kExitOk;
}

// -------------------------------------------------------------- optimize --

io::Table optimal_draw_table(const bayes::PriorSpec& prior,
                             const optim::PolicyProblem& prob,
                             const std::vector<optim::OptimalDraw>& optimal) {
  io::Table t;
  t.header.push_back("draw_index");
  for (const auto& e : prior.entries) t.header.push_back("theta_" + e.name);
  for (const auto& name : prob.optimized_names()) {
    t.header.push_back("phi_" + name);
  }
  t.header.push_back("L_min");
  t.header.push_back("determinate");
  t.header.push_back("iterations");
  for (std::size_t i = 0; i < optimal.size(); ++i) {
    std::vector<double> row;
    row.push_back(static_cast<double>(i));
    for (const auto& e : prior.entries) {
      row.push_back(optimal[i].theta.at(e.name));
    }
    for (const auto& name : prob.optimized_names()) {
      row.push_back(optimal[i].phi_min.at(name));
    }
    row.push_back(optimal[i].loss_min);
    row.push_back(optimal[i].determinate ? 1.0 : 0.0);
    row.push_back(static_cast<double>(optimal[i].evaluations));
    t.rows.push_back(std::move(row));
  }
  return t;
}

int cmd_optimize(const GlobalOpts& g, const std::string& model_name,
                 const std::string& prior_name, const std::string& rule_tag,
                 const std::vector<std::string>& coef_overrides,
                 const std::string& data_path, int n_draws) {
  const auto model = lre::load_model(model_name);
  const auto prior = bayes::load_prior(prior_name);
  const auto family = rules::family_from_tag(rule_tag);

  auto prob = optim::PolicyProblem::for_family(model, family);
  prob.base = coefficients_for(family, coef_overrides);
  const auto draws =
      uncertainty_draws(model, prior, data_path, prob.base, n_draws, g.seed);
  const auto [dist, optimal] = optim::loss_distribution(prob, draws, g.seed);

  io::write_csv_file(out_path(g, "optimize_" + dist.tag + ".csv").string(),
                     optimal_draw_table(prior, prob, optimal));
  std::cout << "optimized " << dist.tag << " over " << draws.size()
            << " draws (" << dist.dropped << " dropped)\n";
  return kExitOk;
}

// ------------------------------------------------------------------ rank --

int cmd_rank(const GlobalOpts& g, const std::string& model_name,
             const std::string& prior_name,
             std::vector<std::string> rule_tags,
             const std::string& data_path, int n_draws, int kmax) {
  if (rule_tags.size() < 2) {
    std::cerr << "rank: need at least 2 rules\n";
    return kExitUsage;
  }
  const auto model = lre::load_model(model_name);
  const auto prior = bayes::load_prior(prior_name);

  // One shared draw set: the ranking compares rules on identical uncertainty.
  const auto base_coef = rules::RuleCoefficients::defaults(
      rules::family_from_tag(rule_tags.front()));
  const auto draws =
      uncertainty_draws(model, prior, data_path, base_coef, n_draws, g.seed);

  std::vector<std::pair<std::string, sd::EmpiricalDistribution>> dists;
  json per_rule;
  for (const auto& tag : rule_tags) {
    const auto family = rules::family_from_tag(tag);
    auto prob = optim::PolicyProblem::for_family(model, family);
    const auto [dist, optimal] = optim::loss_distribution(prob, draws, g.seed);

    io::write_csv_file(out_path(g, "optimize_" + tag + ".csv").string(),
                       optimal_draw_table(prior, prob, optimal));
    io::Table losses;
    losses.header = {"draw_index", "loss_min"};
    for (std::size_t i = 0; i < dist.losses.size(); ++i) {
      losses.rows.push_back({static_cast<double>(i), dist.losses[i]});
    }
    io::write_csv_file(out_path(g, "loss_" + tag + ".csv").string(), losses);

    json info;
    info["draws"] = dist.draw_count;
    info["dropped"] = dist.dropped;
    per_rule[tag] = info;
    dists.emplace_back(tag, sd::EmpiricalDistribution::from_samples(
                                dist.losses, sd::Orientation::kLoss));
  }

  const auto ranking = sd::rank_rules(dists, kmax);

  // Matrix CSV: row dominates column at the reported order, blank when it
  // does not dominate within kmax.
  {
    std::ofstream out(out_path(g, "rank_matrix.csv"), std::ios::binary);
    out << "family";
    for (const auto& f : ranking.families) out << ',' << f;
    out << '\n';
    for (std::size_t i = 0; i < ranking.families.size(); ++i) {
      out << ranking.families[i];
      for (std::size_t j = 0; j < ranking.families.size(); ++j) {
        out << ',';
        if (i != j && ranking.min_order[i][j]) {
          out << *ranking.min_order[i][j];
        }
      }
      out << '\n';
    }
  }

  json doc;
  doc["model"] = model.name;
  doc["kmax"] = kmax;
  doc["seed"] = g.seed;
  doc["draws"] = n_draws;
  doc["rules"] = per_rule;
  doc["families"] = ranking.families;
  json matrix = json::array();
  for (std::size_t i = 0; i < ranking.families.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < ranking.families.size(); ++j) {
      if (i == j || !ranking.min_order[i][j]) {
        row.push_back(nullptr);
      } else {
        row.push_back(*ranking.min_order[i][j]);
      }
    }
    matrix.push_back(row);
  }
  doc["min_order"] = matrix;
  doc["optimal_family"] =
      ranking.optimal_family ? json(*ranking.optimal_family) : json(nullptr);
  doc["optimal_order"] =
      ranking.optimal_order ? json(*ranking.optimal_order) : json(nullptr);
  write_json(out_path(g, "ranking.json"), doc);

  if (ranking.optimal_family) {
    std::cout << "SD-optimal rule: " << *ranking.optimal_family << " at order "
              << *ranking.optimal_order << "\n";
  } else {
    std::cout << "no rule dominates all others up to order " << kmax << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------- portfolio --

Eigen::VectorXd parse_weights(const std::string& text, int n) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
  if (n > 0 && static_cast<int>(vals.size()) != n) {
    throw std::invalid_argument("expected " + std::to_string(n) +
                                " weights, got " + std::to_string(vals.size()));
  }
  Eigen::VectorXd w(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) w(i) = vals[i];
  return w;
}

int cmd_portfolio(const GlobalOpts& g, const std::string& panel_path,
                  const std::string& tau_text, int order, int resolution,
                  int tries) {
  const auto table = io::read_csv(panel_path);
  const auto panel = pf::panel_from_table(table.header, table.rows);
  Eigen::VectorXd tau;
  if (tau_text.empty()) {
    tau = Eigen::VectorXd::Constant(panel.n_assets(),
                                    1.0 / panel.n_assets());
  } else {
    tau = parse_weights(tau_text, panel.n_assets());
  }

  const auto report =
      pf::is_sd_efficient(panel, tau, order, resolution, tries, g.seed);

  json doc;
  doc["panel"] = fs::path(panel_path).filename().string();
  doc["assets"] = panel.assets;
  doc["tau"] = std::vector<double>(tau.data(), tau.data() + tau.size());
  doc["order"] = order;
  doc["grid_resolution"] = report.grid_resolution;
  doc["random_tries"] = report.random_tries;
  doc["seed"] = report.seed;
  doc["candidates_checked"] = report.candidates_checked;
  doc["verdict"] = report.efficient_at_resolution ? "efficient-at-resolution"
                                                  : "inefficient";
  if (report.dominating) {
    doc["dominating"] = std::vector<double>(
        report.dominating->data(),
        report.dominating->data() + report.dominating->size());
  } else {
    doc["dominating"] = nullptr;
  }
  write_json(out_path(g, "portfolio.json"), doc);

  std::cout << "portfolio is "
            << (report.efficient_at_resolution ? "efficient-at-resolution"
                                               : "inefficient")
            << " at order " << order << " (" << report.candidates_checked
            << " candidates)\n";
  return kExitOk;
}

// ----------------------------------------------------------------- omega --

int cmd_omega(const GlobalOpts& g, const std::string& panel_path,
              const std::string& weights_text,
              std::vector<double> thresholds, int grid_count) {
  const auto table = io::read_csv(panel_path);
  const auto panel = pf::panel_from_table(table.header, table.rows);
  Eigen::VectorXd w;
  if (weights_text.empty()) {
    w = Eigen::VectorXd::Constant(panel.n_assets(), 1.0 / panel.n_assets());
  } else {
    w = parse_weights(weights_text, panel.n_assets());
  }
  const auto dist = pf::portfolio_return_dist(panel, w);
  if (thresholds.empty()) {
    const double lo = dist.min();
    const double hi = dist.max();
    for (int i = 0; i < grid_count; ++i) {
      thresholds.push_back(lo + (hi - lo) * i / (grid_count - 1));
    }
  }

  io::Table t;
  t.header = {"threshold", "omega"};
  for (const double theta : thresholds) {
    double value = std::numeric_limits<double>::quiet_NaN();
    try {
      value = sd::omega_ratio(dist, theta);
    } catch (const std::domain_error&) {
      // undefined at this threshold; row keeps NaN
    }
    t.rows.push_back({theta, value});
  }
  io::write_csv_file(out_path(g, "omega.csv").string(), t);
  std::cout << "omega at " << t.rows.size() << " thresholds (mean return "
            << dist.mean() << ")\n";
  return kExitOk;
}

// --------------------------------------------------------- protocol-demo --

int cmd_protocol_demo(const GlobalOpts& g, const std::string& series_path,
                      const std::string& ledger_name, double mu0) {
  const auto table = io::read_csv(series_path);
  const auto col_pi = table.column("pi");
  const auto col_x = table.column("x");

  auto backend = attest::transparent_backend();
  const auto circuit = attest::money_growth_circuit();
  auto ledger = attest::Ledger::init(circuit, circuit.params, *backend);

  const auto provider_keys = attest::KeyPair::from_seed_u64(mix_seed(g.seed, 1));
  const auto miner_keys = attest::KeyPair::from_seed_u64(mix_seed(g.seed, 2));
  ledger.register_provider("provider-demo", provider_keys.pk);
  ledger.register_miner("miner-demo", miner_keys.pk);

  json steps = json::array();
  double mu_prev = mu0 > 0.0 ? mu0 : circuit.params[3];
  for (std::size_t t = 0; t < table.rows.size(); ++t) {
    attest::SeriesData data;
    data.series_id = "econ-series";
    data.period_start = static_cast<std::uint32_t>(t + 1);
    data.period_end = static_cast<std::uint32_t>(t + 1);
    data.values = {table.rows[t][col_pi], table.rows[t][col_x]};
    const auto record =
        ledger.authenticate_data("provider-demo", provider_keys, data);

    const auto tx = ledger.commit_policy("miner-demo", miner_keys,
                                         data.values, {mu_prev}, record.h,
                                         *backend);
    const auto result = ledger.validate(tx, *backend);

    json step;
    step["period"] = t + 1;
    step["pi"] = data.values[0];
    step["x"] = data.values[1];
    step["mu_prev"] = mu_prev;
    step["mu"] = tx.output_miner;
    step["record_hash"] = attest::hash_hex(record.h);
    step["accepted"] = result.accepted;
    if (!result.accepted) {
      step["reject_reason"] = attest::reject_reason_name(*result.reason);
    }
    steps.push_back(step);

    if (!result.accepted) {
      json doc;
      doc["steps"] = steps;
      doc["rejected"] = true;
      write_json(out_path(g, "protocol.json"), doc);
      std::cerr << "protocol-demo: transaction rejected: "
                << attest::reject_reason_name(*result.reason) << "\n";
      return kExitProtocolReject;
    }
    mu_prev = tx.output_miner;
  }

  ledger.save(out_path(g, ledger_name).string());

  // Reload and re-verify the persisted log end to end.
  auto backend2 = attest::transparent_backend();
  const auto reloaded =
      attest::Ledger::load(out_path(g, ledger_name).string(), *backend2);
  const bool reload_ok = reloaded.serialize() == ledger.serialize();

  json doc;
  doc["steps"] = steps;
  doc["rejected"] = false;
  doc["ledger_file"] = ledger_name;
  doc["ledger_entries"] = ledger.entry_count();
  doc["ledger_tip"] = attest::hash_hex(ledger.tip());
  doc["reload_verified"] = reload_ok;
  write_json(out_path(g, "protocol.json"), doc);

  if (!reload_ok) {
    std::cerr << "protocol-demo: ledger reload mismatch\n";
    return kExitProtocolReject;
  }
  std::cout << "protocol-demo: " << table.rows.size()
            << " commitments accepted; ledger tip "
            << attest::hash_hex(ledger.tip()) << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ main --

// Applies --config JSON values as defaults for options the user did not
// pass on the command line (see docs/config-format.md).
void apply_config(CLI::App& app, const json& cfg) {
  for (auto* sub : app.get_subcommands({})) apply_config(*sub, cfg);
  for (auto* opt : app.get_options()) {
    const auto lnames = opt->get_lnames();
    if (lnames.empty()) continue;
    const std::string& name = lnames.front();
    if (name == "config" || name == "help") continue;
    if (opt->count() > 0 || !cfg.contains(name)) continue;
    const auto& v = cfg.at(name);
    if (v.is_array()) {
      std::vector<std::string> items;
      for (const auto& item : v) {
        items.push_back(item.is_string() ? item.get<std::string>()
                                         : item.dump());
      }
      opt->add_result(items);
    } else {
      opt->add_result(v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"policy-rule ranking by stochastic dominance"};
  app.require_subcommand(1);
  // Global flags (--seed/--out/--config) may appear after the subcommand.
  app.fallthrough();

  GlobalOpts g;
  std::string config_path;
  app.add_option("--seed", g.seed, "master seed for all randomized work");
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--config", config_path, "JSON config with option defaults");

  std::string model_name = "nk3";
  std::string prior_name = "nk3-default";
  std::string rule_tag = "taylor";
  std::string data_path;
  std::vector<std::string> coef_overrides;
  std::vector<std::string> theta_overrides;

  auto* solve = app.add_subcommand("solve", "solve a model under a rule");
  solve->add_option("--model", model_name, "model name or file");
  solve->add_option("--prior", prior_name, "prior name or file");
  solve->add_option("--rule", rule_tag, "rule family tag");
  solve->add_option("--coef", coef_overrides, "rule coefficient name=value");
  solve->add_option("--theta", theta_overrides, "parameter name=value");
  int irf_horizon = 40;
  solve->add_option("--horizon", irf_horizon, "IRF horizon");

  auto* estimate =
      app.add_subcommand("estimate", "random-walk Metropolis posterior");
  estimate->add_option("--model", model_name, "model name or file");
  estimate->add_option("--prior", prior_name, "prior name or file");
  estimate->add_option("--rule", rule_tag, "rule family tag");
  estimate->add_option("--coef", coef_overrides, "rule coefficient name=value");
  estimate->add_option("--data", data_path, "observed panel CSV")->required();
  int chain_len = 5000, burn_in = 1000, thin = 1;
  double proposal_scale = 0.25;
  estimate->add_option("--chain-len", chain_len, "chain length");
  estimate->add_option("--burn-in", burn_in, "burn-in length");
  estimate->add_option("--thin", thin, "thinning stride");
  estimate->add_option("--scale", proposal_scale, "proposal scale");

  auto* optimize =
      app.add_subcommand("optimize", "minimize welfare loss per draw");
  optimize->add_option("--model", model_name, "model name or file");
  optimize->add_option("--prior", prior_name, "prior name or file");
  optimize->add_option("--rule", rule_tag, "rule family tag");
  optimize->add_option("--coef", coef_overrides,
                       "fixed coefficient name=value");
  optimize->add_option("--data", data_path,
                       "observed panel CSV (posterior draws when given)");
  int n_draws = 50;
  optimize->add_option("--draws", n_draws, "number of parameter draws");

  auto* rank = app.add_subcommand("rank", "rank rules by SDk dominance");
  rank->add_option("--model", model_name, "model name or file");
  rank->add_option("--prior", prior_name, "prior name or file");
  std::vector<std::string> rank_rules_opt = {"constant_money_growth",
                                             "augmented_money_growth"};
  rank->add_option("--rules", rank_rules_opt, "rule family tags")
      ->delimiter(',');
  rank->add_option("--data", data_path,
                   "observed panel CSV (posterior draws when given)");
  rank->add_option("--draws", n_draws, "number of parameter draws");
  int kmax = 4;
  rank->add_option("--kmax", kmax, "highest dominance order to test");

  auto* portfolio =
      app.add_subcommand("portfolio", "SD efficiency of a portfolio");
  std::string panel_path, tau_text, weights_text;
  portfolio->add_option("--panel", panel_path, "scenario returns CSV")
      ->required();
  portfolio->add_option("--tau", tau_text, "subject weights w1,w2,...");
  int pf_order = 2, pf_resolution = 10, pf_tries = 200;
  portfolio->add_option("--order", pf_order, "dominance order");
  portfolio->add_option("--resolution", pf_resolution,
                        "simplex lattice denominator");
  portfolio->add_option("--tries", pf_tries, "random candidates");

  auto* omega = app.add_subcommand("omega", "Omega ratio across thresholds");
  omega->add_option("--panel", panel_path, "scenario returns CSV")->required();
  omega->add_option("--weights", weights_text, "portfolio weights w1,w2,...");
  std::vector<double> thresholds;
  omega->add_option("--threshold", thresholds, "threshold (repeatable)");
  int omega_grid = 21;
  omega->add_option("--grid", omega_grid,
                    "threshold count when none are given");

  auto* rules_cmd =
      app.add_subcommand("rules", "write the rule catalog as JSON");

  auto* demo = app.add_subcommand("protocol-demo",
                                  "authenticated commitment protocol flow");
  std::string series_path, ledger_name = "ledger.log";
  double mu0 = 0.0;
  demo->add_option("--series", series_path, "economic series CSV (pi,x)")
      ->required();
  demo->add_option("--ledger", ledger_name, "ledger file name");
  demo->add_option("--mu0", mu0, "initial private money growth level");

  // Pre-scan for --config so its values become defaults before parsing.
  try {
    for (int i = 1; i + 1 < argc; ++i) {
      if (std::string(argv[i]) == "--config") {
        std::ifstream in(argv[i + 1], std::ios::binary);
        if (!in) {
          std::cerr << "cannot open config '" << argv[i + 1] << "'\n";
          return kExitUsage;
        }
        json cfg = json::parse(in);
        apply_config(app, cfg);
      }
    }
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(g, model_name, prior_name, rule_tag, coef_overrides,
                       theta_overrides, irf_horizon);
    }
    if (estimate->parsed()) {
      return cmd_estimate(g, model_name, prior_name, rule_tag, coef_overrides,
                          data_path, chain_len, burn_in, thin, proposal_scale);
    }
    if (optimize->parsed()) {
      return cmd_optimize(g, model_name, prior_name, rule_tag, coef_overrides,
                          data_path, n_draws);
    }
    if (rank->parsed()) {
      return cmd_rank(g, model_name, prior_name, rank_rules_opt, data_path,
                      n_draws, kmax);
    }
    if (portfolio->parsed()) {
      return cmd_portfolio(g, panel_path, tau_text, pf_order, pf_resolution,
                           pf_tries);
    }
    if (omega->parsed()) {
      return cmd_omega(g, panel_path, weights_text, thresholds, omega_grid);
    }
    if (rules_cmd->parsed()) {
      std::ofstream out(out_path(g, "rules.json"), std::ios::binary);
      out << rules::catalog_to_json();
      std::cout << "wrote rule catalog for "
                << rules::rule_catalog().size() << " families\n";
      return kExitOk;
    }
    if (demo->parsed()) {
      return cmd_protocol_demo(g, series_path, ledger_name, mu0);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
