#include "sdpolicy/pf/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "sdpolicy/rng.hpp"

namespace sdpolicy::pf {

void ReturnsPanel::validate() const {
  if (returns.rows() == 0 || returns.cols() == 0) {
    throw std::invalid_argument("ReturnsPanel: empty panel");
  }
  if (probs.size() != returns.rows()) {
    throw std::invalid_argument("ReturnsPanel: probability length mismatch");
  }
  double sum = 0.0;
  for (Eigen::Index t = 0; t < probs.size(); ++t) {
    if (!(probs(t) > 0.0)) {
      throw std::invalid_argument("ReturnsPanel: probabilities must be > 0");
    }
    sum += probs(t);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("ReturnsPanel: probabilities must sum to 1");
  }
  if (!returns.allFinite()) {
    throw std::invalid_argument("ReturnsPanel: non-finite return");
  }
  if (!assets.empty() && static_cast<int>(assets.size()) != returns.cols()) {
    throw std::invalid_argument("ReturnsPanel: asset label count mismatch");
  }
}

void validate_weights(const Eigen::VectorXd& lambda, int n_assets) {
  if (lambda.size() != n_assets) {
    throw std::invalid_argument("portfolio weights: dimension mismatch");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -1e-12) {
      throw std::invalid_argument("portfolio weights: negative entry");
    }
    sum += lambda(i);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("portfolio weights: must sum to 1");
  }
}

sd::EmpiricalDistribution portfolio_return_dist(const ReturnsPanel& panel,
                                                const Eigen::VectorXd& lambda) {
  panel.validate();
  validate_weights(lambda, panel.n_assets());
  const Eigen::VectorXd r = panel.returns * lambda;
  std::vector<double> values(r.data(), r.data() + r.size());
  std::vector<double> weights(panel.probs.data(),
                              panel.probs.data() + panel.probs.size());
  return sd::EmpiricalDistribution::from_weighted(std::move(values),
                                                  std::move(weights),
                                                  sd::Orientation::kReturn);
}

sd::SDResult portfolio_dominates(const ReturnsPanel& panel,
                                 const Eigen::VectorXd& lambda,
                                 const Eigen::VectorXd& tau, int k) {
  const auto dl = portfolio_return_dist(panel, lambda);
  const auto dt = portfolio_return_dist(panel, tau);
  return sd::sd_dominates_returns(dl, dt, k);
}

namespace {

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

void enumerate_lattice(int n, int resolution,
                       const std::function<void(const Eigen::VectorXd&)>& fn) {
  // Compositions of `resolution` into n nonnegative parts.
  std::vector<int> parts(n, 0);
  const std::function<void(int, int)> rec = [&](int idx, int remaining) {
    if (idx == n - 1) {
      parts[idx] = remaining;
      Eigen::VectorXd w(n);
      for (int i = 0; i < n; ++i) {
        w(i) = static_cast<double>(parts[i]) / resolution;
      }
      fn(w);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      parts[idx] = v;
      rec(idx + 1, remaining - v);
    }
  };
  rec(0, resolution);
}

}  // namespace

EfficiencyReport is_sd_efficient(const ReturnsPanel& panel,
                                 const Eigen::VectorXd& tau, int k,
                                 int grid_resolution, int random_tries,
                                 std::uint64_t seed) {
  if (grid_resolution < 1) {
    throw std::invalid_argument("is_sd_efficient: grid_resolution must be >= 1");
  }
  if (random_tries < 0) {
    throw std::invalid_argument("is_sd_efficient: random_tries must be >= 0");
  }
  panel.validate();
  validate_weights(tau, panel.n_assets());

  EfficiencyReport report;
  report.tau = tau;
  report.order = k;
  report.grid_resolution = grid_resolution;
  report.random_tries = random_tries;
  report.seed = seed;

  const auto dt = portfolio_return_dist(panel, tau);
  std::optional<Eigen::VectorXd> best;
  long checked = 0;
  const auto consider = [&](const Eigen::VectorXd& w) {
    ++checked;
    const auto dw = portfolio_return_dist(panel, w);
    const auto res = sd::sd_dominates_returns(dw, dt, k);
    if (res.dominates && (!best || lex_less(w, *best))) best = w;
  };

  enumerate_lattice(panel.n_assets(), grid_resolution, consider);
  Rng rng(seed);
  for (int t = 0; t < random_tries; ++t) {
    // Dirichlet(1,...,1) via normalized exponentials.
    Eigen::VectorXd w(panel.n_assets());
    double sum = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      w(i) = -std::log(std::max(rng.uniform(), 0x1.0p-53));
      sum += w(i);
    }
    w /= sum;
    consider(w);
  }

  report.candidates_checked = checked;
  if (best) {
    report.efficient_at_resolution = false;
    report.dominating = *best;
  }
  return report;
}

ArbitrageReport arbitrage_check(const sd::EmpiricalDistribution& x_market,
                                const sd::EmpiricalDistribution& y_market,
                                const sd::EmpiricalDistribution& x_belief,
                                const sd::EmpiricalDistribution& y_belief) {
  if (x_belief.orientation() != sd::Orientation::kReturn ||
      y_belief.orientation() != sd::Orientation::kReturn) {
    throw std::invalid_argument(
        "arbitrage_check: belief samples must be return-oriented");
  }
  ArbitrageReport report;
  report.market_fsd = sd::sd_dominates_returns(x_market, y_market, 1);
  report.belief_condition = true;
  for (const double a : sd::detail::test_points(x_belief, y_belief)) {
    if (y_belief.cdf(a) - x_belief.cdf(a) > 1e-12) {
      report.belief_condition = false;
      break;
    }
  }
  report.arbitrage = report.market_fsd.dominates && report.belief_condition;
  return report;
}

ReturnsPanel panel_from_table(const std::vector<std::string>& header,
                              const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("panel: no scenario rows");
  int prob_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "prob") prob_col = static_cast<int>(i);
  }
  const int n_assets =
      static_cast<int>(header.size()) - (prob_col >= 0 ? 1 : 0);
  if (n_assets < 1) throw std::invalid_argument("panel: no asset columns");
  const int T = static_cast<int>(rows.size());

  ReturnsPanel panel;
  panel.returns.resize(T, n_assets);
  panel.probs.resize(T);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (static_cast<int>(i) != prob_col) panel.assets.push_back(header[i]);
  }
  for (int t = 0; t < T; ++t) {
    int col = 0;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (static_cast<int>(i) == prob_col) {
        panel.probs(t) = rows[t][i];
      } else {
        panel.returns(t, col++) = rows[t][i];
      }
    }
    if (prob_col < 0) panel.probs(t) = 1.0 / T;
  }
  panel.validate();
  return panel;
}

}  // namespace sdpolicy::pf
