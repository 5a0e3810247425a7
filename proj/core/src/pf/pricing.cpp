#include "sdpolicy/pf/pricing.hpp"

#include <cmath>
#include <stdexcept>

namespace sdpolicy::pf {

namespace {

void require_positive(const Eigen::VectorXd& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v(i) > 0.0) || !std::isfinite(v(i))) {
      throw std::invalid_argument(std::string("pricing: ") + what +
                                  " must be strictly positive and finite");
    }
  }
}

Eigen::VectorXd growth_sdf(const Eigen::VectorXd& series, double gamma) {
  Eigen::VectorXd out(series.size() - 1);
  for (Eigen::Index t = 0; t + 1 < series.size(); ++t) {
    out(t) = std::pow(series(t + 1) / series(t), -gamma);
  }
  return out;
}

double mean_of(const Eigen::VectorXd& v) { return v.mean(); }

double var_of(const Eigen::VectorXd& v) {
  const double m = v.mean();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    acc += (v(i) - m) * (v(i) - m);
  }
  return acc / static_cast<double>(v.size());
}

}  // namespace

void PricingInputs::validate() const {
  if (gamma < 0.0) {
    throw std::invalid_argument("pricing: gamma must be >= 0");
  }
  const auto len = ms_d.size();
  if (len < 2) {
    throw std::invalid_argument("pricing: series need at least 2 periods");
  }
  if (ms_b.size() != len || c_d.size() != len || c_b.size() != len ||
      q.size() != len) {
    throw std::invalid_argument("pricing: series length mismatch");
  }
  require_positive(ms_d, "ms_d");
  require_positive(ms_b, "ms_b");
  require_positive(c_d, "c_d");
  require_positive(c_b, "c_b");
  require_positive(q, "q");
  if (!(r_d > 0.0) || !(r_b > 0.0)) {
    throw std::invalid_argument("pricing: gross rates must be > 0");
  }
}

Eigen::VectorXd crra_sdf(const PricingInputs& in, Market market) {
  in.validate();
  const auto& ms = market == Market::kDominant ? in.ms_d : in.ms_b;
  const auto& c = market == Market::kDominant ? in.c_d : in.c_b;
  return growth_sdf(ms.cwiseProduct(c), in.gamma);
}

Eigen::VectorXd crra_sdf_consumption(const PricingInputs& in, Market market) {
  in.validate();
  return growth_sdf(market == Market::kDominant ? in.c_d : in.c_b, in.gamma);
}

Eigen::VectorXd crra_sdf_monetary(const PricingInputs& in, Market market) {
  in.validate();
  return growth_sdf(market == Market::kDominant ? in.ms_d : in.ms_b, in.gamma);
}

ReturnDecomposition expected_return_decomposition(const PricingInputs& in) {
  in.validate();
  const Eigen::VectorXd m_d = crra_sdf(in, Market::kDominant).array().log();
  const Eigen::VectorXd m_b = crra_sdf(in, Market::kBitcoin).array().log();
  const Eigen::VectorXd ms_d =
      crra_sdf_monetary(in, Market::kDominant).array().log();
  const Eigen::VectorXd ms_b =
      crra_sdf_monetary(in, Market::kBitcoin).array().log();

  ReturnDecomposition out;
  out.rate_differential = std::log(in.r_b) - std::log(in.r_d);
  out.variance_adjustment = 0.5 * (var_of(m_b) - var_of(m_d));
  out.ms_log_mean_b = mean_of(ms_b);
  out.ms_log_mean_d = mean_of(ms_d);
  out.total = out.rate_differential + out.variance_adjustment +
              out.ms_log_mean_b - out.ms_log_mean_d;
  return out;
}

PricingResiduals fundamental_pricing_check(const PricingInputs& in) {
  in.validate();
  const Eigen::VectorXd m_d = crra_sdf(in, Market::kDominant);
  const Eigen::VectorXd m_b = crra_sdf(in, Market::kBitcoin);
  double acc_b = 0.0;
  double acc_d = 0.0;
  const auto n = m_d.size();
  for (Eigen::Index t = 0; t < n; ++t) {
    const double q_growth = in.q(t + 1) / in.q(t);
    acc_b += m_b(t) * q_growth;
    acc_d += m_d(t) * q_growth;
  }
  PricingResiduals out;
  out.dominant_leg = std::abs(acc_b / n - 1.0 / in.r_d);
  out.bitcoin_leg = std::abs(acc_d / n - 1.0 / in.r_b);
  return out;
}

}  // namespace sdpolicy::pf
