#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

namespace sdpolicy::rules {

enum class RuleFamily {
  kTaylor,
  kConstantMoneyGrowth,
  kBitcoinSupply,
  kMcCallum,
  kAugmentedMoneyGrowth,
  kChinaQuantity,
};

/// One named coefficient with its admissible box.
struct CoefficientSpec {
  std::string name;
  double lower;
  double upper;
  double default_value;
  /// Searched by the policy optimizer; fixed coefficients (targets, steady
  /// states, shock scales) are not.
  bool optimized;
};

struct FamilyInfo {
  RuleFamily family;
  std::string tag;  // stable identifier used in files and CLI flags
  std::vector<CoefficientSpec> coefficients;
};

const std::vector<FamilyInfo>& rule_catalog();
const FamilyInfo& family_info(RuleFamily family);
RuleFamily family_from_tag(const std::string& tag);

/// The catalog as a JSON document (families, coefficient boxes, defaults),
/// in the same structured-text format the model files use.
std::string catalog_to_json();

/// Coefficient values for one family; every value must lie in its box.
class RuleCoefficients {
 public:
  static RuleCoefficients defaults(RuleFamily family);

  RuleFamily family() const { return family_; }
  const std::string& tag() const;
  double at(const std::string& name) const;
  /// Throws std::out_of_range for unknown names and std::invalid_argument
  /// for values outside the coefficient box.
  void set(const std::string& name, double value);
  /// Skips the box check. Exists so diagnostic evaluations can probe
  /// indeterminate coefficient points; the optimizer never produces
  /// out-of-box values.
  void set_unchecked(const std::string& name, double value);
  bool in_box() const;
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<double>& values() const { return values_; }

 private:
  explicit RuleCoefficients(RuleFamily family);
  RuleFamily family_;
  std::vector<std::string> names_;
  std::vector<double> values_;
};

/// Policy equation block over the layout [x; u]:
///   on_u * u_t = on_lead_x * E_t x_{t+1} + on_x * x_t
///              + on_lag_x * x_{t-1} + on_lag_u * u_{t-1} + on_shocks * v_t
struct PolicyBlock {
  Eigen::MatrixXd on_u;       // k x k
  Eigen::MatrixXd on_lead_x;  // k x n
  Eigen::MatrixXd on_x;       // k x n
  Eigen::MatrixXd on_lag_x;   // k x n
  Eigen::MatrixXd on_lag_u;   // k x k
  Eigen::MatrixXd on_shocks;  // k x q

  static PolicyBlock zero(int k, int n, int q);
};

/// Where the rule plugs into a particular model: variable columns the
/// built-in families reference, the policy innovation column, which row of
/// the policy block carries the family rule, and fixed rows (such as the
/// money-growth identity) shared by every family on the model.
struct PolicyLayout {
  int n = 0;
  int k = 0;
  int q = 0;
  int col_pi = -1;
  int col_y = -1;
  int col_mr = -1;
  int shock_policy = -1;
  int rule_row = 0;
  std::map<RuleFamily, int> instrument;  // family -> index into u
  PolicyBlock common;                    // rule_row left empty

  bool supports(RuleFamily family) const {
    return instrument.count(family) > 0;
  }
};

/// Builds the policy block for `c` on `layout`. The block encodes the
/// family's log-linearized rule exactly; throws std::invalid_argument for
/// family/model pairings the layout does not support.
PolicyBlock rule_to_policy_block(const RuleCoefficients& c,
                                 const PolicyLayout& layout);

/// McCallum base-growth rule (level form):
///   db_t = dx_star - (x_{t-1} - b_{t-1} - x_{t-17} + b_{t-17})/16
///        + lambda_fb * (x_target - x_{t-1})
/// `history` holds the last 17 (x, b) pairs ordered oldest first, so
/// history.front() is (x_{t-17}, b_{t-17}) and history.back() is
/// (x_{t-1}, b_{t-1}).
double mccallum_delta_b(const std::vector<std::pair<double, double>>& history,
                        double x_target, double dx_star, double lambda_fb);

/// Augmented money-growth rule (level form):
///   ln(mu_t/mu) = rho_mm ln(mu_prev/mu) + rho_mpi ln(pi_t/pi)
///              + rho_mx ln(x_t/x)
/// using the steady states mu_ss, pi_ss, x_ss carried by `c`. All level
/// arguments must be strictly positive.
double money_growth_step(double mu_prev, double pi_t, double x_t,
                         const RuleCoefficients& c);

/// Quantity-rule step:
///   dM_t = dM_star + theta1 * dM_prev - theta2 * ygap_t
///        - theta3 * (pi_t - pi_star)
double china_quantity_step(double dM_prev, double ygap_t, double pi_t,
                           double dM_star, const RuleCoefficients& c);

}  // namespace sdpolicy::rules
