#pragma once

#include <string>
#include <vector>

namespace sdpolicy::attest {

/// Named computation over authenticated data. `params` is the public input
/// p fixed at ledger initialization.
struct CircuitDescriptor {
  std::string name;
  std::vector<double> params;
};

/// Built-in circuit "money-growth-v1": the augmented money-growth rule.
///   params        = [rho_mm, rho_mpi, rho_mx, mu_ss, pi_ss, x_ss]
///   input_public  = [pi_t, x_t]        (from an authenticated series)
///   input_private = [mu_prev]
///   output        = mu_t
CircuitDescriptor money_growth_circuit();

bool is_known_circuit(const CircuitDescriptor& c);

/// Evaluates the circuit; throws std::invalid_argument for unknown names,
/// arity mismatches, or invalid values (nonpositive inputs to the logs).
double eval_circuit(const CircuitDescriptor& c,
                    const std::vector<double>& input_public,
                    const std::vector<double>& input_private);

}  // namespace sdpolicy::attest
