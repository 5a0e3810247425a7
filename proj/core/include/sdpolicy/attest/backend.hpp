#pragma once

#include <memory>
#include <vector>

#include "sdpolicy/attest/circuit.hpp"
#include "sdpolicy/attest/crypto.hpp"

namespace sdpolicy::attest {

struct ProofArtifacts {
  Bytes proving;
  Bytes verification;
};

struct Proof {
  Hash256 commitment{};  // salted commitment to input_private
  Hash256 digest{};      // binds circuit, publics, output, h, commitment
};

/// Pluggable proof system for policy computations. The contract is
/// completeness (an honest prove always verifies) and binding (tampering
/// with output, h or input_public after proving fails verification). The
/// interface admits a succinct zero-knowledge implementation; the shipped
/// backend below is transparent and provides neither zero-knowledge nor
/// succinctness.
class ProofBackend {
 public:
  virtual ~ProofBackend() = default;
  virtual ProofArtifacts setup(const CircuitDescriptor& c) = 0;
  virtual Proof prove(const Bytes& proving_artifact,
                      const std::vector<double>& p,
                      const std::vector<double>& input_public,
                      const std::vector<double>& input_private, double output,
                      const Hash256& h) = 0;
  virtual bool verify(const Bytes& verification_artifact, const Proof& proof,
                      const std::vector<double>& p,
                      const std::vector<double>& input_public, double output,
                      const Hash256& h) = 0;
};

/// Transparent backend: the proof is a salted commitment to the private
/// input plus a digest over (artifact, p, input_public, output, h,
/// commitment) that the verifier re-derives from public parts.
std::unique_ptr<ProofBackend> transparent_backend();

}  // namespace sdpolicy::attest
