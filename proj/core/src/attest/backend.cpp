#include "sdpolicy/attest/backend.hpp"

namespace sdpolicy::attest {

namespace {

Bytes circuit_bytes(const CircuitDescriptor& c) {
  Writer w;
  w.str(c.name);
  w.f64_list(c.params);
  return w.take();
}

Hash256 digest_of(const Bytes& artifact, const std::vector<double>& p,
                  const std::vector<double>& input_public, double output,
                  const Hash256& h, const Hash256& commitment) {
  Writer w;
  w.str("sdpolicy.proof.digest.v1");
  w.bytes(artifact);
  w.f64_list(p);
  w.f64_list(input_public);
  w.f64(output);
  w.raw(h.data(), h.size());
  w.raw(commitment.data(), commitment.size());
  return sha256(w.data());
}

class TransparentBackend final : public ProofBackend {
 public:
  ProofArtifacts setup(const CircuitDescriptor& c) override {
    const Hash256 tag = sha256(circuit_bytes(c));
    Bytes artifact(tag.begin(), tag.end());
    return ProofArtifacts{artifact, artifact};
  }

  Proof prove(const Bytes& proving_artifact, const std::vector<double>& p,
              const std::vector<double>& input_public,
              const std::vector<double>& input_private, double output,
              const Hash256& h) override {
    // Deterministic salt: same witness and statement, same proof bytes.
    Writer salt_w;
    salt_w.str("sdpolicy.proof.salt.v1");
    salt_w.bytes(proving_artifact);
    salt_w.f64_list(input_private);
    salt_w.raw(h.data(), h.size());
    const Hash256 salt = sha256(salt_w.data());

    Writer commit_w;
    commit_w.str("sdpolicy.proof.commit.v1");
    commit_w.raw(salt.data(), salt.size());
    commit_w.f64_list(input_private);
    Proof proof;
    proof.commitment = sha256(commit_w.data());
    proof.digest = digest_of(proving_artifact, p, input_public, output, h,
                             proof.commitment);
    return proof;
  }

  bool verify(const Bytes& verification_artifact, const Proof& proof,
              const std::vector<double>& p,
              const std::vector<double>& input_public, double output,
              const Hash256& h) override {
    const Hash256 expected = digest_of(verification_artifact, p, input_public,
                                       output, h, proof.commitment);
    return expected == proof.digest;
  }
};

}  // namespace

std::unique_ptr<ProofBackend> transparent_backend() {
  return std::make_unique<TransparentBackend>();
}

}  // namespace sdpolicy::attest
