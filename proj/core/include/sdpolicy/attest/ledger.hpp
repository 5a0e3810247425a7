#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdpolicy/attest/backend.hpp"
#include "sdpolicy/attest/circuit.hpp"
#include "sdpolicy/attest/crypto.hpp"

namespace sdpolicy::attest {

/// The public payload a provider signs: one economic series over a period
/// range.
struct SeriesData {
  std::string series_id;
  std::uint32_t period_start = 0;
  std::uint32_t period_end = 0;
  std::vector<double> values;

  Bytes canonical() const;
  static SeriesData from_canonical(const Bytes& b);
};

struct EconomicSeriesRecord {
  std::string provider;
  SeriesData data;
  Hash256 h{};         // sha256 of data.canonical()
  Signature s_econ{};  // over (h, data.canonical())

  Bytes signed_message() const;
  Bytes canonical() const;
  static EconomicSeriesRecord from_canonical(const Bytes& b);
};

struct PolicyCommitment {
  std::string miner;
  Proof proof{};
  std::vector<double> input_public;
  double output_miner = 0.0;
  Hash256 h{};  // referenced series record
  std::uint64_t nonce = 0;
  Signature miner_sig{};

  Bytes signed_body() const;  // everything except miner_sig
  Bytes canonical() const;
  static PolicyCommitment from_canonical(const Bytes& b);
};

enum class RejectReason {
  kUnknownHash,
  kBadProviderSignature,
  kBadMinerSignature,
  kReplayedNonce,
  kProofInvalid,
};

const char* reject_reason_name(RejectReason r);

struct ValidationResult {
  bool accepted = false;
  std::optional<RejectReason> reason;
};

/// Local append-only log with a hash chain. Entries are immutable once
/// appended; a commitment is appended only after passing validation.
/// Single-writer: mutations must be serialized by the caller.
class Ledger {
 public:
  /// Initializes a ledger for a registered circuit; records the setup
  /// artifact. Throws std::invalid_argument for unknown circuits.
  static Ledger init(const CircuitDescriptor& circuit,
                     const std::vector<double>& public_input,
                     ProofBackend& backend);

  void register_provider(const std::string& id, const PublicKey& pk);
  void register_miner(const std::string& id, const PublicKey& pk);

  /// Signs `data` with the given key and appends the record. The provider
  /// must be registered; whether the signature matches the registered key
  /// is enforced by validate() on every referencing transaction.
  EconomicSeriesRecord authenticate_data(const std::string& provider,
                                         const KeyPair& keys, SeriesData data);

  /// Evaluates the circuit on (public_input, input_public, input_private),
  /// proves it against the referenced record hash, and signs the
  /// transaction. The nonce is the miner's next unused value. Does not
  /// append; submit through validate().
  PolicyCommitment commit_policy(const std::string& miner, const KeyPair& keys,
                                 const std::vector<double>& input_public,
                                 const std::vector<double>& input_private,
                                 const Hash256& record_hash,
                                 ProofBackend& backend) const;

  /// Acceptance checks, in order: (a) h references a stored provider-signed
  /// record, (b) that record's provider signature verifies, (c) the miner
  /// signature verifies under a registered key, (d) the nonce is fresh
  /// (strictly above the miner's last), (e) the proof verifies. Accepted
  /// transactions are appended.
  ValidationResult validate(const PolicyCommitment& tx, ProofBackend& backend);

  const CircuitDescriptor& circuit() const { return circuit_; }
  const std::vector<double>& public_input() const { return public_input_; }
  const std::vector<EconomicSeriesRecord>& records() const { return records_; }
  const std::vector<PolicyCommitment>& accepted() const { return accepted_; }
  std::optional<EconomicSeriesRecord> find_record(const Hash256& h) const;
  std::size_t entry_count() const { return entries_.size(); }
  Hash256 tip() const;

  /// Newline-delimited structured-text log; see docs/wire-format.md.
  std::string serialize() const;
  void save(const std::string& path) const;

  /// Reloads and re-verifies: the hash chain, every signature, and every
  /// accepted commitment (through the backend). Throws on any mismatch.
  static Ledger load_from_text(const std::string& text, ProofBackend& backend);
  static Ledger load(const std::string& path, ProofBackend& backend);

 private:
  Ledger() = default;

  enum class EntryKind : std::uint8_t {
    kInit = 1,
    kProviderKey = 2,
    kMinerKey = 3,
    kSeries = 4,
    kCommitment = 5,
  };
  struct Entry {
    EntryKind kind;
    Bytes payload;
    Hash256 chain{};
  };

  void append(EntryKind kind, Bytes payload);
  static const char* kind_name(EntryKind k);
  static EntryKind kind_from_name(const std::string& name);

  CircuitDescriptor circuit_;
  std::vector<double> public_input_;
  ProofArtifacts setup_;
  std::map<std::string, PublicKey> providers_;
  std::map<std::string, PublicKey> miners_;
  std::vector<EconomicSeriesRecord> records_;
  std::vector<PolicyCommitment> accepted_;
  std::map<std::string, std::uint64_t> last_nonce_;
  std::vector<Entry> entries_;
};

}  // namespace sdpolicy::attest
