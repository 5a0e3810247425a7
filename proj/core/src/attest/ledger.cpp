#include "sdpolicy/attest/ledger.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sdpolicy::attest {

Bytes SeriesData::canonical() const {
  Writer w;
  w.str(series_id);
  w.u32(period_start);
  w.u32(period_end);
  w.f64_list(values);
  return w.take();
}

SeriesData SeriesData::from_canonical(const Bytes& b) {
  Reader r(b);
  SeriesData d;
  d.series_id = r.str();
  d.period_start = r.u32();
  d.period_end = r.u32();
  d.values = r.f64_list();
  r.expect_done();
  return d;
}

Bytes EconomicSeriesRecord::signed_message() const {
  Writer w;
  w.str("sdpolicy.series.v1");
  w.raw(h.data(), h.size());
  w.bytes(data.canonical());
  return w.take();
}

Bytes EconomicSeriesRecord::canonical() const {
  Writer w;
  w.str(provider);
  w.bytes(data.canonical());
  w.raw(h.data(), h.size());
  w.raw(s_econ.data(), s_econ.size());
  return w.take();
}

EconomicSeriesRecord EconomicSeriesRecord::from_canonical(const Bytes& b) {
  Reader r(b);
  EconomicSeriesRecord rec;
  rec.provider = r.str();
  rec.data = SeriesData::from_canonical(r.bytes());
  r.raw(rec.h.data(), rec.h.size());
  r.raw(rec.s_econ.data(), rec.s_econ.size());
  r.expect_done();
  return rec;
}

Bytes PolicyCommitment::signed_body() const {
  Writer w;
  w.str("sdpolicy.commitment.v1");
  w.str(miner);
  w.raw(proof.commitment.data(), proof.commitment.size());
  w.raw(proof.digest.data(), proof.digest.size());
  w.f64_list(input_public);
  w.f64(output_miner);
  w.raw(h.data(), h.size());
  w.u64(nonce);
  return w.take();
}

Bytes PolicyCommitment::canonical() const {
  Writer w;
  w.bytes(signed_body());
  w.raw(miner_sig.data(), miner_sig.size());
  return w.take();
}

PolicyCommitment PolicyCommitment::from_canonical(const Bytes& b) {
  Reader outer(b);
  const Bytes body = outer.bytes();
  PolicyCommitment tx;
  outer.raw(tx.miner_sig.data(), tx.miner_sig.size());
  outer.expect_done();

  Reader r(body);
  const std::string tag = r.str();
  if (tag != "sdpolicy.commitment.v1") {
    throw std::runtime_error("ledger: bad commitment tag");
  }
  tx.miner = r.str();
  r.raw(tx.proof.commitment.data(), tx.proof.commitment.size());
  r.raw(tx.proof.digest.data(), tx.proof.digest.size());
  tx.input_public = r.f64_list();
  tx.output_miner = r.f64();
  r.raw(tx.h.data(), tx.h.size());
  tx.nonce = r.u64();
  r.expect_done();
  return tx;
}

const char* reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::kUnknownHash: return "unknown-hash";
    case RejectReason::kBadProviderSignature: return "bad-provider-signature";
    case RejectReason::kBadMinerSignature: return "bad-miner-signature";
    case RejectReason::kReplayedNonce: return "replayed-nonce";
    case RejectReason::kProofInvalid: return "proof-invalid";
  }
  return "unknown";
}

const char* Ledger::kind_name(EntryKind k) {
  switch (k) {
    case EntryKind::kInit: return "init";
    case EntryKind::kProviderKey: return "provider-key";
    case EntryKind::kMinerKey: return "miner-key";
    case EntryKind::kSeries: return "series";
    case EntryKind::kCommitment: return "commitment";
  }
  return "unknown";
}

Ledger::EntryKind Ledger::kind_from_name(const std::string& name) {
  if (name == "init") return EntryKind::kInit;
  if (name == "provider-key") return EntryKind::kProviderKey;
  if (name == "miner-key") return EntryKind::kMinerKey;
  if (name == "series") return EntryKind::kSeries;
  if (name == "commitment") return EntryKind::kCommitment;
  throw std::runtime_error("ledger: unknown entry kind '" + name + "'");
}

Hash256 Ledger::tip() const {
  if (entries_.empty()) return Hash256{};
  return entries_.back().chain;
}

void Ledger::append(EntryKind kind, Bytes payload) {
  Entry e;
  e.kind = kind;
  e.payload = std::move(payload);
  Writer w;
  const Hash256 prev = tip();
  w.raw(prev.data(), prev.size());
  w.u8(static_cast<std::uint8_t>(kind));
  w.bytes(e.payload);
  e.chain = sha256(w.data());
  entries_.push_back(std::move(e));
}

Ledger Ledger::init(const CircuitDescriptor& circuit,
                    const std::vector<double>& public_input,
                    ProofBackend& backend) {
  if (!is_known_circuit(circuit)) {
    throw std::invalid_argument("ledger init: unknown circuit '" +
                                circuit.name + "'");
  }
  Ledger ledger;
  ledger.circuit_ = circuit;
  ledger.public_input_ = public_input;
  ledger.setup_ = backend.setup(circuit);

  Writer w;
  w.str(circuit.name);
  w.f64_list(circuit.params);
  w.f64_list(public_input);
  w.bytes(ledger.setup_.proving);
  w.bytes(ledger.setup_.verification);
  ledger.append(EntryKind::kInit, w.take());
  return ledger;
}

void Ledger::register_provider(const std::string& id, const PublicKey& pk) {
  if (providers_.count(id)) {
    throw std::invalid_argument("ledger: provider '" + id +
                                "' already registered");
  }
  providers_[id] = pk;
  Writer w;
  w.str(id);
  w.raw(pk.data(), pk.size());
  append(EntryKind::kProviderKey, w.take());
}

void Ledger::register_miner(const std::string& id, const PublicKey& pk) {
  if (miners_.count(id)) {
    throw std::invalid_argument("ledger: miner '" + id + "' already registered");
  }
  miners_[id] = pk;
  Writer w;
  w.str(id);
  w.raw(pk.data(), pk.size());
  append(EntryKind::kMinerKey, w.take());
}

EconomicSeriesRecord Ledger::authenticate_data(const std::string& provider,
                                               const KeyPair& keys,
                                               SeriesData data) {
  const auto it = providers_.find(provider);
  if (it == providers_.end()) {
    throw std::invalid_argument("ledger: provider '" + provider +
                                "' is not registered");
  }
  // The signature is not checked against the registered key here; the
  // validator re-verifies it on every referencing transaction, which is
  // where a mismatched key pair surfaces (bad-provider-signature).
  EconomicSeriesRecord rec;
  rec.provider = provider;
  rec.data = std::move(data);
  rec.h = sha256(rec.data.canonical());
  rec.s_econ = sign(keys.sk, rec.signed_message());
  records_.push_back(rec);
  append(EntryKind::kSeries, rec.canonical());
  return rec;
}

std::optional<EconomicSeriesRecord> Ledger::find_record(
    const Hash256& h) const {
  for (const auto& rec : records_) {
    if (rec.h == h) return rec;
  }
  return std::nullopt;
}

PolicyCommitment Ledger::commit_policy(const std::string& miner,
                                       const KeyPair& keys,
                                       const std::vector<double>& input_public,
                                       const std::vector<double>& input_private,
                                       const Hash256& record_hash,
                                       ProofBackend& backend) const {
  if (!find_record(record_hash)) {
    throw std::invalid_argument(
        "commit_policy: referenced record is not on the ledger");
  }
  PolicyCommitment tx;
  tx.miner = miner;
  tx.input_public = input_public;
  tx.output_miner = eval_circuit(circuit_, input_public, input_private);
  tx.h = record_hash;
  const auto it = last_nonce_.find(miner);
  tx.nonce = (it == last_nonce_.end() ? 0 : it->second) + 1;
  tx.proof = backend.prove(setup_.proving, public_input_, input_public,
                           input_private, tx.output_miner, tx.h);
  tx.miner_sig = sign(keys.sk, tx.signed_body());
  return tx;
}

ValidationResult Ledger::validate(const PolicyCommitment& tx,
                                  ProofBackend& backend) {
  if (entries_.empty()) {
    throw std::logic_error("ledger: validate before init");
  }
  // (a) referenced hash is on the ledger in a provider-signed record.
  const auto rec = find_record(tx.h);
  if (!rec) return {false, RejectReason::kUnknownHash};
  // (b) the record's provider signature verifies.
  const auto prov = providers_.find(rec->provider);
  if (prov == providers_.end() ||
      !verify_sig(prov->second, rec->signed_message(), rec->s_econ)) {
    return {false, RejectReason::kBadProviderSignature};
  }
  // (c) the miner signature verifies under a registered key.
  const auto miner = miners_.find(tx.miner);
  if (miner == miners_.end() ||
      !verify_sig(miner->second, tx.signed_body(), tx.miner_sig)) {
    return {false, RejectReason::kBadMinerSignature};
  }
  // (d) the nonce is fresh.
  const auto last = last_nonce_.find(tx.miner);
  if (last != last_nonce_.end() && tx.nonce <= last->second) {
    return {false, RejectReason::kReplayedNonce};
  }
  // (e) the proof verifies.
  if (!backend.verify(setup_.verification, tx.proof, public_input_,
                      tx.input_public, tx.output_miner, tx.h)) {
    return {false, RejectReason::kProofInvalid};
  }
  last_nonce_[tx.miner] = tx.nonce;
  accepted_.push_back(tx);
  append(EntryKind::kCommitment, tx.canonical());
  return {true, std::nullopt};
}

std::string Ledger::serialize() const {
  std::ostringstream out;
  for (const auto& e : entries_) {
    out << "{\"kind\":\"" << kind_name(e.kind) << "\",\"payload\":\""
        << to_hex(e.payload) << "\",\"chain\":\""
        << to_hex(e.chain.data(), e.chain.size()) << "\"}\n";
  }
  return out.str();
}

void Ledger::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("ledger: cannot write '" + path + "'");
  out << serialize();
}

Ledger Ledger::load_from_text(const std::string& text, ProofBackend& backend) {
  std::istringstream in(text);
  std::string line;
  std::optional<Ledger> ledger;
  Hash256 prev{};
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    // Minimal fixed-shape parse of {"kind":"...","payload":"...","chain":"..."}.
    const auto field = [&](const std::string& key) -> std::string {
      const std::string pat = "\"" + key + "\":\"";
      const auto at = line.find(pat);
      if (at == std::string::npos) {
        throw std::runtime_error("ledger: malformed line " +
                                 std::to_string(lineno));
      }
      const auto start = at + pat.size();
      const auto end = line.find('"', start);
      if (end == std::string::npos) {
        throw std::runtime_error("ledger: malformed line " +
                                 std::to_string(lineno));
      }
      return line.substr(start, end - start);
    };
    const EntryKind kind = kind_from_name(field("kind"));
    const Bytes payload = from_hex(field("payload"));
    const Bytes chain_bytes = from_hex(field("chain"));
    if (chain_bytes.size() != 32) {
      throw std::runtime_error("ledger: bad chain hash length");
    }

    Writer w;
    w.raw(prev.data(), prev.size());
    w.u8(static_cast<std::uint8_t>(kind));
    w.bytes(payload);
    const Hash256 expect = sha256(w.data());
    Hash256 stored{};
    std::copy(chain_bytes.begin(), chain_bytes.end(), stored.begin());
    if (stored != expect) {
      throw std::runtime_error("ledger: hash chain mismatch at line " +
                               std::to_string(lineno));
    }
    prev = expect;

    Reader r(payload);
    switch (kind) {
      case EntryKind::kInit: {
        if (ledger) throw std::runtime_error("ledger: duplicate init entry");
        CircuitDescriptor c;
        c.name = r.str();
        c.params = r.f64_list();
        const std::vector<double> p = r.f64_list();
        const Bytes proving = r.bytes();
        const Bytes verification = r.bytes();
        r.expect_done();
        Ledger l = Ledger::init(c, p, backend);
        if (l.setup_.proving != proving ||
            l.setup_.verification != verification) {
          throw std::runtime_error("ledger: setup artifact mismatch");
        }
        ledger = std::move(l);
        break;
      }
      case EntryKind::kProviderKey: {
        if (!ledger) throw std::runtime_error("ledger: entry before init");
        const std::string id = r.str();
        PublicKey pk{};
        r.raw(pk.data(), pk.size());
        r.expect_done();
        ledger->register_provider(id, pk);
        break;
      }
      case EntryKind::kMinerKey: {
        if (!ledger) throw std::runtime_error("ledger: entry before init");
        const std::string id = r.str();
        PublicKey pk{};
        r.raw(pk.data(), pk.size());
        r.expect_done();
        ledger->register_miner(id, pk);
        break;
      }
      case EntryKind::kSeries: {
        if (!ledger) throw std::runtime_error("ledger: entry before init");
        // Integrity is covered by the hash chain; signature validity is
        // re-checked whenever a commitment references the record.
        auto rec = EconomicSeriesRecord::from_canonical(payload);
        ledger->records_.push_back(rec);
        ledger->append(EntryKind::kSeries, rec.canonical());
        break;
      }
      case EntryKind::kCommitment: {
        if (!ledger) throw std::runtime_error("ledger: entry before init");
        const auto tx = PolicyCommitment::from_canonical(payload);
        const auto result = ledger->validate(tx, backend);
        if (!result.accepted) {
          throw std::runtime_error(
              std::string("ledger: stored commitment fails validation: ") +
              reject_reason_name(*result.reason));
        }
        break;
      }
    }
  }
  if (!ledger) throw std::runtime_error("ledger: empty log");
  return std::move(*ledger);
}

Ledger Ledger::load(const std::string& path, ProofBackend& backend) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("ledger: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_from_text(buf.str(), backend);
}

}  // namespace sdpolicy::attest
