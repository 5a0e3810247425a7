#pragma once

#include <array>
#include <cstdint>

#include "sdpolicy/attest/wire.hpp"

namespace sdpolicy::attest {

using Hash256 = std::array<std::uint8_t, 32>;
using PublicKey = std::array<std::uint8_t, 32>;
using SecretKey = std::array<std::uint8_t, 64>;
using Signature = std::array<std::uint8_t, 64>;

/// Ed25519 key pair. Signatures are deterministic, so identical inputs and
/// keys always produce identical ledgers.
struct KeyPair {
  PublicKey pk{};
  SecretKey sk{};

  static KeyPair from_seed(const std::array<std::uint8_t, 32>& seed);
  /// Convenience for tests and demos: seed bytes derived from one integer.
  static KeyPair from_seed_u64(std::uint64_t seed);
};

Hash256 sha256(const std::uint8_t* data, std::size_t len);
Hash256 sha256(const Bytes& data);

Signature sign(const SecretKey& sk, const Bytes& msg);
bool verify_sig(const PublicKey& pk, const Bytes& msg, const Signature& sig);

std::string hash_hex(const Hash256& h);

}  // namespace sdpolicy::attest
