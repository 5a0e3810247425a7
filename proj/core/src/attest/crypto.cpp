#include "sdpolicy/attest/crypto.hpp"

#include <mutex>
#include <stdexcept>

#include <sodium.h>

namespace sdpolicy::attest {

namespace {

void ensure_sodium() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    if (sodium_init() < 0) {
      throw std::runtime_error("libsodium initialization failed");
    }
  });
}

}  // namespace

KeyPair KeyPair::from_seed(const std::array<std::uint8_t, 32>& seed) {
  ensure_sodium();
  KeyPair kp;
  if (crypto_sign_seed_keypair(kp.pk.data(), kp.sk.data(), seed.data()) != 0) {
    throw std::runtime_error("crypto_sign_seed_keypair failed");
  }
  return kp;
}

KeyPair KeyPair::from_seed_u64(std::uint64_t seed) {
  std::array<std::uint8_t, 32> bytes{};
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<std::uint8_t>((seed >> (8 * i)) & 0xff);
  }
  // Stretch the integer seed over the full seed space.
  const Hash256 h = sha256(bytes.data(), bytes.size());
  std::array<std::uint8_t, 32> full;
  std::copy(h.begin(), h.end(), full.begin());
  return from_seed(full);
}

Hash256 sha256(const std::uint8_t* data, std::size_t len) {
  ensure_sodium();
  Hash256 out;
  crypto_hash_sha256(out.data(), data, len);
  return out;
}

Hash256 sha256(const Bytes& data) { return sha256(data.data(), data.size()); }

Signature sign(const SecretKey& sk, const Bytes& msg) {
  ensure_sodium();
  Signature sig;
  if (crypto_sign_detached(sig.data(), nullptr, msg.data(), msg.size(),
                           sk.data()) != 0) {
    throw std::runtime_error("crypto_sign_detached failed");
  }
  return sig;
}

bool verify_sig(const PublicKey& pk, const Bytes& msg, const Signature& sig) {
  ensure_sodium();
  return crypto_sign_verify_detached(sig.data(), msg.data(), msg.size(),
                                     pk.data()) == 0;
}

std::string hash_hex(const Hash256& h) { return to_hex(h.data(), h.size()); }

}  // namespace sdpolicy::attest
