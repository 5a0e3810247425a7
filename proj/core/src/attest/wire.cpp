#include "sdpolicy/attest/wire.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace sdpolicy::attest {

void Writer::u8(std::uint8_t v) { buf_.push_back(v); }

void Writer::u32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    buf_.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
  }
}

void Writer::u64(std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    buf_.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
  }
}

void Writer::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void Writer::raw(const std::uint8_t* data, std::size_t len) {
  buf_.insert(buf_.end(), data, data + len);
}

void Writer::bytes(const Bytes& b) {
  u32(static_cast<std::uint32_t>(b.size()));
  raw(b.data(), b.size());
}

void Writer::str(const std::string& s) {
  u32(static_cast<std::uint32_t>(s.size()));
  raw(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

void Writer::f64_list(const std::vector<double>& xs) {
  u32(static_cast<std::uint32_t>(xs.size()));
  for (const double x : xs) f64(x);
}

void Reader::need(std::size_t n) const {
  if (pos_ + n > buf_.size()) {
    throw std::runtime_error("wire: truncated input");
  }
}

std::uint8_t Reader::u8() {
  need(1);
  return buf_[pos_++];
}

std::uint32_t Reader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | buf_[pos_++];
  return v;
}

std::uint64_t Reader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | buf_[pos_++];
  return v;
}

double Reader::f64() { return std::bit_cast<double>(u64()); }

Bytes Reader::bytes() {
  const std::uint32_t len = u32();
  need(len);
  Bytes out(buf_.begin() + pos_, buf_.begin() + pos_ + len);
  pos_ += len;
  return out;
}

std::string Reader::str() {
  const std::uint32_t len = u32();
  need(len);
  std::string out(reinterpret_cast<const char*>(buf_.data()) + pos_, len);
  pos_ += len;
  return out;
}

std::vector<double> Reader::f64_list() {
  const std::uint32_t len = u32();
  std::vector<double> out(len);
  for (std::uint32_t i = 0; i < len; ++i) out[i] = f64();
  return out;
}

void Reader::raw(std::uint8_t* out, std::size_t len) {
  need(len);
  std::memcpy(out, buf_.data() + pos_, len);
  pos_ += len;
}

void Reader::expect_done() const {
  if (!done()) throw std::runtime_error("wire: trailing bytes");
}

std::string to_hex(const std::uint8_t* data, std::size_t len) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 0xf]);
  }
  return out;
}

std::string to_hex(const Bytes& b) { return to_hex(b.data(), b.size()); }

Bytes from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw std::runtime_error("hex: odd length");
  const auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::runtime_error("hex: invalid digit");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) |
                                       nibble(hex[2 * i + 1]));
  }
  return out;
}

}  // namespace sdpolicy::attest
