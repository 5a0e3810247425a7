#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sdpolicy::attest {

using Bytes = std::vector<std::uint8_t>;

/// Canonical serialization: fixed-width big-endian integers, IEEE-754 bit
/// patterns for doubles, and u32 length prefixes for byte strings and
/// lists, written in declaration order. The byte layout is a compatibility
/// contract; see docs/wire-format.md.
class Writer {
 public:
  void u8(std::uint8_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void raw(const std::uint8_t* data, std::size_t len);
  void bytes(const Bytes& b);        // length-prefixed
  void str(const std::string& s);    // length-prefixed UTF-8
  void f64_list(const std::vector<double>& xs);

  const Bytes& data() const { return buf_; }
  Bytes take() { return std::move(buf_); }

 private:
  Bytes buf_;
};

/// Strict reader over a canonical byte string; throws std::runtime_error
/// on truncation and requires full consumption via expect_done().
class Reader {
 public:
  explicit Reader(const Bytes& buf) : buf_(buf) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  Bytes bytes();
  std::string str();
  std::vector<double> f64_list();
  void raw(std::uint8_t* out, std::size_t len);
  bool done() const { return pos_ == buf_.size(); }
  void expect_done() const;

 private:
  void need(std::size_t n) const;
  const Bytes& buf_;
  std::size_t pos_ = 0;
};

std::string to_hex(const std::uint8_t* data, std::size_t len);
std::string to_hex(const Bytes& b);
Bytes from_hex(const std::string& hex);

}  // namespace sdpolicy::attest
