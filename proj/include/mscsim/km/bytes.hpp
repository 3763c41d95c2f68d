#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace mscsim::km {

using BigInt = boost::multiprecision::mpz_int;
using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);
std::string to_hex(std::span<const std::uint8_t> data);

/// Big-endian, left-padded to width bytes. Throws if the value does not fit.
Bytes to_fixed_bytes(const BigInt& value, std::size_t width);
BigInt from_bytes(std::span<const std::uint8_t> data);

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Length-prefixed canonical encoding used for hashing and for wire formats.
class ByteWriter {
 public:
  ByteWriter& u32(std::uint32_t v);
  ByteWriter& u64(std::uint64_t v);
  ByteWriter& i64(std::int64_t v) { return u64(static_cast<std::uint64_t>(v)); }
  ByteWriter& str(std::string_view s);
  ByteWriter& big(const BigInt& v, std::size_t width);
  ByteWriter& raw(std::span<const std::uint8_t> data);

  const Bytes& bytes() const noexcept { return out_; }
  Bytes take() noexcept { return std::move(out_); }
  Digest digest() const { return sha256(out_); }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_{data} {}

  std::uint32_t u32();
  std::uint64_t u64();
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  std::string str(std::size_t max_length = 4096);
  BigInt big(std::size_t width);
  bool done() const noexcept { return pos_ == data_.size(); }

 private:
  std::span<const std::uint8_t> take(std::size_t n);

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace mscsim::km
