#include "mscsim/km/bytes.hpp"


#include <openssl/evp.h>

namespace mscsim::km {

Digest sha256(std::span<const std::uint8_t> data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("sha256: EVP_Digest failed");
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes to_fixed_bytes(const BigInt& value, std::size_t width) {
  if (value < 0) throw std::invalid_argument("to_fixed_bytes: negative value");
  const mpz_srcptr z = value.backend().data();
  Bytes minimal((mpz_sizeinbase(z, 2) + 7) / 8);
  std::size_t written = 0;
  if (value != 0) mpz_export(minimal.data(), &written, 1, 1, 1, 0, z);
  minimal.resize(written);
  if (minimal.size() > width) throw std::invalid_argument("to_fixed_bytes: value wider than field");
  Bytes out(width - minimal.size(), 0);
  out.insert(out.end(), minimal.begin(), minimal.end());
  return out;
}

BigInt from_bytes(std::span<const std::uint8_t> data) {
  BigInt v = 0;
  if (!data.empty()) mpz_import(v.backend().data(), data.size(), 1, 1, 1, 0, data.data());
  return v;
}

ByteWriter& ByteWriter::u32(std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  return *this;
}

ByteWriter& ByteWriter::u64(std::uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  return *this;
}

ByteWriter& ByteWriter::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  out_.insert(out_.end(), s.begin(), s.end());
  return *this;
}

ByteWriter& ByteWriter::big(const BigInt& v, std::size_t width) {
  const Bytes b = to_fixed_bytes(v, width);
  out_.insert(out_.end(), b.begin(), b.end());
  return *this;
}

ByteWriter& ByteWriter::raw(std::span<const std::uint8_t> data) {
  out_.insert(out_.end(), data.begin(), data.end());
  return *this;
}

std::span<const std::uint8_t> ByteReader::take(std::size_t n) {
  if (n > data_.size() - pos_) throw DecodeError("ByteReader: truncated input");
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint32_t ByteReader::u32() {
  std::uint32_t v = 0;
  for (std::uint8_t b : take(4)) v = (v << 8) | b;
  return v;
}

std::uint64_t ByteReader::u64() {
  std::uint64_t v = 0;
  for (std::uint8_t b : take(8)) v = (v << 8) | b;
  return v;
}

std::string ByteReader::str(std::size_t max_length) {
  const std::uint32_t n = u32();
  if (n > max_length) throw DecodeError("ByteReader: string too long");
  auto bytes = take(n);
  return std::string(bytes.begin(), bytes.end());
}

BigInt ByteReader::big(std::size_t width) {
  return from_bytes(take(width));
}

}  // namespace mscsim::km
