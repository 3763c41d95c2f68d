#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mscsim/rlnc/coding.hpp"

namespace mscsim::rlnc {

class NotDecodable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Online Gaussian-elimination decoder for one generation.
///
/// Received rows are kept in reduced row echelon form: every stored row has a
/// leading 1 in its pivot column and zeros in every other pivot column. Each
/// row is stored contiguously as [coefficients | payload] so one region
/// operation updates both.
class Decoder {
 public:
  Decoder(GenerationId generation_id, std::size_t generation_size, std::size_t payload_length,
          const gf::KernelSet& kernels = gf::active_kernels());

  /// Adds pkt and returns true iff it increased the rank. Throws
  /// std::invalid_argument on a generation or shape mismatch.
  bool ingest(const CodedPacket& pkt);

  /// True iff coeffs lies outside the span of the stored rows.
  bool is_innovative(std::span<const std::uint8_t> coeffs) const;

  /// Throws NotDecodable while rank() < generation size.
  std::vector<SourcePacket> decode() const;

  /// Random combination of the stored rows, i.e. of everything received so far.
  /// Throws std::logic_error when nothing has been received.
  CodedPacket recode(sim::RandomStream& rng) const;

  /// The stored rows as coded packets (same span as everything received).
  std::vector<CodedPacket> basis() const;

  GenerationId generation_id() const noexcept { return generation_id_; }
  std::size_t generation_size() const noexcept { return g_; }
  std::size_t payload_length() const noexcept { return payload_length_; }
  std::size_t rank() const noexcept { return pivot_of_row_.size(); }
  bool decodable() const noexcept { return rank() == g_; }

 private:
  std::uint8_t* row(std::size_t r) noexcept { return rows_.data() + r * width_; }
  const std::uint8_t* row(std::size_t r) const noexcept { return rows_.data() + r * width_; }
  void check_shape(const CodedPacket& pkt) const;

  GenerationId generation_id_;
  std::size_t g_;
  std::size_t payload_length_;
  std::size_t width_;
  const gf::KernelSet* kernels_;
  std::vector<std::uint8_t> rows_;         // rank() rows of width_
  std::vector<std::size_t> pivot_of_row_;  // pivot column of each stored row
  std::vector<long> row_of_pivot_;         // -1 when the column has no pivot
};

}  // namespace mscsim::rlnc
