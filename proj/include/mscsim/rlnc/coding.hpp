#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mscsim/gf/kernels.hpp"
#include "mscsim/sim/random.hpp"

namespace mscsim::rlnc {

using Symbols = std::vector<std::uint8_t>;
using GenerationId = std::uint32_t;

struct SourcePacket {
  std::size_t index = 0;
  Symbols payload;

  friend bool operator==(const SourcePacket&, const SourcePacket&) = default;
};

/// g source packets of equal length L, indexed 0..g-1.
class Generation {
 public:
  /// Throws std::invalid_argument unless packets are nonempty, indexed
  /// 0..g-1 in order and share one payload length.
  Generation(GenerationId id, std::vector<SourcePacket> packets);

  /// Payload bytes drawn uniformly from rng.
  static Generation random(GenerationId id, std::size_t size, std::size_t payload_length,
                           sim::RandomStream& rng);

  GenerationId id() const noexcept { return id_; }
  std::size_t size() const noexcept { return packets_.size(); }
  std::size_t payload_length() const noexcept { return payload_length_; }
  const std::vector<SourcePacket>& packets() const noexcept { return packets_; }
  const SourcePacket& packet(std::size_t i) const { return packets_.at(i); }

 private:
  GenerationId id_;
  std::size_t payload_length_;
  std::vector<SourcePacket> packets_;
};

struct CodedPacket {
  GenerationId generation_id = 0;
  Symbols coeffs;   // one per source packet
  Symbols payload;  // sum of coeffs[i] * packets[i]

  friend bool operator==(const CodedPacket&, const CodedPacket&) = default;
};

/// Throws std::invalid_argument if coeffs.size() != gen.size().
CodedPacket encode(const Generation& gen, std::span<const std::uint8_t> coeffs,
                   const gf::KernelSet& kernels = gf::active_kernels());

/// g independent uniform draws over GF(2^8). May be the zero vector.
Symbols draw_coeffs(sim::RandomStream& rng, std::size_t g);

/// Weighted sum of coded packets from one generation.
CodedPacket combine(std::span<const CodedPacket> packets, std::span<const std::uint8_t> weights,
                    const gf::KernelSet& kernels = gf::active_kernels());

/// Random linear combination of the inputs. Throws std::invalid_argument on an
/// empty list, mixed generations, or mismatched shapes.
CodedPacket recode(std::span<const CodedPacket> received, sim::RandomStream& rng,
                   const gf::KernelSet& kernels = gf::active_kernels());

}  // namespace mscsim::rlnc
