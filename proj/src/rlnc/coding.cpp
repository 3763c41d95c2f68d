#include "mscsim/rlnc/coding.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace mscsim::rlnc {

Generation::Generation(GenerationId id, std::vector<SourcePacket> packets)
    : id_{id}, payload_length_{0}, packets_{std::move(packets)} {
  if (packets_.empty()) throw std::invalid_argument("Generation: size must be >= 1");
  payload_length_ = packets_.front().payload.size();
  for (std::size_t i = 0; i < packets_.size(); ++i) {
    if (packets_[i].index != i) {
      throw std::invalid_argument("Generation: packet " + std::to_string(i) + " has index " +
                                  std::to_string(packets_[i].index));
    }
    if (packets_[i].payload.size() != payload_length_) {
      throw std::invalid_argument("Generation: packets must share one payload length");
    }
  }
}

Generation Generation::random(GenerationId id, std::size_t size, std::size_t payload_length,
                              sim::RandomStream& rng) {
  std::vector<SourcePacket> packets(size);
  for (std::size_t i = 0; i < size; ++i) {
    packets[i].index = i;
    packets[i].payload.resize(payload_length);
    // Eight payload bytes per engine draw.
    for (std::size_t b = 0; b < payload_length; b += 8) {
      std::uint64_t word = rng.next();
      for (std::size_t k = b; k < payload_length && k < b + 8; ++k) {
        packets[i].payload[k] = static_cast<std::uint8_t>(word);
        word >>= 8;
      }
    }
  }
  return Generation(id, std::move(packets));
}

CodedPacket encode(const Generation& gen, std::span<const std::uint8_t> coeffs,
                   const gf::KernelSet& kernels) {
  if (coeffs.size() != gen.size()) {
    throw std::invalid_argument("encode: expected " + std::to_string(gen.size()) +
                                " coefficients, got " + std::to_string(coeffs.size()));
  }
  CodedPacket out{gen.id(), Symbols(coeffs.begin(), coeffs.end()),
                  Symbols(gen.payload_length(), 0)};
  for (std::size_t i = 0; i < gen.size(); ++i) {
    kernels.mul_add(out.payload.data(), gen.packet(i).payload.data(), coeffs[i],
                    gen.payload_length());
  }
  return out;
}

Symbols draw_coeffs(sim::RandomStream& rng, std::size_t g) {
  Symbols out(g);
  for (auto& c : out) c = rng.byte();
  return out;
}

CodedPacket combine(std::span<const CodedPacket> packets, std::span<const std::uint8_t> weights,
                    const gf::KernelSet& kernels) {
  if (packets.empty()) throw std::invalid_argument("combine: no input packets");
  if (weights.size() != packets.size()) throw std::invalid_argument("combine: one weight per packet");
  const CodedPacket& first = packets.front();
  for (const CodedPacket& p : packets) {
    if (p.generation_id != first.generation_id) {
      throw std::invalid_argument("combine: inputs span several generations");
    }
    if (p.coeffs.size() != first.coeffs.size() || p.payload.size() != first.payload.size()) {
      throw std::invalid_argument("combine: inputs differ in shape");
    }
  }
  CodedPacket out{first.generation_id, Symbols(first.coeffs.size(), 0),
                  Symbols(first.payload.size(), 0)};
  for (std::size_t i = 0; i < packets.size(); ++i) {
    kernels.mul_add(out.coeffs.data(), packets[i].coeffs.data(), weights[i], out.coeffs.size());
    kernels.mul_add(out.payload.data(), packets[i].payload.data(), weights[i], out.payload.size());
  }
  return out;
}

CodedPacket recode(std::span<const CodedPacket> received, sim::RandomStream& rng,
                   const gf::KernelSet& kernels) {
  if (received.empty()) throw std::invalid_argument("recode: no input packets");
  const Symbols weights = draw_coeffs(rng, received.size());
  return combine(received, weights, kernels);
}

}  // namespace mscsim::rlnc
