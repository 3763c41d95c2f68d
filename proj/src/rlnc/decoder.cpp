#include "mscsim/rlnc/decoder.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "mscsim/gf/field.hpp"

namespace mscsim::rlnc {

Decoder::Decoder(GenerationId generation_id, std::size_t generation_size,
                 std::size_t payload_length, const gf::KernelSet& kernels)
    : generation_id_{generation_id},
      g_{generation_size},
      payload_length_{payload_length},
      width_{generation_size + payload_length},
      kernels_{&kernels},
      row_of_pivot_(generation_size, -1) {
  if (g_ == 0) throw std::invalid_argument("Decoder: generation size must be >= 1");
  rows_.reserve(g_ * width_);
  pivot_of_row_.reserve(g_);
}

void Decoder::check_shape(const CodedPacket& pkt) const {
  if (pkt.generation_id != generation_id_) {
    throw std::invalid_argument("Decoder: packet for generation " +
                                std::to_string(pkt.generation_id) + " fed to decoder for " +
                                std::to_string(generation_id_));
  }
  if (pkt.coeffs.size() != g_ || pkt.payload.size() != payload_length_) {
    throw std::invalid_argument("Decoder: packet shape does not match the generation");
  }
}

bool Decoder::is_innovative(std::span<const std::uint8_t> coeffs) const {
  if (coeffs.size() != g_) throw std::invalid_argument("Decoder: coefficient vector length");
  if (decodable()) return false;
  Symbols w(coeffs.begin(), coeffs.end());
  // Stored rows are zero in every other pivot column, so the elimination
  // factor for row r is simply the incoming coefficient at its pivot.
  for (std::size_t r = 0; r < rank(); ++r) {
    kernels_->mul_add(w.data(), row(r), coeffs[pivot_of_row_[r]], g_);
  }
  return std::any_of(w.begin(), w.end(), [](std::uint8_t c) { return c != 0; });
}

bool Decoder::ingest(const CodedPacket& pkt) {
  check_shape(pkt);
  if (decodable()) return false;

  // Coefficient-only pass first; payload work is spent only on innovative packets.
  const std::size_t r0 = rank();
  Symbols w(pkt.coeffs);
  for (std::size_t r = 0; r < r0; ++r) {
    kernels_->mul_add(w.data(), row(r), pkt.coeffs[pivot_of_row_[r]], g_);
  }
  const auto lead = std::find_if(w.begin(), w.end(), [](std::uint8_t c) { return c != 0; });
  if (lead == w.end()) return false;
  const auto pivot = static_cast<std::size_t>(lead - w.begin());

  rows_.resize((r0 + 1) * width_);
  std::uint8_t* fresh = row(r0);
  std::memcpy(fresh, w.data(), g_);
  std::memcpy(fresh + g_, pkt.payload.data(), payload_length_);
  for (std::size_t r = 0; r < r0; ++r) {
    kernels_->mul_add(fresh + g_, row(r) + g_, pkt.coeffs[pivot_of_row_[r]], payload_length_);
  }
  kernels_->scale(fresh, gf::inv(fresh[pivot]), width_);

  // Back-substitute so the new pivot column is clear in every older row.
  for (std::size_t r = 0; r < r0; ++r) {
    std::uint8_t* old = row(r);
    const std::uint8_t c = old[pivot];
    if (c != 0) kernels_->mul_add(old, fresh, c, width_);
  }

  pivot_of_row_.push_back(pivot);
  row_of_pivot_[pivot] = static_cast<long>(r0);
  return true;
}

std::vector<SourcePacket> Decoder::decode() const {
  if (!decodable()) {
    throw NotDecodable("Decoder: rank " + std::to_string(rank()) + " < generation size " +
                       std::to_string(g_));
  }
  std::vector<SourcePacket> out(g_);
  for (std::size_t col = 0; col < g_; ++col) {
    const std::uint8_t* src = row(static_cast<std::size_t>(row_of_pivot_[col])) + g_;
    out[col].index = col;
    out[col].payload.assign(src, src + payload_length_);
  }
  return out;
}

CodedPacket Decoder::recode(sim::RandomStream& rng) const {
  if (rank() == 0) throw std::logic_error("Decoder::recode: nothing received yet");
  const Symbols weights = draw_coeffs(rng, rank());
  std::vector<std::uint8_t> acc(width_, 0);
  for (std::size_t r = 0; r < rank(); ++r) {
    kernels_->mul_add(acc.data(), row(r), weights[r], width_);
  }
  return CodedPacket{generation_id_, Symbols(acc.begin(), acc.begin() + static_cast<long>(g_)),
                     Symbols(acc.begin() + static_cast<long>(g_), acc.end())};
}

std::vector<CodedPacket> Decoder::basis() const {
  std::vector<CodedPacket> out;
  out.reserve(rank());
  for (std::size_t r = 0; r < rank(); ++r) {
    const std::uint8_t* p = row(r);
    out.push_back({generation_id_, Symbols(p, p + g_), Symbols(p + g_, p + width_)});
  }
  return out;
}

}  // namespace mscsim::rlnc
