#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "mscsim/gf/field.hpp"
#include "mscsim/gf/kernels.hpp"
#include "oracles.hpp"

using namespace mscsim;

TEST_SUITE("gf") {

TEST_CASE("worked products and inverses") {
  CHECK(gf::mul(0x02, 0x80) == 0x1D);
  CHECK(gf::inv(0x02) == 0x8E);
  CHECK(gf::mul(0x02, 0x8E) == 0x01);
  CHECK(gf::add(0x53, 0xCA) == (0x53 ^ 0xCA));
  CHECK((gf::FieldElement{0x02} * gf::FieldElement{0x80}).value() == 0x1D);
}

TEST_CASE("multiplication matches shift-and-reduce on every pair") {
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      const auto x = static_cast<std::uint8_t>(a), y = static_cast<std::uint8_t>(b);
      if (gf::mul(x, y) != oracle::gf_mul(x, y)) FAIL("mismatch at " << a << "*" << b);
    }
  }
}

TEST_CASE("every nonzero element inverts, matching extended Euclid") {
  for (unsigned a = 1; a < 256; ++a) {
    const auto x = static_cast<std::uint8_t>(a);
    CHECK(gf::inv(x) == oracle::gf_inv(x));
    CHECK(gf::mul(x, gf::inv(x)) == 1);
  }
  CHECK_THROWS_AS(gf::inv(0), std::domain_error);
  CHECK_THROWS_AS(gf::div(5, 0), std::domain_error);
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(1234);
  auto draw = [&] { return gf::FieldElement{static_cast<std::uint8_t>(rng() & 0xff)}; };
  const gf::FieldElement zero{0}, one{1};
  for (int i = 0; i < 10000; ++i) {
    const auto a = draw(), b = draw(), c = draw();
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a + zero == a);
    REQUIRE(a * one == a);
    REQUIRE(a + a == zero);
    if (!b.is_zero()) REQUIRE((a / b) * b == a);
  }
}

TEST_CASE("scalar kernels agree with element arithmetic") {
  const auto& k = gf::kernels_for(gf::Isa::Scalar);
  std::vector<std::uint8_t> src(300), dst(300), ref(300);
  std::mt19937 rng(9);
  for (unsigned c = 0; c < 256; ++c) {
    for (auto& x : src) x = static_cast<std::uint8_t>(rng());
    for (auto& x : dst) x = static_cast<std::uint8_t>(rng());
    for (std::size_t i = 0; i < ref.size(); ++i) ref[i] = dst[i] ^ oracle::gf_mul(static_cast<std::uint8_t>(c), src[i]);
    k.mul_add(dst.data(), src.data(), static_cast<std::uint8_t>(c), dst.size());
    REQUIRE(dst == ref);
    for (std::size_t i = 0; i < ref.size(); ++i) ref[i] = oracle::gf_mul(static_cast<std::uint8_t>(c), dst[i]);
    k.scale(dst.data(), static_cast<std::uint8_t>(c), dst.size());
    REQUIRE(dst == ref);
  }
}

TEST_CASE("every runnable ISA is byte-identical to scalar") {
  const auto& ref = gf::kernels_for(gf::Isa::Scalar);
  std::mt19937 rng(77);
  const std::size_t lengths[] = {0, 1, 15, 16, 17, 31, 32, 33, 63, 64, 65, 127, 1000, 4099};
  for (gf::Isa isa : gf::available_isas()) {
    CAPTURE(gf::to_string(isa));
    const auto& k = gf::kernels_for(isa);
    CHECK(k.isa == isa);
    for (std::size_t n : lengths) {
      for (std::size_t offset : {0u, 1u, 3u}) {
        std::vector<std::uint8_t> src(n + offset), a(n + offset), b;
        for (auto& x : src) x = static_cast<std::uint8_t>(rng());
        for (auto& x : a) x = static_cast<std::uint8_t>(rng());
        for (unsigned c : {0u, 1u, 2u, 0x1Du, 0x8Eu, 0xFFu, static_cast<unsigned>(rng() & 0xff)}) {
          b = a;
          k.mul_add(a.data() + offset, src.data() + offset, static_cast<std::uint8_t>(c), n);
          ref.mul_add(b.data() + offset, src.data() + offset, static_cast<std::uint8_t>(c), n);
          REQUIRE(a == b);
          k.scale(a.data() + offset, static_cast<std::uint8_t>(c | 1), n);
          ref.scale(b.data() + offset, static_cast<std::uint8_t>(c | 1), n);
          REQUIRE(a == b);
          k.add(a.data() + offset, src.data() + offset, n);
          ref.add(b.data() + offset, src.data() + offset, n);
          REQUIRE(a == b);
        }
      }
    }
  }
}

TEST_CASE("dispatch picks a runnable variant and scalar is always there") {
  const auto isas = gf::available_isas();
  REQUIRE(!isas.empty());
  CHECK(isas.front() == gf::Isa::Scalar);
  CHECK(gf::isa_available(gf::active_kernels().isa));
  if (!gf::isa_available(gf::Isa::Neon)) CHECK_THROWS_AS(gf::kernels_for(gf::Isa::Neon), std::invalid_argument);
}

TEST_CASE("span helpers reject mismatched lengths") {
  std::vector<std::uint8_t> a(4), b(5);
  CHECK_THROWS_AS(gf::region_add(a, b), std::invalid_argument);
  CHECK_THROWS_AS(gf::region_mul_add(a, b, 3), std::invalid_argument);
}

}
