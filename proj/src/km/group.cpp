#include "mscsim/km/group.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/miller_rabin.hpp>

namespace mscsim::km {
namespace {

constexpr const char* kBuiltinP =
    "b8f8ee2e9fec2a70a05fd0859cf3227678a8cb67d7a99bc23a7d5b9f1c2f8686a2f5c0578f5a8b6f364435cc00537676"
    "0c5ae9b83bb454f4126d2060072ac851155622744a6b7a051a177d62397bcdb22f1effc473955f169b2c8a1dec179e01"
    "937d1596b90b3803ece453a645e199ff740ed97d760f4063b9f066bbbde97b1ef0efbfbb151b90a1b17eb74b8f1d1747"
    "9ba3845c69569a4915cc3aae096dd4d70f177d24ef952c202c8a89bd50ff71d15559a31f3ed698fc4ea25a68e0d6ef7d"
    "20a1cc9c40765b5dc9196f05613d39818e13ef8f6ed432d8683a646aff30e275faa65a467462e8804eb3b84d8e4270e6"
    "39b04af5a101372c600b0cf9552b5ba9";
constexpr const char* kBuiltinQ = "87aa87fb54f5fc39d4408f1ee017cd95bec25356cfb060ad521c35e1c2ea4133";
constexpr const char* kBuiltinG =
    "14d2487d7879e7bdb5e6739ce0f33d4193fd77f8cd4afa30f5cfb25d3e0ea6c070271ef70c3fb03a820587ff893bcfb1"
    "9b948cbd8eadde4e8afe48019d93c2a371d71e68f37bcea74c910e6cd848f919f122b010992d7e4c4659b5c4554ddaab"
    "982aaeaed0d680bdec09f051955633bf704c78a7532acd7d628eb5945c97897976d0d3939afa0ccbf04504b50ed188f6"
    "c8b9cd3699c667f31bfe5027e4f6880c909f81ee8ed3176791386d877a488020f1ee6fd00b78e6bf1289b6324e10bce4"
    "48c67a48f18fab73c4055abccd360f7ad4884be4e00b5d7dd8c6f627b85f136a6eebbe5f291672de90e564a9202deb0c"
    "0b287eda1d7a11e7bdeb2acb9cb3a80d";

BigInt parse_hex(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("group params: empty value");
  for (char c : s) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("group params: not a hex number: " + std::string(s));
    }
  }
  return BigInt("0x" + std::string(s));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool probably_prime(const BigInt& n) {
  // Fixed seed: primality is a property of n, the witnesses need not be secret.
  std::mt19937_64 gen(0x6d73632d73696dULL);
  return boost::multiprecision::miller_rabin_test(n, 32, gen);
}

std::size_t byte_width(const BigInt& v) {
  return (msb(v) + 8) / 8;
}

}  // namespace

GroupParams GroupParams::toy() {
  return {BigInt(23), BigInt(11), BigInt(2)};
}

GroupParams GroupParams::builtin() {
  return {parse_hex(kBuiltinP), parse_hex(kBuiltinQ), parse_hex(kBuiltinG)};
}

void GroupParams::validate() const {
  if (p < 5 || q < 2) throw std::invalid_argument("group params: modulus too small");
  if (!probably_prime(p)) throw std::invalid_argument("group params: p is not prime");
  if (!probably_prime(q)) throw std::invalid_argument("group params: q is not prime");
  if ((p - 1) % q != 0) throw std::invalid_argument("group params: q does not divide p-1");
  if (g <= 1 || g >= p) throw std::invalid_argument("group params: generator out of range");
  if (powm(g, q, p) != 1) throw std::invalid_argument("group params: g does not have order q");
}

std::size_t GroupParams::element_bytes() const { return byte_width(p); }
std::size_t GroupParams::scalar_bytes() const { return byte_width(q); }

BigInt GroupParams::exp(const BigInt& e) const { return powm(g, e, p); }

BigInt GroupParams::pow(const BigInt& base, const BigInt& e) const { return powm(base, e, p); }

BigInt GroupParams::mul(const BigInt& a, const BigInt& b) const { return BigInt(a * b % p); }

bool GroupParams::is_element(const BigInt& y) const {
  return y > 1 && y < p && powm(y, q, p) == 1;
}

GroupParams parse_group_params(std::string_view text) {
  std::optional<BigInt> p, q, g;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("group params line " + std::to_string(line_no) + ": expected name = hex");
    }
    const std::string_view name = trim(line.substr(0, eq));
    const BigInt value = parse_hex(trim(line.substr(eq + 1)));
    std::optional<BigInt>* slot = name == "p" ? &p : name == "q" ? &q : name == "g" ? &g : nullptr;
    if (!slot) {
      throw std::invalid_argument("group params line " + std::to_string(line_no) + ": unknown name '" +
                                  std::string(name) + "'");
    }
    if (slot->has_value()) {
      throw std::invalid_argument("group params line " + std::to_string(line_no) + ": duplicate '" +
                                  std::string(name) + "'");
    }
    *slot = value;
  }
  if (!p || !q || !g) throw std::invalid_argument("group params: p, q and g are all required");
  GroupParams out{*p, *q, *g};
  out.validate();
  return out;
}

GroupParams load_group_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("group params: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_group_params(ss.str());
}

std::string format_group_params(const GroupParams& params) {
  auto hex = [](const BigInt& v) {
    std::string s = v.str(0, std::ios_base::hex);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  return "p = " + hex(params.p) + "\nq = " + hex(params.q) + "\ng = " + hex(params.g) + "\n";
}

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

BigInt inverse_mod_prime(const BigInt& a, const BigInt& q) {
  const BigInt r = mod(a, q);
  if (r == 0) throw std::domain_error("inverse_mod_prime: zero has no inverse");
  return powm(r, q - 2, q);
}

BigInt random_scalar(const GroupParams& params, sim::RandomStream& rng) {
  // 64 extra bits make the modulo bias negligible.
  Bytes buf(params.scalar_bytes() + 8);
  for (auto& b : buf) b = rng.byte();
  return mod(from_bytes(buf), params.q - 1) + 1;
}

KeyPair KeyPair::generate(const GroupParams& params, sim::RandomStream& rng) {
  KeyPair kp;
  kp.secret = random_scalar(params, rng);
  kp.public_key = params.exp(kp.secret);
  return kp;
}

}  // namespace mscsim::km
