// AES-128. State and round keys are 16 byte wires in the standard column-major
// order (cell 4c + r = row r of column c). MixColumns is rewritten over S-box
// outputs and their doublings so only binary matrices remain.

#include <array>

#include "builder.hpp"
#include "projgc/error.hpp"
#include "projgc/spn/gf.hpp"

namespace projgc::spn {

namespace {

const Table& doubling_table() {
  static const Table t = make_table(tabulate(8, [](uint32_t x) { return gf256_double(uint8_t(x)); }));
  return t;
}

std::vector<WireId> sub_shift(CircuitBuilder& b, std::span<const WireId> s) {
  const SboxAsset& sb = sbox("aes");
  std::vector<WireId> t(16);
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) t[4 * c + r] = b.add_proj(s[4 * ((c + r) % 4) + r], sb.shared, 8);
  return t;
}

}  // namespace

std::vector<WireId> mixcolumns_doubling_rewrite(CircuitBuilder& b, std::span<const WireId> s) {
  if (s.size() != 16) throw Error("MixColumns expects 16 cells");
  std::vector<WireId> f(16), o(16);
  for (int i = 0; i < 16; ++i) f[i] = b.add_proj(s[i], doubling_table(), 8);
  for (int c = 0; c < 4; ++c) {
    auto at = [&](const std::vector<WireId>& v, int r) { return v[4 * c + r % 4]; };
    auto sv = [&](int r) { return s[4 * c + r % 4]; };
    for (int r = 0; r < 4; ++r) {
      // Row r: s[r+1] ^ s[r+2] ^ s[r+3] ^ f(s[r]) ^ f(s[r+1]), since s ^ f(s) = 3s.
      const WireId w[] = {sv(r + 1), sv(r + 2), sv(r + 3), at(f, r), at(f, r + 1)};
      o[4 * c + r] = b.xor_all(w);
    }
  }
  return o;
}

std::vector<WireId> aes_round(CircuitBuilder& b, std::span<const WireId> state,
                              std::span<const WireId> round_key) {
  if (state.size() != 16 || round_key.size() != 16) throw Error("AES round expects 16 cells");
  auto m = mixcolumns_doubling_rewrite(b, sub_shift(b, state));
  for (int i = 0; i < 16; ++i) m[i] = b.add_xor(m[i], round_key[i]);
  return m;
}

namespace detail {

namespace {

constexpr uint8_t kRcon[10] = {0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1b, 0x36};

}  // namespace

std::vector<uint64_t> material_aes(const PrimitiveInfo&, const Bytes& key, unsigned) {
  const auto& sb = sbox("aes").table;
  std::vector<uint64_t> w(176);
  for (int i = 0; i < 16; ++i) w[i] = key[i];
  for (int i = 4; i < 44; ++i) {
    uint64_t t[4] = {w[4 * (i - 1)], w[4 * (i - 1) + 1], w[4 * (i - 1) + 2], w[4 * (i - 1) + 3]};
    if (i % 4 == 0) {
      uint64_t r[4] = {sb[t[1]] ^ kRcon[i / 4 - 1], sb[t[2]], sb[t[3]], sb[t[0]]};
      std::copy(r, r + 4, t);
    }
    for (int j = 0; j < 4; ++j) w[4 * i + j] = w[4 * (i - 4) + j] ^ t[j];
  }
  return w;
}

void build_aes(Ctx& ctx) {
  CircuitBuilder& b = ctx.b;
  Wires rk;
  if (ctx.in_circuit()) {
    for (unsigned i = 0; i < 16; ++i) rk.push_back(ctx.key_byte(i));
    ctx.category(Category::KeySchedule);
    const SboxAsset& sb = sbox("aes");
    // rcon_1 is a constant; later round constants come from doubling it in the circuit.
    WireId rcon = b.add_const(kRcon[0], 8);
    for (int i = 4; i < 44; ++i) {
      WireId t[4] = {rk[4 * (i - 1)], rk[4 * (i - 1) + 1], rk[4 * (i - 1) + 2], rk[4 * (i - 1) + 3]};
      if (i % 4 == 0) {
        if (i > 4) rcon = b.add_proj(rcon, doubling_table(), 8);
        WireId r[4] = {b.add_xor(b.add_proj(t[1], sb.shared, 8), rcon), b.add_proj(t[2], sb.shared, 8),
                       b.add_proj(t[3], sb.shared, 8), b.add_proj(t[0], sb.shared, 8)};
        std::copy(r, r + 4, t);
      }
      for (int j = 0; j < 4; ++j) rk.push_back(b.add_xor(rk[4 * (i - 4) + j], t[j]));
    }
  } else {
    rk = ctx.material(176, 8);
  }

  ctx.category(Category::DataPath);
  Wires s = ctx.block_cells();
  for (int i = 0; i < 16; ++i) s[i] = b.add_xor(s[i], rk[i]);
  for (int r = 1; r < 10; ++r) s = aes_round(b, s, std::span(rk).subspan(16 * r, 16));
  s = sub_shift(b, s);
  // The last round has no MixColumns; its doublings are still emitted so every
  // round costs the same 2 x 16 projections.
  mixcolumns_doubling_rewrite(b, s);
  for (int i = 0; i < 16; ++i) s[i] = b.add_xor(s[i], rk[160 + i]);
  ctx.outputs(s);
}

}  // namespace detail

}  // namespace projgc::spn
