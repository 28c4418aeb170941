// SKINNY-64 / SKINNY-128 with one, two or three tweakey words, all treated as key.
// Key material is the per-round subkey: cells 0..7 of TK1 ^ TK2 ^ TK3, for every round.

#include "builder.hpp"
#include "projgc/spn/gf.hpp"

namespace projgc::spn::detail {

namespace {

constexpr int kShiftRows[16] = {0, 1, 2, 3, 7, 4, 5, 6, 10, 11, 8, 9, 13, 14, 15, 12};
constexpr int kTweakeyPerm[16] = {9, 15, 8, 13, 10, 14, 12, 11, 0, 1, 2, 3, 4, 5, 6, 7};

uint32_t lfsr2(unsigned bits, uint32_t x) {
  return bits == 8 ? ((x << 1) & 0xff) | (((x >> 7) ^ (x >> 5)) & 1)
                   : ((x << 1) & 0xe) | (((x >> 3) ^ (x >> 2)) & 1);
}

uint32_t lfsr3(unsigned bits, uint32_t x) {
  return bits == 8 ? (x >> 1) | (((x ^ (x >> 6)) & 1) << 7) : (x >> 1) | (((x ^ (x >> 3)) & 1) << 3);
}

unsigned words(const PrimitiveInfo& info) { return info.key_bytes / info.block_bytes; }

}  // namespace

std::vector<uint64_t> material_skinny(const PrimitiveInfo& info, const Bytes& key, unsigned rounds) {
  const unsigned z = words(info), n = info.cell_bits;
  std::vector<std::vector<uint64_t>> tk;
  for (unsigned t = 0; t < z; ++t) {
    Bytes part(key.begin() + t * info.block_bytes, key.begin() + (t + 1) * info.block_bytes);
    tk.push_back(to_cells(part, n, 16, info.order));
  }
  std::vector<uint64_t> m;
  for (unsigned r = 0; r < rounds; ++r) {
    for (int i = 0; i < 8; ++i) {
      uint64_t v = 0;
      for (unsigned t = 0; t < z; ++t) v ^= tk[t][i];
      m.push_back(v);
    }
    for (unsigned t = 0; t < z; ++t) {
      std::vector<uint64_t> p(16);
      for (int i = 0; i < 16; ++i) p[i] = tk[t][kTweakeyPerm[i]];
      tk[t] = p;
    }
    for (int i = 0; i < 8; ++i) {
      if (z >= 2) tk[1][i] = lfsr2(n, uint32_t(tk[1][i]));
      if (z >= 3) tk[2][i] = lfsr3(n, uint32_t(tk[2][i]));
    }
  }
  return m;
}

void build_skinny(Ctx& ctx) {
  CircuitBuilder& b = ctx.b;
  const PrimitiveInfo& info = ctx.info;
  const unsigned z = words(info), n = info.cell_bits;
  const unsigned rounds = ctx.rounds;

  Wires rtk;
  if (ctx.in_circuit()) {
    std::vector<Wires> tk(z);
    for (unsigned t = 0; t < z; ++t)
      for (unsigned i = 0; i < 16; ++i)
        tk[t].push_back(n == 8 ? ctx.key_byte(t * 16 + i) : ctx.key_nibble(t * 16 + i));
    ctx.category(Category::KeySchedule);
    const Table l2 = make_table(tabulate(n, [n](uint32_t x) { return lfsr2(n, x); }));
    const Table l3 = make_table(tabulate(n, [n](uint32_t x) { return lfsr3(n, x); }));
    for (unsigned r = 0; r < rounds; ++r) {
      for (int i = 0; i < 8; ++i) {
        Wires w;
        for (unsigned t = 0; t < z; ++t) w.push_back(tk[t][i]);
        rtk.push_back(b.xor_all(w));
      }
      if (r + 1 == rounds) break;
      for (unsigned t = 0; t < z; ++t) tk[t] = permute(tk[t], kTweakeyPerm);
      for (int i = 0; i < 8; ++i) {
        if (z >= 2) tk[1][i] = b.add_proj(tk[1][i], l2, n);
        if (z >= 3) tk[2][i] = b.add_proj(tk[2][i], l3, n);
      }
    }
  } else {
    rtk = ctx.material(8 * rounds, n);
  }

  ctx.category(Category::DataPath);
  const SboxAsset& sb = sbox(n == 8 ? "skinny8" : "skinny4");
  Wires s = ctx.block_cells();
  uint32_t rc = 0;
  for (unsigned r = 0; r < rounds; ++r) {
    for (auto& v : s) v = ctx.sbox(v, sb);
    rc = ((rc << 1) & 0x3f) | (((rc >> 5) ^ (rc >> 4) ^ 1) & 1);
    s[0] = ctx.xor_const(s[0], rc & 0xf);
    s[4] = ctx.xor_const(s[4], rc >> 4);
    s[8] = ctx.xor_const(s[8], 2);
    for (int i = 0; i < 8; ++i) s[i] = b.add_xor(s[i], rtk[8 * r + i]);
    s = permute(s, kShiftRows);
    for (int j = 0; j < 4; ++j) {
      WireId a = s[j], bb = s[4 + j], c = s[8 + j], d = s[12 + j];
      bb = b.add_xor(bb, c);
      c = b.add_xor(c, a);
      d = b.add_xor(d, c);
      s[j] = d;
      s[4 + j] = a;
      s[8 + j] = bb;
      s[12 + j] = c;
    }
  }
  ctx.outputs(s);
}

}  // namespace projgc::spn::detail
