// CRAFT. Nibble cells, high nibble first. Key material is K0 || K1; the tweak
// is a garbler input and the four tweakeys are formed by XOR in the data path.

#include "builder.hpp"

namespace projgc::spn::detail {

namespace {

constexpr int kPn[16] = {15, 12, 13, 14, 10, 9, 8, 11, 6, 5, 4, 7, 1, 2, 3, 0};
constexpr int kQ[16] = {12, 10, 15, 5, 14, 8, 9, 2, 11, 3, 7, 4, 6, 0, 1, 13};

}  // namespace

std::vector<uint64_t> material_craft(const PrimitiveInfo&, const Bytes& key, unsigned) {
  return to_cells(key, 4, 32, CellOrder::NibblesMsb);
}

void build_craft(Ctx& ctx) {
  CircuitBuilder& b = ctx.b;
  Wires k, t;
  if (ctx.in_circuit()) {
    for (unsigned c = 0; c < 32; ++c) k.push_back(ctx.key_nibble(c));
    t = ctx.tweak_from_bits();
  } else {
    k = ctx.material(32, 4);
    t = ctx.tweak_cells();
  }

  ctx.category(Category::KeySchedule);
  const Wires qt = permute(t, kQ);
  Wires tk[4];
  for (int i = 0; i < 16; ++i) {
    tk[0].push_back(b.add_xor(k[i], t[i]));
    tk[1].push_back(b.add_xor(k[16 + i], t[i]));
    tk[2].push_back(b.add_xor(k[i], qt[i]));
    tk[3].push_back(b.add_xor(k[16 + i], qt[i]));
  }

  ctx.category(Category::DataPath);
  const SboxAsset& sb = sbox("midori_sb0");
  Wires s = ctx.block_cells();
  unsigned a = 1, c = 1;
  for (int r = 0; r < 32; ++r) {
    for (int j = 0; j < 4; ++j) {
      const WireId w[] = {s[j], s[j + 8], s[j + 12]};
      s[j] = b.xor_all(w);
      s[j + 4] = b.add_xor(s[j + 4], s[j + 12]);
    }
    s[4] = ctx.xor_const(s[4], a);
    s[5] = ctx.xor_const(s[5], c);
    a = (a >> 1) | ((((a >> 1) ^ a) & 1) << 3);
    c = (c >> 1) | ((((c >> 1) ^ c) & 1) << 2);
    for (int i = 0; i < 16; ++i) s[i] = b.add_xor(s[i], tk[r % 4][i]);
    if (r == 31) break;
    s = permute(s, kPn);
    for (auto& v : s) v = ctx.sbox(v, sb);
  }
  ctx.outputs(s);
}

}  // namespace projgc::spn::detail
