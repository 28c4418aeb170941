// Midori64: 16 nibble cells, high nibble of each byte first. Key material is
// K0 || K1 (32 cells); the whitening key K0 ^ K1 is formed in the data path.

#include "builder.hpp"

namespace projgc::spn::detail {

namespace {

constexpr uint16_t kBeta[15] = {0x15b3, 0x78c0, 0xa435, 0x6213, 0x104f, 0xd170, 0x0266, 0x0bcc,
                                0x9481, 0x40b8, 0x7197, 0x228e, 0x5130, 0xf8ca, 0xdf90};
constexpr int kShuffle[16] = {0, 10, 5, 15, 14, 4, 11, 1, 9, 3, 12, 6, 7, 13, 2, 8};

}  // namespace

std::vector<uint64_t> material_midori(const PrimitiveInfo&, const Bytes& key, unsigned) {
  return to_cells(key, 4, 32, CellOrder::NibblesMsb);
}

void build_midori(Ctx& ctx) {
  CircuitBuilder& b = ctx.b;
  Wires k;
  if (ctx.in_circuit())
    for (unsigned c = 0; c < 32; ++c) k.push_back(ctx.key_nibble(c));
  else
    k = ctx.material(32, 4);

  ctx.category(Category::DataPath);
  const SboxAsset& sb = sbox("midori_sb0");
  Wires wk(16);
  for (int i = 0; i < 16; ++i) wk[i] = b.add_xor(k[i], k[16 + i]);
  Wires s = ctx.block_cells();
  for (int i = 0; i < 16; ++i) s[i] = b.add_xor(s[i], wk[i]);
  for (int r = 0; r < 15; ++r) {
    for (auto& v : s) v = ctx.sbox(v, sb);
    s = permute(s, kShuffle);
    Wires m(16);
    for (int c = 0; c < 4; ++c)
      for (int j = 0; j < 4; ++j) {
        const WireId w[] = {s[4 * c + (j + 1) % 4], s[4 * c + (j + 2) % 4], s[4 * c + (j + 3) % 4]};
        m[4 * c + j] = b.xor_all(w);
      }
    for (int i = 0; i < 16; ++i)
      s[i] = ctx.xor_const(b.add_xor(m[i], k[16 * (r % 2) + i]), (kBeta[r] >> (15 - i)) & 1);
  }
  for (int i = 0; i < 16; ++i) s[i] = b.add_xor(ctx.sbox(s[i], sb), wk[i]);
  ctx.outputs(s);
}

}  // namespace projgc::spn::detail
