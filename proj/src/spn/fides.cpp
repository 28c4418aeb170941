// Fides-80/96 permutation rounds on a 4 x 8 grid of 5- or 6-bit cells
// (row r, column c at cell 8r + c). The state arrives as single bits and is
// composed in the setup phase. Round: S-box layer, row rotations by 0/1/2/7,
// a binary column mix, and constants in cells 0 and 9.

#include "builder.hpp"

namespace projgc::spn::detail {

void build_fides(Ctx& ctx) {
  CircuitBuilder& b = ctx.b;
  const unsigned n = ctx.info.cell_bits;
  const SboxAsset& sb = sbox(n == 5 ? "fides5" : "fides6");
  static constexpr int kShift[4] = {0, 1, 2, 7};
  static constexpr int kMix[4][4] = {{1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}, {0, 1, 1, 1}};
  const uint64_t mask = (uint64_t(1) << n) - 1;

  Wires s = ctx.block_from_bits();
  ctx.category(Category::DataPath);
  for (unsigned r = 0; r < ctx.rounds; ++r) {
    for (auto& v : s) v = ctx.sbox(v, sb);
    Wires t(32);
    for (int row = 0; row < 4; ++row)
      for (int c = 0; c < 8; ++c) t[8 * row + c] = s[8 * row + (c + kShift[row]) % 8];
    for (int c = 0; c < 8; ++c)
      for (int row = 0; row < 4; ++row) {
        Wires w;
        for (int j = 0; j < 4; ++j)
          if (kMix[row][j]) w.push_back(t[8 * j + c]);
        s[8 * row + c] = b.xor_all(w);
      }
    s[0] = ctx.xor_const(s[0], (r + 1) & mask);
    s[9] = ctx.xor_const(s[9], (3 * r + 5) & mask);
  }
  ctx.outputs(s);
}

}  // namespace projgc::spn::detail
