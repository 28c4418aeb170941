// TWINE-80/128. Nibble cells, high nibble first. The key schedule is
// nonlinear (S-boxes on key nibbles), so key material is the full list of
// 36 x 8 round-key nibbles with constants folded in.

#include <algorithm>

#include "builder.hpp"

namespace projgc::spn::detail {

namespace {

constexpr int kPi[16] = {5, 0, 1, 4, 7, 12, 3, 8, 13, 6, 9, 2, 15, 10, 11, 14};
constexpr int kIdx80[8] = {1, 3, 4, 6, 13, 14, 15, 16};
constexpr int kIdx128[8] = {2, 3, 12, 15, 17, 18, 28, 31};

// Runs the schedule over any cell type. `sub_xor(dst, src)` sets dst ^= S(src);
// `add(dst, v)` xors a constant in.
template <class T, class SubXor, class Add>
std::vector<T> schedule(std::vector<T> wk, bool k80, SubXor sub_xor, Add add) {
  const int* idx = k80 ? kIdx80 : kIdx128;
  std::vector<T> rk;
  auto take = [&] {
    for (int j = 0; j < 8; ++j) rk.push_back(wk[idx[j]]);
  };
  take();
  unsigned con = 1;
  for (int i = 1; i < 36; ++i) {
    sub_xor(wk[1], wk[0]);
    sub_xor(wk[4], wk[16]);
    if (!k80) sub_xor(wk[23], wk[30]);
    add(wk[7], con >> 3);
    add(wk[19], con & 7);
    std::swap(wk[0], wk[1]);
    std::swap(wk[1], wk[2]);
    std::swap(wk[2], wk[3]);
    std::rotate(wk.begin(), wk.begin() + 4, wk.end());
    take();
    con <<= 1;
    if (con & 0x40) con ^= 0x43;
  }
  return rk;
}

}  // namespace

std::vector<uint64_t> material_twine(const PrimitiveInfo& info, const Bytes& key, unsigned) {
  const auto& s = sbox("twine").table;
  return schedule(
      to_cells(key, 4, info.key_bytes * 2, CellOrder::NibblesMsb), info.key_bytes == 10,
      [&](uint64_t& d, uint64_t x) { d ^= s[x]; }, [](uint64_t& d, uint64_t v) { d ^= v; });
}

void build_twine(Ctx& ctx) {
  CircuitBuilder& b = ctx.b;
  const SboxAsset& sb = sbox("twine");
  Wires rk;
  if (ctx.in_circuit()) {
    Wires wk;
    for (unsigned c = 0; c < ctx.info.key_bytes * 2; ++c) wk.push_back(ctx.key_nibble(c));
    ctx.category(Category::KeySchedule);
    rk = schedule(
        wk, ctx.info.key_bytes == 10, [&](WireId& d, WireId x) { d = b.add_xor(d, ctx.sbox(x, sb)); },
        [&](WireId& d, uint64_t v) { d = ctx.xor_const(d, v); });
  } else {
    rk = ctx.material(36 * 8, 4);
  }

  ctx.category(Category::DataPath);
  Wires s = ctx.block_cells();
  for (int r = 0; r < 36; ++r) {
    for (int j = 0; j < 8; ++j)
      s[2 * j + 1] = b.add_xor(s[2 * j + 1], ctx.sbox(b.add_xor(s[2 * j], rk[8 * r + j]), sb));
    if (r == 35) break;
    Wires y(16);
    for (int h = 0; h < 16; ++h) y[kPi[h]] = s[h];
    s = y;
  }
  ctx.outputs(s);
}

}  // namespace projgc::spn::detail
