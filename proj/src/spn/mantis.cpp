// MANTIS_r. Cells are nibbles, high nibble first. The expanded key
// k0 || k0' || k1 with k0' = (k0 >>> 1) ^ (k0 >> 63) is built on single-bit
// wires and then composed, 48 cells in total. The tweak is a garbler input.

#include "builder.hpp"

namespace projgc::spn::detail {

namespace {

constexpr uint64_t kRc[8] = {0x13198a2e03707344, 0xa4093822299f31d0, 0x082efa98ec4e6c89,
                             0x452821e638d01377, 0xbe5466cf34e90c6c, 0xc0ac29b7c97c50dd,
                             0x3f84d5b5b5470917, 0x9216d5d98979fb1b};
constexpr uint64_t kAlpha = 0x243f6a8885a308d3;
constexpr int kP[16] = {0, 11, 6, 13, 10, 1, 12, 7, 5, 14, 3, 8, 15, 4, 9, 2};
constexpr int kH[16] = {6, 5, 14, 15, 0, 1, 2, 3, 7, 12, 13, 4, 8, 9, 10, 11};

std::array<int, 16> inverse(const int* p) {
  std::array<int, 16> q{};
  for (int i = 0; i < 16; ++i) q[p[i]] = i;
  return q;
}

uint64_t nib(uint64_t v, int i) { return (v >> (60 - 4 * i)) & 0xf; }

uint64_t half(const Bytes& key, int h) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | key[8 * h + i];
  return v;
}

}  // namespace

std::vector<uint64_t> material_mantis(const PrimitiveInfo&, const Bytes& key, unsigned) {
  uint64_t k0 = half(key, 0), k1 = half(key, 1);
  uint64_t k0p = ((k0 >> 1) | (k0 << 63)) ^ (k0 >> 63);
  std::vector<uint64_t> m;
  for (uint64_t v : {k0, k0p, k1})
    for (int i = 0; i < 16; ++i) m.push_back(nib(v, i));
  return m;
}

void build_mantis(Ctx& ctx) {
  CircuitBuilder& b = ctx.b;
  Wires k;
  if (ctx.in_circuit()) {
    const Wires& kb = ctx.key_bits();
    // Bit p (p = 0 least significant) of key half h.
    auto bit = [&](int h, int p) { return kb[8 * (8 * h + 7 - p / 8) + p % 8]; };
    ctx.category(Category::KeySchedule);
    Wires k0(64), k0p(64), k1(64);
    for (int p = 0; p < 64; ++p) {
      k0[p] = bit(0, p);
      k1[p] = bit(1, p);
      k0p[p] = bit(0, (p + 1) % 64);
    }
    k0p[0] = b.add_xor(k0p[0], k0[63]);
    for (const Wires* v : {&k0, &k0p, &k1})
      for (int i = 0; i < 16; ++i) {
        const int lo = 60 - 4 * i;
        const WireId w[] = {(*v)[lo], (*v)[lo + 1], (*v)[lo + 2], (*v)[lo + 3]};
        k.push_back(gadget_compose(b, w));
      }
  } else {
    k = ctx.material(48, 4);
  }
  auto key = [&](int part, int i) { return k[16 * part + i]; };

  ctx.category(Category::DataPath);
  const SboxAsset& sb = sbox("midori_sb0");
  Wires t = ctx.tweak_cells();
  Wires s = ctx.block_cells();
  auto sub = [&] {
    for (auto& v : s) v = ctx.sbox(v, sb);
  };
  auto mix = [&] {
    Wires o(16);
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) {
        const WireId w[] = {s[4 * ((i + 1) % 4) + j], s[4 * ((i + 2) % 4) + j], s[4 * ((i + 3) % 4) + j]};
        o[4 * i + j] = b.xor_all(w);
      }
    s = o;
  };
  const auto inv_p = inverse(kP), inv_h = inverse(kH);
  const int r = int(ctx.rounds);

  for (int i = 0; i < 16; ++i) {
    const WireId w[] = {s[i], key(0, i), key(2, i), t[i]};
    s[i] = b.xor_all(w);
  }
  for (int i = 0; i < r; ++i) {
    sub();
    t = permute(t, kH);
    for (int j = 0; j < 16; ++j) {
      const WireId w[] = {s[j], key(2, j), t[j]};
      s[j] = ctx.xor_const(b.xor_all(w), nib(kRc[i], j));
    }
    s = permute(s, kP);
    mix();
  }
  sub();
  mix();
  sub();
  for (int i = r - 1; i >= 0; --i) {
    mix();
    s = permute(s, inv_p);
    for (int j = 0; j < 16; ++j) {
      const WireId w[] = {s[j], key(2, j), t[j]};
      s[j] = ctx.xor_const(b.xor_all(w), nib(kAlpha ^ kRc[i], j));
    }
    sub();
    t = permute(t, inv_h);
  }
  for (int i = 0; i < 16; ++i) {
    const WireId w[] = {s[i], key(1, i), key(2, i), t[i]};
    s[i] = ctx.xor_const(b.xor_all(w), nib(kAlpha, i));
  }
  ctx.outputs(s);
}

}  // namespace projgc::spn::detail
