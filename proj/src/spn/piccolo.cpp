// Piccolo-80/128. A 16-bit word is four nibble cells, high nibble first. Key
// material is the key as nibbles; round keys are selections of key words with
// the round constants added in the data path.

#include "builder.hpp"
#include "projgc/error.hpp"
#include "projgc/spn/gf.hpp"

namespace projgc::spn {

std::vector<WireId> piccolo_f_prime(CircuitBuilder& b, std::span<const WireId> cells) {
  if (cells.size() != 4) throw Error("F expects 4 cells");
  const SboxAsset& sb = sbox("piccolo");
  static const Table twice = make_table(tabulate(4, [](uint32_t x) { return gf16_mul(2, uint8_t(sbox("piccolo").table[x])); }));
  WireId f[4], g[4];
  for (int i = 0; i < 4; ++i) {
    f[i] = b.add_proj(cells[i], sb.shared, 4);
    g[i] = b.add_proj(cells[i], twice, 4);
  }
  std::vector<WireId> out(4);
  for (int r = 0; r < 4; ++r) {
    // Row (2,3,1,1) rotated: 2S(s_r) ^ 3S(s_{r+1}) ^ S(s_{r+2}) ^ S(s_{r+3}).
    const WireId w[] = {f[(r + 1) % 4], f[(r + 2) % 4], f[(r + 3) % 4], g[r], g[(r + 1) % 4]};
    out[r] = b.add_proj(b.xor_all(w), sb.shared, 4);
  }
  return out;
}

namespace detail {

namespace {

uint32_t con(bool k80, unsigned i) {
  uint32_t c = i + 1;
  uint32_t v = (c << 27) | (c << 17) | (c << 10) | c;
  return v ^ (k80 ? 0x0f1e2d3cu : 0x6547a98bu);
}

// Key word index of every round key rk_0 .. rk_{2r-1}.
std::vector<int> round_key_words(bool k80, unsigned rounds) {
  std::vector<int> w;
  if (k80) {
    for (unsigned i = 0; i < rounds; ++i) {
      switch (i % 5) {
        case 0:
        case 2: w.insert(w.end(), {2, 3}); break;
        case 1:
        case 4: w.insert(w.end(), {0, 1}); break;
        default: w.insert(w.end(), {4, 4}); break;
      }
    }
  } else {
    std::vector<int> kk = {0, 1, 2, 3, 4, 5, 6, 7};
    for (unsigned i = 0; i < 2 * rounds; ++i) {
      if ((i + 2) % 8 == 0) kk = {kk[2], kk[1], kk[6], kk[7], kk[0], kk[3], kk[4], kk[5]};
      w.push_back(kk[(i + 2) % 8]);
    }
  }
  return w;
}

}  // namespace

std::vector<uint64_t> material_piccolo(const PrimitiveInfo& info, const Bytes& key, unsigned) {
  return to_cells(key, 4, info.key_bytes * 2, CellOrder::NibblesMsb);
}

void build_piccolo(Ctx& ctx) {
  CircuitBuilder& b = ctx.b;
  const bool k80 = ctx.info.key_bytes == 10;
  const unsigned nk = ctx.info.key_bytes * 2;
  Wires k;
  if (ctx.in_circuit())
    for (unsigned c = 0; c < nk; ++c) k.push_back(ctx.key_nibble(c));
  else
    k = ctx.material(nk, 4);
  auto word = [&](int i) { return Wires(k.begin() + 4 * i, k.begin() + 4 * i + 4); };
  auto lr = [&](int l, int r) { return Wires{k[4 * l], k[4 * l + 1], k[4 * r + 2], k[4 * r + 3]}; };
  const int pair = k80 ? 3 : 7;
  const Wires wk[4] = {lr(0, 1), lr(1, 0), lr(4, pair), lr(pair, 4)};
  const auto rkw = round_key_words(k80, ctx.rounds);

  ctx.category(Category::DataPath);
  Wires s = ctx.block_cells();
  auto xor_word = [&](int at, const Wires& w) {
    for (int j = 0; j < 4; ++j) s[4 * at + j] = b.add_xor(s[4 * at + j], w[j]);
  };
  xor_word(0, wk[0]);
  xor_word(2, wk[1]);
  for (unsigned i = 0; i < ctx.rounds; ++i) {
    const uint32_t c = con(k80, i);
    for (int h = 0; h < 2; ++h) {
      const uint32_t cw = h ? (c & 0xffff) : (c >> 16);
      auto f = piccolo_f_prime(b, std::span(s).subspan(8 * h, 4));
      const Wires rk = word(rkw[2 * i + h]);
      for (int j = 0; j < 4; ++j) {
        const WireId w[] = {s[8 * h + 4 + j], f[j], rk[j]};
        s[8 * h + 4 + j] = ctx.xor_const(b.xor_all(w), (cw >> (12 - 4 * j)) & 0xf);
      }
    }
    if (i + 1 == ctx.rounds) break;
    // Byte permutation: output byte j takes input byte kRp[j].
    static constexpr int kRp[8] = {2, 7, 4, 1, 6, 3, 0, 5};
    Wires o(16);
    for (int j = 0; j < 8; ++j) {
      o[2 * j] = s[2 * kRp[j]];
      o[2 * j + 1] = s[2 * kRp[j] + 1];
    }
    s = o;
  }
  xor_word(0, wk[2]);
  xor_word(2, wk[3]);
  ctx.outputs(s);
}

}  // namespace detail

}  // namespace projgc::spn
