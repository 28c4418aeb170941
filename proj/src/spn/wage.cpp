// WAGE permutation: 37 cells of 7 bits, 111 steps. The state arrives as
// single bits composed in setup; the shift is wire renaming. Per step: WGP on
// s36 and s18, SB on s8, s15, s27, s34, and doubling of s0, seven projections.
// Round constants come from a 7-bit LFSR.

#include <algorithm>

#include "builder.hpp"
#include "projgc/spn/gf.hpp"

namespace projgc::spn::detail {

namespace {

// Boolean baseline taken from the literature circuit for the whole permutation.
constexpr uint64_t kWageAnds = 37745;

}  // namespace

void build_wage(Ctx& ctx) {
  CircuitBuilder& b = ctx.b;
  const SboxAsset& wgp = sbox("wage_wgp");
  const SboxAsset& sb = sbox("wage_sb");
  const Table dbl = make_table(tabulate(7, [](uint32_t x) { return gf128_double(uint8_t(x)); }));

  Wires s = ctx.block_from_bits();
  ctx.category(Category::DataPath);
  uint32_t lfsr = 0x7f;
  auto step = [&] {
    uint32_t v = lfsr;
    lfsr = (lfsr >> 1) | (((lfsr ^ (lfsr >> 1)) & 1) << 6);
    return v;
  };
  for (unsigned i = 0; i < ctx.rounds; ++i) {
    const uint32_t rc1 = step(), rc0 = step();
    const WireId terms[] = {ctx.sbox(s[36], wgp), s[31], s[30], s[26], s[24], s[19], s[13], s[12],
                            s[8], s[6], b.add_proj(s[0], dbl, 7)};
    const WireId fb = ctx.xor_const(b.xor_all(terms), rc1);
    s[5] = b.add_xor(s[5], ctx.sbox(s[8], sb));
    s[11] = b.add_xor(s[11], ctx.sbox(s[15], sb));
    s[19] = ctx.xor_const(b.add_xor(s[19], ctx.sbox(s[18], wgp)), rc0);
    s[24] = b.add_xor(s[24], ctx.sbox(s[27], sb));
    s[30] = b.add_xor(s[30], ctx.sbox(s[34], sb));
    std::rotate(s.begin(), s.begin() + 1, s.end());
    s[36] = fb;
  }
  ctx.and_override[unsigned(Category::DataPath)] = kWageAnds;
  ctx.outputs(s);
}

}  // namespace projgc::spn::detail
