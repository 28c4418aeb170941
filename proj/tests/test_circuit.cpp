#include "doctest.h"
#include "projgc/circuit.hpp"
#include "projgc/cost.hpp"
#include "projgc/error.hpp"
#include "projgc/formula.hpp"
#include "projgc/gcir.hpp"
#include "reference/random_circuit.hpp"

using namespace projgc;

namespace {

std::vector<uint32_t> identity(unsigned n) {
  std::vector<uint32_t> t(size_t(1) << n);
  for (uint32_t i = 0; i < t.size(); ++i) t[i] = i;
  return t;
}

uint64_t row_reduced(const CostReport& r) { return uint64_t(r.projective.ciphertexts); }
uint64_t unreduced(const CostReport& r) { return uint64_t(r.projective.garble_h); }

}  // namespace

TEST_CASE("builder basics") {
  CircuitBuilder b;
  WireId x = b.add_input(4);
  WireId y = b.add_input(4);
  WireId z = b.add_xor(x, y);
  b.mark_output(z);
  Circuit c = std::move(b).build();
  CHECK(c.inputs().size() == 2);
  CHECK(c.gates().size() == 1);
  std::vector<uint64_t> in{0b1010, 0b0110};
  CHECK(eval_plain(c, in) == std::vector<uint64_t>{0b1100});
}

TEST_CASE("builder rejects invalid gates") {
  CircuitBuilder b;
  WireId x = b.add_input(4);
  WireId y = b.add_input(8);
  CHECK_THROWS_AS(b.add_proj(x, std::vector<uint32_t>(15, 0), 4), CircuitError);
  CHECK_THROWS_AS(b.add_proj(x, std::vector<uint32_t>(16, 16), 4), CircuitError);
  CHECK_THROWS_AS(b.add_xor(x, y), WidthError);
  CHECK_THROWS_AS(b.add_xor(x, 99), CircuitError);
  CHECK_THROWS_AS(b.add_input(0), WidthError);
  CHECK_THROWS_AS(b.add_input(9), WidthError);
  CHECK_THROWS_AS(b.add_const(16, 4), WidthError);
}

TEST_CASE("validation rejects forward references") {
  Gate g;
  g.kind = GateKind::Xor;
  g.out = 1;
  g.a = 0;
  g.b = 2;
  g.width = 4;
  Gate h;
  h.kind = GateKind::Const;
  h.out = 2;
  h.width = 4;
  CHECK_THROWS_AS(make_circuit({4, 4, 4}, {g, h}, {{0, Party::Garbler}}, {1}), CircuitError);
}

TEST_CASE("random circuits from the builder validate") {
  Prg rng(17);
  for (int i = 0; i < 200; ++i) CHECK_NOTHROW(reftest::random_circuit(rng).validate());
}

TEST_CASE("identity projection and SKINNY S-box as formula vs table") {
  for (unsigned n = 1; n <= 8; ++n) {
    CircuitBuilder b;
    WireId x = b.add_input(n);
    b.mark_output(b.add_proj(x, identity(n), n));
    Circuit c = std::move(b).build();
    for (uint64_t v = 0; v < (1u << n); ++v) CHECK(eval_plain(c, std::vector<uint64_t>{v})[0] == v);
  }
  // Bit-sliced SKINNY S-box: four NOR steps with a bit rotation between them.
  const std::vector<uint32_t> skinny = {0xc, 0x6, 0x9, 0x0, 0x1, 0xa, 0x2, 0xb,
                                        0x3, 0x8, 0x5, 0xd, 0x4, 0xe, 0x7, 0xf};
  auto f = parse_formula(R"(
    in x0 x1 x2 x3
    out y0 y1 y2 y3
    a0 = x0 ^ (~x3 & ~x2)
    a3 = x3 ^ (~x2 & ~x1)
    a2 = x2 ^ (~x1 & ~a0)
    a1 = x1 ^ (~a0 & ~a3)
    y0 = a1
    y1 = a2
    y2 = a3
    y3 = a0
  )");
  CircuitBuilder b;
  WireId x = b.add_input(4);
  b.mark_output(b.add_proj(x, expand_formula(f), 4));
  Circuit c = std::move(b).build();
  for (uint64_t v = 0; v < 16; ++v) {
    CHECK(eval_plain(c, std::vector<uint64_t>{v})[0] == skinny[v]);
    CHECK(eval_formula(f, uint32_t(v)) == skinny[v]);
  }
  CHECK(f.and_count() == 4);
}

TEST_CASE("compose gadget") {
  CircuitBuilder b;
  std::vector<WireId> bits;
  for (int i = 0; i < 4; ++i) bits.push_back(b.add_input(1));
  b.mark_output(gadget_compose(b, bits));
  Circuit c = std::move(b).build();
  CHECK(eval_plain(c, std::vector<uint64_t>{1, 0, 1, 1})[0] == 0b1101);
  auto r = count_costs(c, std::nullopt, 128);
  CHECK(unreduced(r) == 8);
  CHECK(row_reduced(r) == 4);

  CircuitBuilder b2(8);
  WireId p = b2.add_input(3), q = b2.add_input(5);
  std::vector<WireId> pq{p, q};
  b2.mark_output(gadget_compose(b2, pq));
  Circuit c2 = std::move(b2).build();
  CHECK(unreduced(count_costs(c2, std::nullopt, 128)) == (1u << 3) + (1u << 5));
  CHECK(eval_plain(c2, std::vector<uint64_t>{0x5, 0x13})[0] == (0x13u << 3 | 0x5));

  CircuitBuilder b3(8);
  std::vector<WireId> wide{b3.add_input(5), b3.add_input(4)};
  CHECK_THROWS_AS(gadget_compose(b3, wide), WidthError);
}

TEST_CASE("decompose gadget, tree and naive") {
  std::vector<unsigned> parts{1, 1, 1, 1};
  for (auto strat : {DecomposeStrategy::Tree, DecomposeStrategy::Naive}) {
    CircuitBuilder b;
    WireId x = b.add_input(4);
    for (WireId w : gadget_decompose(b, x, parts, strat)) b.mark_output(w);
    Circuit c = std::move(b).build();
    CHECK(eval_plain(c, std::vector<uint64_t>{0b1101}) == std::vector<uint64_t>{1, 0, 1, 1});
    auto r = count_costs(c, std::nullopt, 128);
    if (strat == DecomposeStrategy::Tree) {
      CHECK(unreduced(r) == 48);
      CHECK(row_reduced(r) == 42);
    } else {
      CHECK(unreduced(r) == 64);
      CHECK(row_reduced(r) == 60);
    }
  }
  CircuitBuilder b;
  WireId x = b.add_input(4);
  std::vector<unsigned> bad{1, 2};
  CHECK_THROWS_AS(gadget_decompose(b, x, bad), WidthError);
}

TEST_CASE("compose then decompose is the identity") {
  for (unsigned total = 2; total <= 8; ++total) {
    // split total into parts of width 1..3
    std::vector<unsigned> parts;
    for (unsigned left = total; left;) {
      unsigned p = std::min(left, 1 + (left + total) % 3);
      parts.push_back(p);
      left -= p;
    }
    CircuitBuilder b;
    std::vector<WireId> ins;
    for (unsigned p : parts) ins.push_back(b.add_input(p));
    WireId whole = gadget_compose(b, ins);
    for (WireId w : gadget_decompose(b, whole, parts)) b.mark_output(w);
    Circuit c = std::move(b).build();
    for (uint64_t v = 0; v < (1u << total); ++v) {
      std::vector<uint64_t> in;
      unsigned off = 0;
      for (unsigned p : parts) {
        in.push_back((v >> off) & ((1u << p) - 1));
        off += p;
      }
      CHECK(eval_plain(c, in) == in);
    }
  }
}

TEST_CASE("constant gadget costs nothing") {
  CircuitBuilder b;
  WireId k = gadget_constant(b, 0xa, 4);
  WireId x = b.add_input(4);
  b.mark_output(b.add_xor(k, x));
  Circuit c = std::move(b).build();
  CHECK(eval_plain(c, std::vector<uint64_t>{0x3})[0] == (0xa ^ 0x3));
  auto r = count_costs(c, std::nullopt, 128);
  CHECK(r.projective.ciphertexts == 0);
  CHECK(r.table_bits == 0);
}

TEST_CASE("eval_plain rejects bad inputs") {
  CircuitBuilder b;
  WireId x = b.add_input(4);
  b.mark_output(x);
  Circuit c = std::move(b).build();
  CHECK_THROWS_AS(eval_plain(c, std::vector<uint64_t>{}), WidthError);
  CHECK_THROWS_AS(eval_plain(c, std::vector<uint64_t>{16}), WidthError);
}

TEST_CASE("cost formulas") {
  auto g4 = projection_cost(4, 4, 128);
  CHECK(g4.bits == 15 * 132);
  CHECK(double(g4.bits) / 8 == doctest::Approx(247.5));
  auto g8 = projection_cost(8, 8, 128);
  CHECK(g8.bits == 255 * 136);
  CHECK(g8.bits / 8 == 4335);
  auto hg = half_gates_cost(1, 128);
  CHECK(hg.garble_h == 4);
  CHECK(hg.ciphertexts == 2);
  CHECK(hg.bits == 256);
  CHECK(hg.eval_h == 2);
  auto th = three_halves_cost(2, 128);
  CHECK(th.garble_h == 12);
  CHECK(th.ciphertexts == 3);
  CHECK(th.eval_h == 6);
}

TEST_CASE("cost report is additive over gates") {
  Prg rng(23);
  for (int i = 0; i < 100; ++i) {
    Circuit c = reftest::random_circuit(rng);
    auto r = count_costs(c, BooleanCount{10, std::nullopt}, 120);
    uint64_t g = 0, e = 0, ct = 0, bits = 0;
    for (const auto& pg : r.per_gate) {
      g += pg.garble_h;
      e += pg.eval_h;
      ct += pg.ciphertexts;
      bits += pg.bits;
      CHECK(pg.bits == ((1u << pg.n) - 1) * (120 + pg.m));
    }
    CHECK(r.projective.garble_h == double(g));
    CHECK(r.projective.eval_h == double(e));
    CHECK(r.projective.ciphertexts == double(ct));
    CHECK(r.table_bits == bits);
    CHECK(r.half_gates->garble_h == 40);
  }
}

TEST_CASE("formula parsing and verification") {
  auto f = parse_formula("in a b\nout y\ny = a & ~b  # and-not\n");
  CHECK(expand_formula(f) == std::vector<uint32_t>{0, 1, 0, 0});
  auto rep = verify_formula(f, std::vector<uint32_t>{0, 1, 0, 0});
  CHECK(rep.match);
  CHECK(rep.and_count == 1);
  CHECK_FALSE(verify_formula(f, std::vector<uint32_t>{0, 1, 1, 0}).match);
  CHECK_THROWS_AS(verify_formula(f, std::vector<uint32_t>{0, 1}), WidthError);
  CHECK_THROWS_AS(parse_formula("in a\nout y\ny = a\ny = ~a\n"), CircuitError);
  CHECK_THROWS_AS(parse_formula("in a\nout y\ny = b\n"), CircuitError);
}

TEST_CASE("gcir round trip") {
  Prg rng(31);
  for (int i = 0; i < 100; ++i) {
    Circuit c = reftest::random_circuit(rng);
    Circuit d = parse_gcir(write_gcir(c));
    CHECK(write_gcir(d) == write_gcir(c));
    CHECK(d.inputs().size() == c.inputs().size());
    std::vector<uint64_t> in;
    for (const auto& w : c.inputs()) in.push_back(rng.uniform(uint64_t(1) << c.width(w.wire)));
    CHECK(eval_plain(c, in) == eval_plain(d, in));
  }
}

TEST_CASE("gcir parsing") {
  const char* text = R"(
    # xor of two nibbles, then an S-box
    INPUT 10 4
    INPUT 11 4 E
    XOR 12 10 11
    PROJ 13 12 4 c,6,9,0,1,a,2,b,3,8,5,d,4,e,7,f
    CONST 14 4 a
    XOR 15 13 14
    OUTPUT 15
  )";
  Circuit c = parse_gcir(text);
  CHECK(c.inputs()[1].owner == Party::Evaluator);
  CHECK(eval_plain(c, std::vector<uint64_t>{1, 2})[0] == (0x0 ^ 0xa));
  CHECK_THROWS_AS(parse_gcir("XOR 2 0 1\n"), FormatError);
  CHECK_THROWS_AS(parse_gcir("INPUT 0 4\nPROJ 1 0 4 1,2\n"), FormatError);
  CHECK_THROWS_AS(parse_gcir("INPUT 0 4\nINPUT 0 4\n"), FormatError);
  CHECK_THROWS_AS(parse_gcir("FROB 1\n"), FormatError);
}
