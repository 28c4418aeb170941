// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "projgc/cost.hpp"
#include "projgc/formula.hpp"
#include "projgc/garble.hpp"
#include "projgc/proto/report.hpp"
#include "projgc/proto/runner.hpp"
#include "projgc/spn/primitive.hpp"
#include "projgc/spn/sbox.hpp"
#include "reference/random_circuit.hpp"
#include "reference/ref_ciphers.hpp"

using namespace projgc;
using namespace projgc::spn;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      problems.push_back(what);
    }
  }
};

std::vector<uint64_t> garbled_eval(const Circuit& c, std::span<const uint64_t> x, uint64_t seed) {
  Prg rng(seed);
  auto g = garble(c, SchemeParams{}, rng);
  return decode(g.d, eval(g.gc, encode(g.e, x)));
}

Bytes random_bytes(Prg& rng, size_t n) {
  Bytes b(n);
  for (auto& v : b) v = uint8_t(rng.uniform(256));
  return b;
}

Bytes random_block(Prg& rng, const PrimitiveInfo& info) {
  Bytes b = random_bytes(rng, info.block_bytes);
  unsigned bits = info.cells * info.cell_bits;
  if (bits % 8) b.back() &= uint8_t((1u << (bits % 8)) - 1);
  return b;
}

BuiltPrimitive build(const std::string& name, KeyMode mode, const Bytes& key, unsigned rounds = 0) {
  return build_primitive({name, mode, rounds, mode == KeyMode::GarblerConst ? key : Bytes{}});
}

Outcome correctness() {
  Outcome o;
  Prg rng(2024);
  uint64_t evaluations = 0, exhaustive = 0, mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    Circuit c = reftest::random_circuit(rng);
    Prg grng(uint64_t(i) + 1);
    auto g = garble(c, SchemeParams{}, grng);
    auto check = [&](const std::vector<uint64_t>& x) {
      ++evaluations;
      if (decode(g.d, eval(g.gc, encode(g.e, x))) != eval_plain(c, x)) ++mismatches;
    };
    const unsigned bits = reftest::input_bits(c);
    if (bits <= 12) {
      ++exhaustive;
      for (uint64_t v = 0; v < (uint64_t(1) << bits); ++v) {
        std::vector<uint64_t> x;
        uint64_t rest = v;
        for (const auto& in : c.inputs()) {
          unsigned w = c.width(in.wire);
          x.push_back(rest & ((uint64_t(1) << w) - 1));
          rest >>= w;
        }
        check(x);
      }
    } else {
      for (int s = 0; s < 64; ++s) {
        std::vector<uint64_t> x;
        for (const auto& in : c.inputs()) x.push_back(rng.uniform(uint64_t(1) << c.width(in.wire)));
        check(x);
      }
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " random-circuit mismatches");

  // Published vectors, every supported key mode, garbled.
  unsigned vector_runs = 0, vector_bad = 0;
  std::map<std::string, bool> family_seen;
  auto family = [](const std::string& n) {
    for (const char* f : {"aes", "craft", "fides", "mantis", "midori", "piccolo", "skinny", "twine", "wage"})
      if (n.rfind(f, 0) == 0) return std::string(f);
    return n;
  };
  for (const auto& v : reftest::load_vectors()) {
    const auto& info = primitive_info(v.primitive);
    family_seen[family(v.primitive)] = true;
    for (KeyMode mode : info.modes) {
      auto p = build(v.primitive, mode, v.key, v.rounds);
      PrimitiveInputs in{v.key, v.tweak, v.pt, Bytes(v.key.size(), 0x5c)};
      ++vector_runs;
      if (p.output_bytes(garbled_eval(p.circuit, p.input_values(in), vector_runs)) != v.ct) {
        ++vector_bad;
        o.require(false, v.cipher + " (" + std::string(to_string(mode)) + ") vector");
      }
    }
  }

  // Every builder against its independent reference implementation on random inputs.
  unsigned ref_runs = 0, ref_bad = 0;
  std::vector<std::string> reference_only;
  for (const auto& info : primitives()) {
    if (!family_seen.count(family(info.name)) &&
        std::find(reference_only.begin(), reference_only.end(), family(info.name)) == reference_only.end())
      reference_only.push_back(family(info.name));
    for (KeyMode mode : info.modes) {
      for (int t = 0; t < 2; ++t) {
        PrimitiveInputs in{random_bytes(rng, info.key_bytes), random_bytes(rng, info.tweak_bytes),
                           random_block(rng, info), random_bytes(rng, info.key_bytes)};
        auto p = build(info.name, mode, in.key);
        Bytes want = reftest::encrypt(info.name, p.rounds, in.key, in.tweak, in.block);
        ++ref_runs;
        if (p.output_bytes(garbled_eval(p.circuit, p.input_values(in), 7000 + ref_runs)) != want) {
          ++ref_bad;
          o.require(false, info.name + " (" + std::string(to_string(mode)) + ") vs reference");
        }
      }
    }
  }
  std::string ref_list;
  for (const auto& f : reference_only) ref_list += (ref_list.empty() ? "" : ",") + f;
  o.detail = "1000 random circuits (" + std::to_string(exhaustive) + " exhaustive, " +
             std::to_string(evaluations) + " evaluations), " + std::to_string(vector_runs) +
             " vector runs, " + std::to_string(ref_runs) + " reference runs; " +
             std::to_string(mismatches + vector_bad + ref_bad) + " mismatches; no published vector for " +
             ref_list + " (reference implementation oracle only)";
  return o;
}

struct CensusRow {
  std::string name;
  std::array<Census, kCategoryCount> proj;
  std::array<uint64_t, kCategoryCount> ands;
};

const std::vector<CensusRow>& published_census() {
  using C = Census;
  static const std::vector<CensusRow> rows{
      {"aes128", {C{}, C{{1, 128}, {8, 49}}, C{{8, 320}}}, {0, 1280, 5120}},
      {"craft", {C{}, C{{1, 192}}, C{{4, 480}}}, {0, 0, 1920}},
      {"fides80", {C{{1, 160}}, C{}, C{{5, 32}}}, {0, 0, 320}},
      {"fides96", {C{{1, 192}}, C{}, C{{6, 32}}}, {0, 0, 1088}},
      {"mantis", {C{}, C{{1, 192}}, C{{4, 224}}}, {0, 0, 896}},
      {"midori64", {C{}, C{{1, 128}}, C{{4, 256}}}, {0, 0, 1024}},
      {"piccolo80", {C{}, C{{1, 80}}, C{{4, 600}}}, {0, 0, 1600}},
      {"piccolo128", {C{}, C{{1, 128}}, C{{4, 744}}}, {0, 0, 1984}},
      {"skinny-64-128", {C{}, C{{1, 128}, {4, 280}}, C{{4, 576}}}, {0, 0, 2304}},
      {"twine80", {C{}, C{{1, 80}, {4, 70}}, C{{4, 288}}}, {0, 432, 1728}},
      {"twine128", {C{}, C{{1, 128}, {4, 104}}, C{{4, 288}}}, {0, 630, 1728}},
      {"wage", {C{{1, 259}}, C{}, C{{7, 777}}}, {0, 0, 37745}},
  };
  return rows;
}

std::string census_str(const Census& c) {
  std::string s = proto::census_text(c);
  return s.empty() ? "-" : s;
}

Outcome census_check() {
  Outcome o;
  unsigned entries = 0, matched = 0;
  for (const auto& want : published_census()) {
    auto p = build_primitive({want.name, KeyMode::InCircuit, 0, {}});
    auto r = count_costs(p.circuit, std::nullopt, 128);
    for (unsigned c = 0; c < kCategoryCount; ++c) {
      Census got;
      for (auto [w, n] : r.census[c])
        if (n) got[w] = n;
      std::string cat(proto::category_name(Category(c)));
      entries += 2;
      if (got == want.proj[c])
        ++matched;
      else
        o.require(false, want.name + " " + cat + " projections " + census_str(got) + " vs " +
                             census_str(want.proj[c]));
      if (p.and_census[c] == want.ands[c])
        ++matched;
      else
        o.require(false, want.name + " " + cat + " ANDs " + std::to_string(p.and_census[c]) + " vs " +
                             std::to_string(want.ands[c]));
    }
  }
  o.detail = std::to_string(matched) + "/" + std::to_string(entries) + " census entries exact";
  return o;
}

Circuit lut(unsigned n) {
  CircuitBuilder b;
  WireId x = b.add_input(n);
  std::vector<uint32_t> t(size_t(1) << n);
  for (size_t i = 0; i < t.size(); ++i) t[i] = uint32_t(i ^ (i >> 1));
  b.mark_output(b.add_proj(x, std::move(t), n));
  return std::move(b).build();
}

Outcome lut_bytes() {
  Outcome o;
  double b4 = count_costs(lut(4), std::nullopt, 128).projective.bytes();
  double b8 = count_costs(lut(8), std::nullopt, 128).projective.bytes();
  char buf[128];
  std::snprintf(buf, sizeof buf, "4-bit LUT %.1f B (%.3f kB), 8-bit LUT %.1f B (%.3f kB)", b4,
                std::floor(b4) / 1000, b8, b8 / 1000);
  o.detail = buf;
  o.require(b4 == 247.5, "4-bit LUT bytes");
  o.require(b8 == 4335.0, "8-bit LUT bytes");
  return o;
}

Outcome gate_costs() {
  Outcome o;
  Prg rng(77);
  TweakableHash h;
  unsigned gates = 0;
  for (unsigned n = 1; n <= 8; ++n)
    for (unsigned m = 1; m <= 8; ++m)
      for (int rep = 0; rep < 2; ++rep) {
        CircuitBuilder b;
        WireId x = b.add_input(n);
        std::vector<uint32_t> t(size_t(1) << n);
        for (auto& e : t) e = uint32_t(rng.uniform(uint64_t(1) << m));
        b.mark_output(b.add_proj(x, std::move(t), m));
        Circuit c = std::move(b).build();
        h.reset_calls();
        auto g = garble(c, SchemeParams{}, rng, {.hash = &h});
        uint64_t gh = h.calls();
        h.reset_calls();
        std::vector<uint64_t> in{rng.uniform(uint64_t(1) << n)};
        eval(g.gc, encode(g.e, in), h);
        uint64_t eh = h.calls();
        ++gates;
        std::string tag = std::to_string(n) + "->" + std::to_string(m);
        o.require(gh == (uint64_t(1) << n), tag + " garble calls " + std::to_string(gh));
        o.require(eh == 1, tag + " eval calls " + std::to_string(eh));
        o.require(g.gc.table_bits() == ((uint64_t(1) << n) - 1) * (120 + m), tag + " table bits");
        auto cost = count_costs(c, std::nullopt, 128).per_gate.at(0);
        o.require(cost.bits == ((uint64_t(1) << n) - 1) * (128 + m), tag + " cost-model bits");
      }
  o.detail = std::to_string(gates) + " randomized gates, n,m in 1..8: 2^n garble calls, 1 eval call, (2^n-1)(kappa+m) bits";
  return o;
}

struct RatioRow {
  std::string name;
  unsigned rounds;
  Ratios hg, th;
};

Outcome factor_check() {
  Outcome o;
  const std::vector<RatioRow> published{
      {"aes128", 0, {0.28, 0.14, 26.23}, {0.42, 0.10, 39.34}},
      {"craft", 0, {0.95, 0.52, 5.71}, {1.43, 0.39, 8.57}},
      {"fides80", 17, {1.23, 0.64, 15.45}, {1.84, 0.48, 23.18}},
      {"fides96", 17, {2.10, 1.07, 50.26}, {3.15, 0.81, 75.39}},
      {"mantis", 0, {0.90, 0.50, 4.31}, {1.35, 0.38, 6.46}},
      {"midori64", 0, {0.94, 0.52, 5.33}, {1.41, 0.39, 8.00}},
      {"piccolo80", 0, {0.66, 0.35, 4.71}, {0.98, 0.26, 7.06}},
      {"piccolo128", 0, {0.65, 0.35, 4.55}, {0.98, 0.26, 6.83}},
      {"skinny-64-128", 0, {0.66, 0.36, 4.68}, {0.99, 0.27, 7.02}},
      {"twine80", 0, {1.46, 0.79, 9.81}, {2.19, 0.59, 14.71}},
      {"twine128", 0, {1.44, 0.78, 9.05}, {2.16, 0.59, 13.58}},
      {"wage", 0, {1.51, 0.76, 72.87}, {2.27, 0.57, 109.30}},
  };
  double worst = 0;
  std::string worst_at;
  for (const auto& want : published) {
    auto s = proto::summarize(build_primitive({want.name, KeyMode::InCircuit, want.rounds, {}}), 128);
    auto cmp = [&](double got, double ref, const std::string& what) {
      double dev = std::fabs(got / ref - 1);
      if (dev > worst) {
        worst = dev;
        worst_at = want.name + " " + what;
      }
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s %s %.2f vs %.2f", want.name.c_str(), what.c_str(), got, ref);
      o.require(dev <= 0.10, buf);
    };
    cmp(s.vs_half_gates.garble, want.hg.garble, "half-gates garble");
    cmp(s.vs_half_gates.send, want.hg.send, "half-gates send");
    cmp(s.vs_half_gates.eval, want.hg.eval, "half-gates eval");
    cmp(s.vs_three_halves.garble, want.th.garble, "three-halves garble");
    cmp(s.vs_three_halves.send, want.th.send, "three-halves send");
    cmp(s.vs_three_halves.eval, want.th.eval, "three-halves eval");
  }

  // Measured evaluation work for one AES-128 block against the half-gates model.
  auto aes = build_primitive({"aes128", KeyMode::InCircuit, 0, {}});
  Prg rng(5);
  auto g = garble(aes.circuit, SchemeParams{}, rng);
  PrimitiveInputs in{Bytes(16, 1), {}, Bytes(16, 2), {}};
  TweakableHash h;
  eval(g.gc, encode(g.e, aes.input_values(in)), h);
  const double model = half_gates_cost(aes.and_total(), 128).eval_h;
  o.require(double(h.calls()) <= model / 20, "AES-128 eval H-calls " + std::to_string(h.calls()));

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "72 factors within 10%% (worst %.1f%% at %s; fides counted over 17 rounds); AES-128 eval %llu H-calls <= %.0f",
                worst * 100, worst_at.c_str(), (unsigned long long)h.calls(), model / 20);
  o.detail = buf;
  return o;
}

Outcome formula_check() {
  Outcome o;
  std::string detail;
  for (auto [name, ands, inputs] : {std::tuple{"twine", 6u, 16u}, {"midori_sb0", 4u, 16u}, {"fides5", 10u, 32u}}) {
    const auto& a = sbox(name);
    if (!a.formula) {
      o.require(false, std::string(name) + " has no formula");
      continue;
    }
    unsigned bad = 0;
    for (uint32_t x = 0; x < inputs; ++x) bad += eval_formula(*a.formula, x) != (*a.shared)[x];
    o.require(a.shared->size() == inputs, std::string(name) + " table size");
    o.require(bad == 0, std::string(name) + " formula mismatches " + std::to_string(bad));
    o.require(a.formula->and_count() == ands,
              std::string(name) + " ANDs " + std::to_string(a.formula->and_count()));
    detail += (detail.empty() ? "" : ", ") + std::string(name) + " " + std::to_string(a.formula->and_count()) +
              " ANDs on " + std::to_string(inputs) + " inputs";
  }
  o.detail = detail;
  return o;
}

uint64_t row_reduced(const Circuit& c) {
  uint64_t n = 0;
  for (const auto& g : count_costs(c, std::nullopt, 128).per_gate) n += g.ciphertexts;
  return n;
}

Outcome gadgets() {
  Outcome o;
  CircuitBuilder b;
  std::vector<WireId> bits;
  for (int i = 0; i < 4; ++i) bits.push_back(b.add_input(1));
  b.mark_output(gadget_compose(b, bits));
  Circuit compose = std::move(b).build();
  uint64_t comp = row_reduced(compose);
  o.require(comp == 4, "compose " + std::to_string(comp));
  o.require(eval_plain(compose, std::vector<uint64_t>{1, 0, 1, 1})[0] == 0b1101, "compose value");

  std::vector<unsigned> parts{1, 1, 1, 1};
  uint64_t cost[2];
  for (auto strat : {DecomposeStrategy::Tree, DecomposeStrategy::Naive}) {
    CircuitBuilder d;
    WireId x = d.add_input(4);
    for (WireId w : gadget_decompose(d, x, parts, strat)) d.mark_output(w);
    Circuit c = std::move(d).build();
    for (uint64_t v = 0; v < 16; ++v) {
      std::vector<uint64_t> in{v};
      std::vector<uint64_t> want{v & 1, (v >> 1) & 1, (v >> 2) & 1, (v >> 3) & 1};
      o.require(eval_plain(c, in) == want, "decompose value");
    }
    cost[strat == DecomposeStrategy::Tree ? 0 : 1] = row_reduced(c);
  }
  o.require(cost[0] == 42, "tree decompose " + std::to_string(cost[0]));
  o.require(cost[1] == 60, "naive decompose " + std::to_string(cost[1]));
  o.detail = "compose 4x1 -> " + std::to_string(comp) + ", tree decompose 4->1 -> " + std::to_string(cost[0]) +
             ", naive -> " + std::to_string(cost[1]) + " row-reduced ciphertexts";
  return o;
}

Outcome rewrites() {
  Outcome o;
  CircuitBuilder b;
  std::vector<WireId> s, k;
  for (int i = 0; i < 16; ++i) s.push_back(b.add_input(8));
  for (int i = 0; i < 16; ++i) k.push_back(b.add_input(8));
  for (WireId w : aes_round(b, s, k)) b.mark_output(w);
  Circuit round = std::move(b).build();
  Prg rng(8);
  unsigned aes_bad = 0;
  for (int t = 0; t < 100; ++t) {
    std::array<uint8_t, 16> st{}, rk{};
    std::vector<uint64_t> x;
    for (auto& v : st) x.push_back(v = uint8_t(rng.uniform(256)));
    for (auto& v : rk) x.push_back(v = uint8_t(rng.uniform(256)));
    auto want = reftest::aes_round(st, rk);
    auto got = eval_plain(round, x);
    for (int i = 0; i < 16; ++i) aes_bad += got[i] != want[i];
  }
  o.require(aes_bad == 0, "AES round mismatches " + std::to_string(aes_bad));

  CircuitBuilder pb;
  std::vector<WireId> in;
  for (int i = 0; i < 4; ++i) in.push_back(pb.add_input(4));
  for (WireId w : piccolo_f_prime(pb, in)) pb.mark_output(w);
  Circuit f = std::move(pb).build();
  unsigned f_bad = 0;
  for (uint32_t x = 0; x < 65536; ++x) {
    std::vector<uint64_t> v = {x >> 12, (x >> 8) & 15, (x >> 4) & 15, x & 15};
    auto y = eval_plain(f, v);
    f_bad += uint32_t(y[0] << 12 | y[1] << 8 | y[2] << 4 | y[3]) != reftest::piccolo_f(uint16_t(x));
  }
  o.require(f_bad == 0, "Piccolo F' mismatches " + std::to_string(f_bad));
  o.detail = "AES round with doubling rewrite on 100 states (" + std::to_string(round.projection_count()) +
             " projections): " + std::to_string(aes_bad) + " mismatches; Piccolo F' on 65536 inputs (" +
             std::to_string(f.projection_count()) + " projections): " + std::to_string(f_bad) + " mismatches";
  return o;
}

Circuit chain(unsigned depth, Prg& rng) {
  CircuitBuilder b;
  WireId g = b.add_input(4, Party::Garbler);
  WireId e = b.add_input(4, Party::Evaluator);
  WireId w = b.add_xor(g, e);
  for (unsigned i = 0; i < depth; ++i) {
    std::vector<uint32_t> t(16);
    for (auto& v : t) v = uint32_t(rng.uniform(16));
    w = b.add_xor(b.add_proj(w, std::move(t), 4), e);
  }
  b.mark_output(w);
  return std::move(b).build();
}

Outcome protocol() {
  using namespace projgc::proto;
  Outcome o;
  Prg rng(99);

  unsigned dual = 0;
  for (int i = 0; i < 10; ++i) {
    Circuit c = reftest::random_circuit(rng);
    std::vector<uint64_t> x;
    for (const auto& in : c.inputs()) x.push_back(rng.uniform(uint64_t(1) << c.width(in.wire)));
    auto [xg, xe] = split_inputs(c, x);
    RunConfig cfg;
    cfg.params.seed = 500 + uint64_t(i);
    auto mem = run_two_party(c, xg, xe, cfg);
    cfg.transport = Transport::Stream;
    auto tcp = run_two_party(c, xg, xe, cfg);
    bool same = mem.outputs == tcp.outputs && mem.outputs == eval_plain(c, x) &&
                mem.offline.bytes() == tcp.offline.bytes() && mem.online.bytes_to_evaluator == tcp.online.bytes_to_evaluator &&
                mem.online.bytes_to_garbler == tcp.online.bytes_to_garbler &&
                mem.offline.messages() == tcp.offline.messages() && mem.online.messages() == tcp.online.messages();
    o.require(same, "transport mismatch on circuit " + std::to_string(i));
    dual += same;
  }

  std::string counts;
  bool exact_bytes = true;
  for (unsigned depth : {1u, 10u, 100u, 1000u}) {
    Circuit c = chain(depth, rng);
    std::vector<uint64_t> xg{5}, xe{11};
    RunConfig cfg;
    cfg.params.seed = depth;
    auto r = run_two_party(c, xg, xe, cfg);
    o.require(r.outputs == eval_plain(c, merge_inputs(c, xg, xe)), "chain output at depth " + std::to_string(depth));
    uint64_t msgs = r.offline.messages() + r.online.messages();
    counts += (counts.empty() ? "" : "/") + std::to_string(msgs);
    o.require(msgs == 3 && r.offline.messages() == 1, "message count " + std::to_string(msgs) + " at depth " +
                                                           std::to_string(depth));
    uint64_t want = count_costs(c, std::nullopt, cfg.params.kappa).table_bytes_padded();
    exact_bytes = exact_bytes && r.table_payload_bytes == want;
    o.require(r.table_payload_bytes == want, "offline table bytes at depth " + std::to_string(depth));
  }

  Circuit c = chain(8, rng);
  auto g = garble(c, SchemeParams{}, rng, {.auth = true});
  std::vector<uint64_t> x{3, 9};
  auto labels = eval(g.gc, encode(g.e, x));
  o.require(decode_auth(g.d, labels).has_value(), "genuine labels rejected");
  unsigned rejected = 0;
  for (unsigned t = 0; t < 100; ++t) {
    auto bad = labels;
    Block flip;
    flip.set_bit(unsigned(rng.uniform(120 + 4)), true);
    bad[0].bits = bad[0].bits ^ flip;
    rejected += !decode_auth(g.d, bad).has_value();
  }
  o.require(rejected == 100, "tamper rejections " + std::to_string(rejected));
  o.detail = "dual transport " + std::to_string(dual) + "/10 identical; messages at depth 1/10/100/1000: " + counts +
             "; offline table bytes " + (exact_bytes ? "equal" : "differ from") + " count_costs; tampered labels rejected " +
             std::to_string(rejected) + "/100";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"correctness property suite", correctness},
      {"gate census table", census_check},
      {"lookup-table communication", lut_bytes},
      {"per-gate cost formulas", gate_costs},
      {"improvement factors vs Half-Gates and ThreeHalves", factor_check},
      {"S-box formulas", formula_check},
      {"compose/decompose gadget costs", gadgets},
      {"rewrite equivalences", rewrites},
      {"protocol suite", protocol},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string line = std::string(o.pass ? "PASS" : "FAIL") + " " + std::to_string(i + 1) + " " +
                       criteria[i].first + ": " + o.detail;
    if (!o.pass) {
      line += " | mismatches:";
      for (size_t k = 0; k < o.problems.size() && k < 12; ++k) line += (k ? "; " : " ") + o.problems[k];
      if (o.problems.size() > 12) line += "; ... (" + std::to_string(o.problems.size()) + " total)";
    }
    char t[32];
    std::snprintf(t, sizeof t, " [%.1fs]", secs);
    std::printf("%s%s\n", line.c_str(), t);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures ? 1 : 0;
}
