#include "projgc/garble.hpp"

#include <algorithm>
#include <thread>

#include "projgc/error.hpp"

namespace projgc {

const TweakableHash& default_hash() {
  static const TweakableHash h;
  return h;
}

Topology topology_of(const Circuit& c) {
  Topology t;
  t.widths = c.widths();
  t.inputs = c.inputs();
  t.outputs = c.outputs();
  t.gates.reserve(c.gates().size());
  for (const auto& g : c.gates()) t.gates.push_back({g.kind, g.out, g.a, g.b, uint8_t(g.width)});
  return t;
}

uint64_t GarbledCircuit::table_bits() const {
  uint64_t bits = 0;
  for (const auto& g : topology.gates)
    if (g.kind == GateKind::Proj)
      bits += ((uint64_t(1) << topology.widths[g.a]) - 1) * (kappa + g.width);
  return bits;
}

std::vector<Block> GarbledCircuit::full_rows(size_t gate_index) const {
  const auto& g = topology.gates.at(gate_index);
  if (g.kind != GateKind::Proj) return {};
  size_t count = size_t(1) << topology.widths[g.a];
  std::vector<Block> out(count);
  for (size_t p = 1; p < count; ++p) out[p] = rows[row_offset[gate_index] + p - 1];
  return out;
}

Block auth_digest(const TweakableHash& h, const Block& label, WireId wire) {
  return h.hash(label, tweak_of(kAuthTweakBase + wire));
}

namespace {

struct GarbleState {
  const Circuit& c;
  const SchemeParams& params;
  const TweakableHash& h;
  const std::vector<OffsetMatrix>& offsets;
  std::vector<Block>& zero;  // zero label per wire
  GarbledCircuit& gc;

  void gate(size_t i) {
    const Gate& g = c.gates()[i];
    switch (g.kind) {
      case GateKind::Xor: zero[g.out] = zero[g.a] ^ zero[g.b]; break;
      case GateKind::Const:
        // The evaluator holds the all-zero label, which then decodes to g.value.
        zero[g.out] = offsets[g.width - 1].combination(g.value);
        break;
      case GateKind::Proj: proj(i, g); break;
    }
  }

  void proj(size_t i, const Gate& g) {
    const unsigned n = c.width(g.a);
    const unsigned m = g.width;
    const OffsetMatrix& rn = offsets[n - 1];
    const OffsetMatrix& rm = offsets[m - 1];
    const Block tweak = tweak_of(g.out);
    const Block wa = zero[g.a];
    const uint64_t x0 = lsb_bits(wa, n);  // value whose label has pointer 0
    const auto& phi = *g.table;
    const Block wc = h.hash_narrow(wa ^ rn.combination(x0), tweak, params.kappa, m) ^
                     rm.combination(phi[x0]);
    zero[g.out] = wc;
    Block* out = gc.rows.data() + gc.row_offset[i];
    const uint64_t count = uint64_t(1) << n;
    for (uint64_t x = 0; x < count; ++x) {
      if (x == x0) continue;
      const uint64_t ptr = x ^ x0;
      out[ptr - 1] = h.hash_narrow(wa ^ rn.combination(x), tweak, params.kappa, m) ^ wc ^
                     rm.combination(phi[x]);
    }
  }
};

// Gates grouped by depth; a gate only depends on gates of lower depth.
std::vector<std::vector<size_t>> levels(const Circuit& c) {
  std::vector<uint32_t> depth(c.num_wires(), 0);
  std::vector<std::vector<size_t>> out;
  for (size_t i = 0; i < c.gates().size(); ++i) {
    const Gate& g = c.gates()[i];
    uint32_t d = 0;
    if (g.kind == GateKind::Xor) d = std::max(depth[g.a], depth[g.b]) + 1;
    else if (g.kind == GateKind::Proj) d = depth[g.a] + 1;
    depth[g.out] = d;
    if (out.size() <= d) out.resize(d + 1);
    out[d].push_back(i);
  }
  return out;
}

}  // namespace

Garbling garble(const Circuit& c, const SchemeParams& params, Prg& rng, const GarbleOptions& opts) {
  params.validate();
  c.validate();
  if (c.max_width() > params.nbar) throw WidthError("circuit uses wires wider than nbar");
  for (const auto& g : c.gates())
    if (g.out >= kDigestTweakBase) throw CircuitError("wire index exceeds tweak space");
  const TweakableHash& h = opts.hash ? *opts.hash : default_hash();

  Garbling r;
  r.e.kappa = params.kappa;
  for (unsigned n = 1; n <= params.nbar; ++n) r.e.offsets.push_back(gen_offsets(n, rng, params));

  std::vector<Block> zero(c.num_wires());
  for (const auto& in : c.inputs()) {
    Label l = random_label(c.width(in.wire), rng, params.kappa);
    zero[in.wire] = l.bits;
    r.e.zero_labels.push_back(l);
    r.e.owners.push_back(in.owner);
  }

  GarbledCircuit& gc = r.gc;
  gc.kappa = params.kappa;
  gc.nbar = params.nbar;
  gc.topology = topology_of(c);
  gc.row_offset.assign(c.gates().size(), 0);
  size_t total_rows = 0;
  for (size_t i = 0; i < c.gates().size(); ++i) {
    const Gate& g = c.gates()[i];
    gc.row_offset[i] = uint32_t(total_rows);
    if (g.kind == GateKind::Proj) total_rows += (size_t(1) << c.width(g.a)) - 1;
  }
  gc.rows.assign(total_rows, Block{});

  GarbleState st{c, params, h, r.e.offsets, zero, gc};
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    for (size_t i = 0; i < c.gates().size(); ++i) st.gate(i);
  } else {
    for (const auto& level : levels(c)) {
      if (level.size() < 2 * threads) {
        for (size_t i : level) st.gate(i);
        continue;
      }
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (size_t j = t; j < level.size(); j += threads) st.gate(level[j]);
        });
      }
      for (auto& th : pool) th.join();
    }
  }

  DecodingInfo& d = r.d;
  for (WireId o : c.outputs()) {
    d.wires.push_back(o);
    d.widths.push_back(uint8_t(c.width(o)));
  }
  if (!opts.auth) {
    d.mode = DecodingInfo::Mode::Plain;
    for (WireId o : c.outputs()) d.d.push_back(lsb_bits(zero[o], c.width(o)));
  } else {
    d.mode = DecodingInfo::Mode::Auth;
    for (WireId o : c.outputs()) {
      const unsigned n = c.width(o);
      std::vector<std::pair<Block, uint64_t>> list;
      list.reserve(size_t(1) << n);
      for (uint64_t v = 0; v < (uint64_t(1) << n); ++v)
        list.emplace_back(auth_digest(h, zero[o] ^ r.e.offsets[n - 1].combination(v), o), v);
      std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
        return x.first.hi != y.first.hi ? x.first.hi < y.first.hi : x.first.lo < y.first.lo;
      });
      d.auth.push_back(std::move(list));
    }
  }
  return r;
}

std::vector<Label> encode(const EncodingInfo& e, std::span<const uint64_t> x) {
  if (x.size() != e.zero_labels.size())
    throw WidthError("expected " + std::to_string(e.zero_labels.size()) + " input values");
  std::vector<Label> out;
  out.reserve(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const Label& z = e.zero_labels[i];
    out.push_back(encode_value(z, x[i], e.offset(z.width)));
  }
  return out;
}

std::vector<Label> eval(const GarbledCircuit& gc, std::span<const Label> inputs,
                        const TweakableHash& h, std::vector<uint64_t>* pointers) {
  const Topology& t = gc.topology;
  if (inputs.size() != t.inputs.size()) throw WidthError("input label count mismatch");
  std::vector<Block> w(t.widths.size());
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].width != t.widths[t.inputs[i].wire]) throw WidthError("input label width mismatch");
    w[t.inputs[i].wire] = inputs[i].bits;
  }
  for (size_t i = 0; i < t.gates.size(); ++i) {
    const GateShape& g = t.gates[i];
    switch (g.kind) {
      case GateKind::Xor: w[g.out] = w[g.a] ^ w[g.b]; break;
      case GateKind::Const: w[g.out] = Block{}; break;
      case GateKind::Proj: {
        const unsigned n = t.widths[g.a];
        const uint64_t ptr = lsb_bits(w[g.a], n);
        // Pointer 0 reads row 0 of the gate and masks it to zero.
        const uint64_t mask = uint64_t(0) - uint64_t(ptr != 0);
        Block row = gc.rows[gc.row_offset[i] + ptr - (ptr != 0)];
        row.lo &= mask;
        row.hi &= mask;
        w[g.out] = h.hash_narrow(w[g.a], tweak_of(g.out), gc.kappa, g.width) ^ row;
        if (pointers) pointers->push_back(ptr);
        break;
      }
    }
  }
  std::vector<Label> out;
  out.reserve(t.outputs.size());
  for (WireId o : t.outputs) out.push_back({w[o], t.widths[o]});
  return out;
}

std::vector<uint64_t> decode(const DecodingInfo& d, std::span<const Label> outputs) {
  if (d.mode != DecodingInfo::Mode::Plain) throw Error("decode needs plain-mode decoding info");
  if (outputs.size() != d.d.size()) throw WidthError("output label count mismatch");
  std::vector<uint64_t> y(outputs.size());
  for (size_t i = 0; i < outputs.size(); ++i) y[i] = d.d[i] ^ lsb_bits(outputs[i].bits, d.widths[i]);
  return y;
}

std::optional<std::vector<uint64_t>> decode_auth(const DecodingInfo& d,
                                                 std::span<const Label> outputs,
                                                 const TweakableHash& h) {
  if (d.mode != DecodingInfo::Mode::Auth) throw Error("decode_auth needs auth-mode decoding info");
  if (outputs.size() != d.auth.size()) throw WidthError("output label count mismatch");
  std::vector<uint64_t> y;
  y.reserve(outputs.size());
  for (size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i].width != d.widths[i]) return std::nullopt;
    const Block dg = auth_digest(h, outputs[i].bits, d.wires[i]);
    const auto& list = d.auth[i];
    auto it = std::lower_bound(list.begin(), list.end(), dg, [](const auto& e, const Block& k) {
      return e.first.hi != k.hi ? e.first.hi < k.hi : e.first.lo < k.lo;
    });
    if (it == list.end() || !(it->first == dg)) return std::nullopt;
    y.push_back(it->second);
  }
  return y;
}

}  // namespace projgc
