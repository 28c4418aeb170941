#include "projgc/circuit.hpp"

#include <algorithm>
#include <string>

#include "projgc/error.hpp"

namespace projgc {

namespace {

void check_width(unsigned w, unsigned nbar) {
  if (w == 0 || w > nbar || w > kMaxWidth)
    throw WidthError("wire width " + std::to_string(w) + " out of range 1.." +
                     std::to_string(std::min(nbar, kMaxWidth)));
}

void check_table(const Table& t, unsigned n, unsigned m) {
  if (!t || t->size() != (size_t(1) << n))
    throw CircuitError("projection table must have 2^" + std::to_string(n) + " entries");
  for (uint32_t e : *t)
    if (e >> m) throw CircuitError("projection table entry exceeds output width");
}

}  // namespace

Table make_table(std::vector<uint32_t> entries) {
  return std::make_shared<const std::vector<uint32_t>>(std::move(entries));
}

unsigned Circuit::max_width() const {
  unsigned m = 0;
  for (auto w : widths_) m = std::max<unsigned>(m, w);
  return m;
}

size_t Circuit::projection_count() const {
  return size_t(std::count_if(gates_.begin(), gates_.end(),
                              [](const Gate& g) { return g.kind == GateKind::Proj; }));
}

void Circuit::validate() const {
  // defined[w]: 0 = not yet, 1 = defined
  std::vector<uint8_t> defined(widths_.size(), 0);
  for (auto w : widths_)
    if (w == 0 || w > kMaxWidth) throw WidthError("wire width out of range");
  for (const auto& in : inputs_) {
    if (in.wire >= widths_.size()) throw CircuitError("input wire out of range");
    if (defined[in.wire]) throw CircuitError("wire defined twice");
    defined[in.wire] = 1;
  }
  WireId last = 0;
  bool first = true;
  for (const auto& g : gates_) {
    if (g.out >= widths_.size()) throw CircuitError("gate output out of range");
    if (defined[g.out]) throw CircuitError("wire defined twice");
    if (!first && g.out <= last) throw CircuitError("gates out of topological order");
    auto need = [&](WireId w) {
      if (w >= widths_.size() || !defined[w] || w >= g.out)
        throw CircuitError("forward reference to wire " + std::to_string(w));
    };
    if (g.width != widths_[g.out]) throw WidthError("gate width disagrees with wire width");
    switch (g.kind) {
      case GateKind::Xor:
        need(g.a);
        need(g.b);
        if (widths_[g.a] != widths_[g.b] || widths_[g.a] != g.width)
          throw WidthError("xor operands must share one width");
        break;
      case GateKind::Proj:
        need(g.a);
        check_table(g.table, widths_[g.a], g.width);
        break;
      case GateKind::Const:
        if (g.width < 64 && (g.value >> g.width)) throw WidthError("constant exceeds width");
        break;
    }
    defined[g.out] = 1;
    last = g.out;
    first = false;
  }
  for (WireId o : outputs_)
    if (o >= widths_.size() || !defined[o]) throw CircuitError("output wire undefined");
  for (size_t w = 0; w < defined.size(); ++w)
    if (!defined[w]) throw CircuitError("wire " + std::to_string(w) + " never defined");
}

Circuit make_circuit(std::vector<uint8_t> widths, std::vector<Gate> gates,
                     std::vector<InputWire> inputs, std::vector<WireId> outputs) {
  Circuit c;
  c.widths_ = std::move(widths);
  c.gates_ = std::move(gates);
  c.inputs_ = std::move(inputs);
  c.outputs_ = std::move(outputs);
  c.validate();
  return c;
}

CircuitBuilder::CircuitBuilder(unsigned nbar) : nbar_(nbar) {
  if (nbar == 0 || nbar > kMaxWidth) throw WidthError("nbar out of range");
}

WireId CircuitBuilder::new_wire(unsigned width) {
  check_width(width, nbar_);
  c_.widths_.push_back(uint8_t(width));
  return WireId(c_.widths_.size() - 1);
}

void CircuitBuilder::check_wire(WireId w) const {
  if (w >= c_.widths_.size()) throw CircuitError("reference to unknown wire " + std::to_string(w));
}

unsigned CircuitBuilder::width(WireId w) const {
  check_wire(w);
  return c_.widths_[w];
}

WireId CircuitBuilder::add_input(unsigned width, Party owner) {
  WireId w = new_wire(width);
  c_.inputs_.push_back({w, owner});
  return w;
}

WireId CircuitBuilder::add_xor(WireId a, WireId b) {
  check_wire(a);
  check_wire(b);
  unsigned w = c_.widths_[a];
  if (w != c_.widths_[b]) throw WidthError("xor of a " + std::to_string(w) + "-bit and a " +
                                           std::to_string(c_.widths_[b]) + "-bit wire");
  Gate g;
  g.kind = GateKind::Xor;
  g.a = a;
  g.b = b;
  g.width = w;
  g.category = category_;
  g.out = new_wire(w);
  c_.gates_.push_back(std::move(g));
  return c_.gates_.back().out;
}

WireId CircuitBuilder::add_proj(WireId a, Table table, unsigned m) {
  check_wire(a);
  check_width(m, nbar_);
  check_table(table, c_.widths_[a], m);
  Gate g;
  g.kind = GateKind::Proj;
  g.a = a;
  g.width = m;
  g.table = std::move(table);
  g.category = category_;
  g.out = new_wire(m);
  c_.gates_.push_back(std::move(g));
  return c_.gates_.back().out;
}

WireId CircuitBuilder::add_proj(WireId a, std::vector<uint32_t> table, unsigned m) {
  return add_proj(a, make_table(std::move(table)), m);
}

WireId CircuitBuilder::add_const(uint64_t value, unsigned width) {
  check_width(width, nbar_);
  if (width < 64 && (value >> width)) throw WidthError("constant exceeds width");
  Gate g;
  g.kind = GateKind::Const;
  g.value = value;
  g.width = width;
  g.category = category_;
  g.out = new_wire(width);
  c_.gates_.push_back(std::move(g));
  return c_.gates_.back().out;
}

void CircuitBuilder::mark_output(WireId w) {
  check_wire(w);
  c_.outputs_.push_back(w);
}

WireId CircuitBuilder::xor_all(std::span<const WireId> wires) {
  if (wires.empty()) throw CircuitError("xor of no wires");
  WireId acc = wires[0];
  for (size_t i = 1; i < wires.size(); ++i) acc = add_xor(acc, wires[i]);
  return acc;
}

Circuit CircuitBuilder::build() && {
  c_.validate();
  return std::move(c_);
}

Circuit CircuitBuilder::build() const& {
  c_.validate();
  return c_;
}

WireId gadget_compose(CircuitBuilder& b, std::span<const WireId> wires) {
  if (wires.empty()) throw CircuitError("compose of no wires");
  unsigned total = 0;
  for (WireId w : wires) total += b.width(w);
  if (total > b.nbar()) throw WidthError("composed width exceeds nbar");
  if (wires.size() == 1) return wires[0];
  std::vector<WireId> shifted;
  unsigned offset = 0;
  for (WireId w : wires) {
    unsigned n = b.width(w);
    std::vector<uint32_t> t(size_t(1) << n);
    for (uint32_t x = 0; x < t.size(); ++x) t[x] = x << offset;
    shifted.push_back(b.add_proj(w, std::move(t), total));
    offset += n;
  }
  return b.xor_all(shifted);
}

namespace {

// Emits the projection extracting bits [lo, lo+width) of w.
WireId slice(CircuitBuilder& b, WireId w, unsigned lo, unsigned width) {
  unsigned n = b.width(w);
  if (lo == 0 && width == n) return w;
  std::vector<uint32_t> t(size_t(1) << n);
  for (uint32_t x = 0; x < t.size(); ++x) t[x] = (x >> lo) & ((1u << width) - 1);
  return b.add_proj(w, std::move(t), width);
}

void tree_split(CircuitBuilder& b, WireId w, std::span<const unsigned> parts,
                std::vector<WireId>& out) {
  if (parts.size() == 1) {
    out.push_back(w);
    return;
  }
  size_t half = parts.size() / 2;
  unsigned low_width = 0;
  for (size_t i = 0; i < half; ++i) low_width += parts[i];
  unsigned high_width = b.width(w) - low_width;
  WireId low = slice(b, w, 0, low_width);
  WireId high = slice(b, w, low_width, high_width);
  tree_split(b, low, parts.first(half), out);
  tree_split(b, high, parts.subspan(half), out);
}

}  // namespace

std::vector<WireId> gadget_decompose(CircuitBuilder& b, WireId w, std::span<const unsigned> parts,
                                     DecomposeStrategy strategy) {
  unsigned sum = 0;
  for (unsigned p : parts) {
    if (p == 0) throw WidthError("zero-width part");
    sum += p;
  }
  if (parts.empty() || sum != b.width(w)) throw WidthError("part widths do not sum to wire width");
  std::vector<WireId> out;
  if (strategy == DecomposeStrategy::Naive) {
    unsigned lo = 0;
    for (unsigned p : parts) {
      out.push_back(slice(b, w, lo, p));
      lo += p;
    }
  } else {
    tree_split(b, w, parts, out);
  }
  return out;
}

WireId gadget_constant(CircuitBuilder& b, uint64_t value, unsigned width) {
  return b.add_const(value, width);
}

std::vector<uint64_t> eval_plain_all(const Circuit& c, std::span<const uint64_t> inputs) {
  if (inputs.size() != c.inputs().size())
    throw WidthError("expected " + std::to_string(c.inputs().size()) + " inputs, got " +
                     std::to_string(inputs.size()));
  std::vector<uint64_t> v(c.num_wires(), 0);
  for (size_t i = 0; i < inputs.size(); ++i) {
    WireId w = c.inputs()[i].wire;
    unsigned n = c.width(w);
    if (n < 64 && (inputs[i] >> n)) throw WidthError("input value exceeds wire width");
    v[w] = inputs[i];
  }
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::Xor: v[g.out] = v[g.a] ^ v[g.b]; break;
      case GateKind::Proj: v[g.out] = (*g.table)[v[g.a]]; break;
      case GateKind::Const: v[g.out] = g.value; break;
    }
  }
  return v;
}

std::vector<uint64_t> eval_plain(const Circuit& c, std::span<const uint64_t> inputs) {
  auto v = eval_plain_all(c, inputs);
  std::vector<uint64_t> out;
  out.reserve(c.outputs().size());
  for (WireId o : c.outputs()) out.push_back(v[o]);
  return out;
}

}  // namespace projgc
