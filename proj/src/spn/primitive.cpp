#include "projgc/spn/primitive.hpp"

#include <algorithm>

#include "builder.hpp"
#include "projgc/error.hpp"

namespace projgc::spn {

std::string_view to_string(KeyMode m) {
  switch (m) {
    case KeyMode::InCircuit: return "in-circuit";
    case KeyMode::GarblerConst: return "const";
    case KeyMode::EvaluatorOt: return "ot";
    case KeyMode::LinearShare: return "share";
  }
  return "?";
}

KeyMode parse_key_mode(std::string_view s) {
  for (KeyMode m : {KeyMode::InCircuit, KeyMode::GarblerConst, KeyMode::EvaluatorOt, KeyMode::LinearShare})
    if (s == to_string(m)) return m;
  throw Error("unknown key mode '" + std::string(s) + "' (in-circuit|const|ot|share)");
}

bool PrimitiveInfo::supports(KeyMode m) const {
  return std::find(modes.begin(), modes.end(), m) != modes.end();
}

namespace {

using detail::Builder;
using detail::Material;

struct Def {
  PrimitiveInfo info;
  Builder build;
  Material material;
};

const std::vector<Def>& defs() {
  using enum KeyMode;
  using enum CellOrder;
  const std::vector<KeyMode> all = {InCircuit, GarblerConst, EvaluatorOt, LinearShare};
  const std::vector<KeyMode> nonlinear = {InCircuit, GarblerConst, EvaluatorOt};
  const std::vector<KeyMode> unkeyed = {InCircuit};
  // name, cell bits, block/key/tweak bytes, cells, rounds, order, modes, variable rounds
  static const std::vector<Def> d = {
      {{"aes128", 8, 16, 16, 0, 16, 10, Bytes, nonlinear, false}, detail::build_aes, detail::material_aes},
      {{"craft", 4, 8, 16, 8, 16, 32, NibblesMsb, all, false}, detail::build_craft, detail::material_craft},
      {{"fides80", 5, 20, 0, 0, 32, 1, PackedLsb, unkeyed, true}, detail::build_fides, nullptr},
      {{"fides96", 6, 24, 0, 0, 32, 1, PackedLsb, unkeyed, true}, detail::build_fides, nullptr},
      {{"mantis", 4, 8, 16, 8, 16, 6, NibblesMsb, all, true}, detail::build_mantis, detail::material_mantis},
      {{"midori64", 4, 8, 16, 0, 16, 16, NibblesMsb, all, false}, detail::build_midori, detail::material_midori},
      {{"piccolo80", 4, 8, 10, 0, 16, 25, NibblesMsb, all, false}, detail::build_piccolo, detail::material_piccolo},
      {{"piccolo128", 4, 8, 16, 0, 16, 31, NibblesMsb, all, false}, detail::build_piccolo, detail::material_piccolo},
      {{"skinny-64-64", 4, 8, 8, 0, 16, 32, NibblesMsb, all, false}, detail::build_skinny, detail::material_skinny},
      {{"skinny-64-128", 4, 8, 16, 0, 16, 36, NibblesMsb, all, false}, detail::build_skinny, detail::material_skinny},
      {{"skinny-64-192", 4, 8, 24, 0, 16, 40, NibblesMsb, all, false}, detail::build_skinny, detail::material_skinny},
      {{"skinny-128-128", 8, 16, 16, 0, 16, 40, Bytes, all, false}, detail::build_skinny, detail::material_skinny},
      {{"skinny-128-256", 8, 16, 32, 0, 16, 48, Bytes, all, false}, detail::build_skinny, detail::material_skinny},
      {{"skinny-128-384", 8, 16, 48, 0, 16, 56, Bytes, all, false}, detail::build_skinny, detail::material_skinny},
      {{"twine80", 4, 8, 10, 0, 16, 36, NibblesMsb, nonlinear, false}, detail::build_twine, detail::material_twine},
      {{"twine128", 4, 8, 16, 0, 16, 36, NibblesMsb, nonlinear, false}, detail::build_twine, detail::material_twine},
      {{"wage", 7, 33, 0, 0, 37, 111, PackedLsb, unkeyed, false}, detail::build_wage, nullptr},
  };
  return d;
}

const Def& def(std::string_view name) {
  for (const auto& d : defs())
    if (d.info.name == name) return d;
  throw Error("unknown primitive '" + std::string(name) + "'");
}

unsigned resolve_rounds(const PrimitiveInfo& info, unsigned rounds) {
  if (rounds == 0 || rounds == info.default_rounds) return info.default_rounds;
  if (!info.variable_rounds)
    throw Error(info.name + " has a fixed round count of " + std::to_string(info.default_rounds));
  if (info.name == "mantis" && (rounds < 1 || rounds > 8)) throw Error("MANTIS supports 1..8 rounds");
  return rounds;
}

Bytes xor_bytes(const Bytes& a, const Bytes& b) {
  if (a.size() != b.size()) throw Error("key share length mismatch");
  Bytes r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] ^ b[i];
  return r;
}

uint64_t bit_of(const Bytes& b, uint32_t j) {
  if (j / 8 >= b.size()) throw Error("input too short");
  return (b[j / 8] >> (j % 8)) & 1;
}

}  // namespace

const std::vector<PrimitiveInfo>& primitives() {
  static const std::vector<PrimitiveInfo> v = [] {
    std::vector<PrimitiveInfo> r;
    for (const auto& d : defs()) r.push_back(d.info);
    return r;
  }();
  return v;
}

const PrimitiveInfo& primitive_info(std::string_view name) {
  for (const auto& p : primitives())
    if (p.name == name) return p;
  throw Error("unknown primitive '" + std::string(name) + "'");
}

std::vector<uint64_t> key_material(std::string_view name, const Bytes& key, unsigned rounds) {
  const Def& d = def(name);
  if (!d.material) throw Error(d.info.name + " has no key");
  if (key.size() != d.info.key_bytes)
    throw Error(d.info.name + " expects a " + std::to_string(d.info.key_bytes) + "-byte key");
  return d.material(d.info, key, resolve_rounds(d.info, rounds));
}

std::vector<uint64_t> to_cells(const Bytes& bytes, unsigned cell_bits, unsigned count, CellOrder order) {
  std::vector<uint64_t> c(count, 0);
  switch (order) {
    case CellOrder::Bytes:
      if (bytes.size() < count) throw Error("input too short");
      for (unsigned i = 0; i < count; ++i) c[i] = bytes[i];
      break;
    case CellOrder::NibblesMsb:
      if (bytes.size() * 2 < count) throw Error("input too short");
      for (unsigned i = 0; i < count; ++i) c[i] = (bytes[i / 2] >> (i % 2 ? 0 : 4)) & 0xf;
      break;
    case CellOrder::PackedLsb:
      for (unsigned j = 0; j < count * cell_bits; ++j) c[j / cell_bits] |= bit_of(bytes, j) << (j % cell_bits);
      break;
  }
  return c;
}

Bytes from_cells(std::span<const uint64_t> cells, unsigned cell_bits, unsigned byte_len, CellOrder order) {
  Bytes b(byte_len, 0);
  switch (order) {
    case CellOrder::Bytes:
      for (size_t i = 0; i < cells.size() && i < byte_len; ++i) b[i] = uint8_t(cells[i]);
      break;
    case CellOrder::NibblesMsb:
      for (size_t i = 0; i < cells.size() && i / 2 < byte_len; ++i)
        b[i / 2] |= uint8_t((cells[i] & 0xf) << (i % 2 ? 0 : 4));
      break;
    case CellOrder::PackedLsb:
      for (size_t j = 0; j < cells.size() * cell_bits && j / 8 < byte_len; ++j)
        if ((cells[j / cell_bits] >> (j % cell_bits)) & 1) b[j / 8] |= uint8_t(1u << (j % 8));
      break;
  }
  return b;
}

uint64_t BuiltPrimitive::and_total() const {
  uint64_t t = 0;
  for (auto v : and_census) t += v;
  return t;
}

std::vector<uint64_t> BuiltPrimitive::input_values(const PrimitiveInputs& in) const {
  using K = InputSource::Kind;
  const PrimitiveInfo& pi = *info;
  std::vector<uint64_t> mat, mat_g, mat_e, block, tweak;
  auto need_key = [&] {
    if (in.key.size() != pi.key_bytes)
      throw Error(pi.name + " expects a " + std::to_string(pi.key_bytes) + "-byte key");
  };
  std::vector<uint64_t> out;
  out.reserve(sources.size());
  for (const auto& s : sources) {
    switch (s.kind) {
      case K::KeyBit:
        need_key();
        out.push_back(bit_of(in.key, s.index));
        break;
      case K::TweakBit: out.push_back(bit_of(in.tweak, s.index)); break;
      case K::BlockBit: out.push_back(bit_of(in.block, s.index)); break;
      case K::TweakCell:
        if (tweak.empty()) tweak = to_cells(in.tweak, 4, pi.tweak_bytes * 2, CellOrder::NibblesMsb);
        out.push_back(tweak.at(s.index));
        break;
      case K::BlockCell:
        if (block.empty()) block = to_cells(in.block, pi.cell_bits, pi.cells, pi.order);
        out.push_back(block.at(s.index));
        break;
      case K::Material:
        if (mat.empty()) {
          need_key();
          mat = key_material(pi.name, in.key, rounds);
        }
        out.push_back(mat.at(s.index));
        break;
      case K::MaterialGarbler:
        if (mat_g.empty()) mat_g = key_material(pi.name, in.key_share, rounds);
        out.push_back(mat_g.at(s.index));
        break;
      case K::MaterialEvaluator:
        if (mat_e.empty()) {
          need_key();
          mat_e = key_material(pi.name, xor_bytes(in.key, in.key_share), rounds);
        }
        out.push_back(mat_e.at(s.index));
        break;
    }
  }
  return out;
}

Bytes BuiltPrimitive::output_bytes(std::span<const uint64_t> outputs) const {
  return from_cells(outputs, info->cell_bits, info->block_bytes, info->order);
}

BuiltPrimitive build_primitive(const PrimitiveSpec& spec) {
  const Def& d = def(spec.name);
  if (!d.info.supports(spec.key_mode))
    throw Error(d.info.name + " does not support key mode " + std::string(to_string(spec.key_mode)));
  if (spec.key_mode == KeyMode::GarblerConst && spec.const_key.size() != d.info.key_bytes)
    throw Error("const key mode needs the " + std::to_string(d.info.key_bytes) + "-byte key");
  detail::Ctx ctx(spec, d.info, resolve_rounds(d.info, spec.rounds));
  d.build(ctx);
  return std::move(ctx).finish();
}

namespace detail {

Ctx::Ctx(const PrimitiveSpec& s, const PrimitiveInfo& i, unsigned r) : b(8), spec(s), info(i), rounds(r) {
  if (spec.key_mode == KeyMode::GarblerConst) material_values_ = key_material(info.name, spec.const_key, rounds);
}

WireId Ctx::input(unsigned width, Party owner, InputSource::Kind kind, uint32_t index) {
  sources.push_back({kind, index});
  return b.add_input(width, owner);
}

Wires Ctx::block_cells() {
  Wires w;
  for (unsigned i = 0; i < info.cells; ++i)
    w.push_back(input(info.cell_bits, Party::Evaluator, InputSource::Kind::BlockCell, i));
  return w;
}

Wires Ctx::block_from_bits() {
  Wires bits, cells;
  const unsigned n = info.cell_bits;
  for (unsigned j = 0; j < info.cells * n; ++j)
    bits.push_back(input(1, Party::Evaluator, InputSource::Kind::BlockBit, j));
  Category prev = b.category();
  category(Category::Setup);
  for (unsigned i = 0; i < info.cells; ++i)
    cells.push_back(gadget_compose(b, std::span(bits).subspan(i * n, n)));
  category(prev);
  return cells;
}

Wires Ctx::tweak_cells() {
  Wires w;
  for (unsigned i = 0; i < info.tweak_bytes * 2; ++i)
    w.push_back(input(4, Party::Garbler, InputSource::Kind::TweakCell, i));
  return w;
}

Wires Ctx::tweak_from_bits() {
  Wires bits, cells;
  for (unsigned j = 0; j < info.tweak_bytes * 8; ++j)
    bits.push_back(input(1, Party::Garbler, InputSource::Kind::TweakBit, j));
  Category prev = b.category();
  category(Category::KeySchedule);
  for (unsigned c = 0; c < info.tweak_bytes * 2; ++c) {
    Wires nb;
    for (unsigned j : nibble_bits(c)) nb.push_back(bits[j]);
    cells.push_back(gadget_compose(b, nb));
  }
  category(prev);
  return cells;
}

const Wires& Ctx::key_bits() {
  if (key_bits_.empty())
    for (unsigned j = 0; j < info.key_bytes * 8; ++j)
      key_bits_.push_back(input(1, Party::Garbler, InputSource::Kind::KeyBit, j));
  return key_bits_;
}

WireId Ctx::key_cell(std::span<const unsigned> idx) {
  const Wires& k = key_bits();
  Wires w;
  for (unsigned j : idx) w.push_back(k.at(j));
  Category prev = b.category();
  category(Category::KeySchedule);
  WireId r = gadget_compose(b, w);
  category(prev);
  return r;
}

WireId Ctx::key_nibble(unsigned c) {
  auto bits = nibble_bits(c);
  return key_cell(bits);
}

WireId Ctx::key_byte(unsigned i) {
  auto bits = byte_bits(i);
  return key_cell(bits);
}

Wires Ctx::material(unsigned count, unsigned width) {
  Wires w;
  Category prev = b.category();
  category(Category::KeySchedule);
  for (unsigned i = 0; i < count; ++i) {
    const uint32_t idx = material_next_++;
    switch (spec.key_mode) {
      case KeyMode::GarblerConst: w.push_back(b.add_const(material_values_.at(idx), width)); break;
      case KeyMode::EvaluatorOt:
        w.push_back(input(width, Party::Evaluator, InputSource::Kind::Material, idx));
        break;
      case KeyMode::LinearShare: {
        WireId g = input(width, Party::Garbler, InputSource::Kind::MaterialGarbler, idx);
        WireId e = input(width, Party::Evaluator, InputSource::Kind::MaterialEvaluator, idx);
        w.push_back(b.add_xor(g, e));
        break;
      }
      case KeyMode::InCircuit: throw Error("material requested in in-circuit mode");
    }
  }
  category(prev);
  return w;
}

WireId Ctx::xor_const(WireId a, uint64_t v) {
  if (v == 0) return a;
  return b.add_xor(a, b.add_const(v, b.width(a)));
}

void Ctx::outputs(std::span<const WireId> w) {
  for (WireId o : w) b.mark_output(o);
}

BuiltPrimitive Ctx::finish() && {
  BuiltPrimitive p;
  p.spec = spec;
  p.info = &primitive_info(info.name);
  p.rounds = rounds;
  p.sources = std::move(sources);
  p.circuit = std::move(b).build();
  // Boolean baseline: every projection through a published S-box costs that S-box's ANDs.
  std::vector<const SboxAsset*> assets;
  for (const auto& n : sbox_names()) assets.push_back(&spn::sbox(n));
  for (const auto& g : p.circuit.gates()) {
    if (g.kind != GateKind::Proj) continue;
    for (const SboxAsset* a : assets)
      if (a->shared == g.table && a->ands) p.and_census[unsigned(g.category)] += *a->ands;
  }
  for (unsigned c = 0; c < kCategoryCount; ++c)
    if (and_override[c]) p.and_census[c] = *and_override[c];
  return p;
}

std::array<unsigned, 4> nibble_bits(unsigned c) {
  unsigned base = 8 * (c / 2) + (c % 2 ? 0 : 4);
  return {base, base + 1, base + 2, base + 3};
}

std::array<unsigned, 8> byte_bits(unsigned i) {
  std::array<unsigned, 8> r{};
  for (unsigned j = 0; j < 8; ++j) r[j] = 8 * i + j;
  return r;
}

Wires permute(const Wires& s, std::span<const int> p) {
  Wires o(p.size());
  for (size_t i = 0; i < p.size(); ++i) o[i] = s.at(size_t(p[i]));
  return o;
}

}  // namespace detail

}  // namespace projgc::spn
