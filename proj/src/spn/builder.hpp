#pragma once

// Shared scaffolding for the cipher builders. Not installed.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "projgc/spn/primitive.hpp"
#include "projgc/spn/sbox.hpp"

namespace projgc::spn::detail {

using Wires = std::vector<WireId>;

class Ctx {
 public:
  Ctx(const PrimitiveSpec& spec, const PrimitiveInfo& info, unsigned rounds);

  CircuitBuilder b;
  const PrimitiveSpec& spec;
  const PrimitiveInfo& info;
  const unsigned rounds;
  std::vector<InputSource> sources;

  bool in_circuit() const { return spec.key_mode == KeyMode::InCircuit; }
  void category(Category c) { b.set_category(c); }

  WireId input(unsigned width, Party owner, InputSource::Kind kind, uint32_t index);

  // Evaluator-owned block at cell width.
  Wires block_cells();
  // Evaluator-owned block as single bits, composed into cells under the Setup category.
  Wires block_from_bits();
  // Garbler-owned tweak as 4-bit cells, or as bits composed under the key-schedule category.
  Wires tweak_cells();
  Wires tweak_from_bits();

  // Garbler-owned key bits (bit j = bit j%8 of key byte j/8), created on first use.
  const Wires& key_bits();
  // Composes the given key bits, least significant first.
  WireId key_cell(std::span<const unsigned> bit_indices);
  WireId key_nibble(unsigned c);  // nibble c, high nibble of each byte first
  WireId key_byte(unsigned i);

  // Next `count` cells of round-key material in the non-in-circuit modes.
  Wires material(unsigned count, unsigned width);

  WireId sbox(WireId x, const SboxAsset& s) { return b.add_proj(x, s.shared, s.m); }
  WireId x(WireId a, WireId c) { return b.add_xor(a, c); }
  WireId xor_const(WireId a, uint64_t v);
  void outputs(std::span<const WireId> w);

  BuiltPrimitive finish() &&;

  // Overrides the per-S-box tally for a category (published constant counts).
  std::array<std::optional<uint64_t>, kCategoryCount> and_override;

 private:
  Wires key_bits_;
  std::vector<uint64_t> material_values_;
  unsigned material_next_ = 0;
};

// Bit positions of nibble c under the high-nibble-first order.
std::array<unsigned, 4> nibble_bits(unsigned c);
std::array<unsigned, 8> byte_bits(unsigned i);

Wires permute(const Wires& s, std::span<const int> p);  // out[i] = s[p[i]]

using Builder = void (*)(Ctx&);
using Material = std::vector<uint64_t> (*)(const PrimitiveInfo&, const Bytes& key, unsigned rounds);

void build_aes(Ctx&);
void build_craft(Ctx&);
void build_fides(Ctx&);
void build_mantis(Ctx&);
void build_midori(Ctx&);
void build_piccolo(Ctx&);
void build_skinny(Ctx&);
void build_twine(Ctx&);
void build_wage(Ctx&);

std::vector<uint64_t> material_aes(const PrimitiveInfo&, const Bytes&, unsigned);
std::vector<uint64_t> material_craft(const PrimitiveInfo&, const Bytes&, unsigned);
std::vector<uint64_t> material_mantis(const PrimitiveInfo&, const Bytes&, unsigned);
std::vector<uint64_t> material_midori(const PrimitiveInfo&, const Bytes&, unsigned);
std::vector<uint64_t> material_piccolo(const PrimitiveInfo&, const Bytes&, unsigned);
std::vector<uint64_t> material_skinny(const PrimitiveInfo&, const Bytes&, unsigned);
std::vector<uint64_t> material_twine(const PrimitiveInfo&, const Bytes&, unsigned);

}  // namespace projgc::spn::detail
