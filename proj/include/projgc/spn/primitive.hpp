#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "projgc/circuit.hpp"
#include "projgc/cost.hpp"

namespace projgc::spn {

using Bytes = std::vector<uint8_t>;

enum class KeyMode : uint8_t {
  InCircuit,     // key bits are garbler inputs, schedule computed in the circuit
  GarblerConst,  // round-key material baked in as secret constants
  EvaluatorOt,   // round-key material is an evaluator input
  LinearShare,   // each party feeds the schedule of its key share, recombined by XOR
};

std::string_view to_string(KeyMode m);
KeyMode parse_key_mode(std::string_view s);  // in-circuit|const|ot|share

// How byte strings map to cells.
enum class CellOrder : uint8_t {
  Bytes,        // cell i = byte i
  NibblesMsb,   // cell i = nibble i, high nibble of each byte first
  PackedLsb,    // cells of `cell_bits` packed little-endian, bit j = bit j%8 of byte j/8
};

struct PrimitiveInfo {
  std::string name;
  unsigned cell_bits = 0;
  unsigned block_bytes = 0;
  unsigned key_bytes = 0;
  unsigned tweak_bytes = 0;
  unsigned cells = 0;
  unsigned default_rounds = 0;
  CellOrder order = CellOrder::Bytes;
  std::vector<KeyMode> modes;
  // Round count is a builder parameter (MANTIS, Fides); fixed otherwise.
  bool variable_rounds = false;

  bool supports(KeyMode m) const;
};

const std::vector<PrimitiveInfo>& primitives();
const PrimitiveInfo& primitive_info(std::string_view name);  // throws Error

struct PrimitiveSpec {
  std::string name;
  KeyMode key_mode = KeyMode::InCircuit;
  unsigned rounds = 0;  // 0 = the primitive's default
  Bytes const_key;      // GarblerConst only: the key whose schedule is baked in
};

struct PrimitiveInputs {
  Bytes key;
  Bytes tweak;
  Bytes block;
  Bytes key_share;  // LinearShare: garbler share; the evaluator holds key ^ key_share
};

// Where each circuit input takes its value from.
struct InputSource {
  enum class Kind : uint8_t {
    KeyBit,
    TweakBit,
    TweakCell,
    BlockBit,
    BlockCell,
    Material,
    MaterialGarbler,
    MaterialEvaluator,
  };
  Kind kind = Kind::BlockCell;
  uint32_t index = 0;
};

struct BuiltPrimitive {
  PrimitiveSpec spec;
  const PrimitiveInfo* info = nullptr;
  unsigned rounds = 0;
  Circuit circuit;
  std::array<uint64_t, kCategoryCount> and_census{};  // Boolean baseline ANDs per category
  std::vector<InputSource> sources;                   // parallel to circuit.inputs()

  uint64_t and_total() const;
  BooleanCount boolean() const { return {and_total(), std::nullopt}; }
  std::vector<uint64_t> input_values(const PrimitiveInputs& in) const;
  Bytes output_bytes(std::span<const uint64_t> outputs) const;
};

// Throws Error for an unknown name, an unsupported key mode or a bad round count.
BuiltPrimitive build_primitive(const PrimitiveSpec& spec);

// Round-key material of the key modes that do not run the schedule in the circuit.
// Linear in the key for primitives that support LinearShare.
std::vector<uint64_t> key_material(std::string_view name, const Bytes& key, unsigned rounds = 0);

// Byte string <-> cells under a primitive's cell order.
std::vector<uint64_t> to_cells(const Bytes& bytes, unsigned cell_bits, unsigned count, CellOrder order);
Bytes from_cells(std::span<const uint64_t> cells, unsigned cell_bits, unsigned byte_len,
                 CellOrder order);

// Builder fragments exposed for direct testing. State cells use the AES column-major layout.
std::vector<WireId> mixcolumns_doubling_rewrite(CircuitBuilder& b, std::span<const WireId> state);
// One full AES round on 16 byte wires with a 16-wire round key.
std::vector<WireId> aes_round(CircuitBuilder& b, std::span<const WireId> state,
                              std::span<const WireId> round_key);
// Piccolo F through 12 nibble projections; cells are the high nibble first.
std::vector<WireId> piccolo_f_prime(CircuitBuilder& b, std::span<const WireId> cells);

}  // namespace projgc::spn
