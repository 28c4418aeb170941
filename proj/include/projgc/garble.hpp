#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "projgc/circuit.hpp"
#include "projgc/hash.hpp"
#include "projgc/label.hpp"

namespace projgc {

// What the evaluator learns about a gate: no tables, no constant values.
struct GateShape {
  GateKind kind = GateKind::Xor;
  WireId out = 0;
  WireId a = 0;
  WireId b = 0;
  uint8_t width = 0;

  bool operator==(const GateShape&) const = default;
};

struct Topology {
  std::vector<uint8_t> widths;
  std::vector<GateShape> gates;
  std::vector<InputWire> inputs;
  std::vector<WireId> outputs;

  bool operator==(const Topology&) const = default;
};

Topology topology_of(const Circuit& c);

struct GarbledCircuit {
  unsigned kappa = 120;
  unsigned nbar = 8;
  Topology topology;
  // Rows of every projection gate in gate order. A gate with an n-bit input owns
  // 2^n - 1 rows for pointers 1..2^n-1; the pointer-0 row is all-zero and omitted.
  std::vector<Block> rows;
  // First row of each gate (entries for non-projection gates are unused).
  std::vector<uint32_t> row_offset;

  uint64_t table_bits() const;
  // The gate's table with the omitted zero row restored at index 0.
  std::vector<Block> full_rows(size_t gate_index) const;

  bool operator==(const GarbledCircuit&) const = default;
};

struct EncodingInfo {
  unsigned kappa = 120;
  std::vector<Label> zero_labels;    // one per circuit input, in input order
  std::vector<OffsetMatrix> offsets;  // offsets[n-1] = R_n, n = 1..nbar
  std::vector<Party> owners;

  const OffsetMatrix& offset(unsigned n) const { return offsets.at(n - 1); }
};

struct DecodingInfo {
  enum class Mode : uint8_t { Plain, Auth };
  Mode mode = Mode::Plain;
  std::vector<WireId> wires;    // output wire ids, used as digest tweaks
  std::vector<uint8_t> widths;  // per output
  std::vector<uint64_t> d;      // plain mode: lsb of each output zero label
  // auth mode: per output, (digest, value) for all 2^width labels, sorted by digest
  std::vector<std::vector<std::pair<Block, uint64_t>>> auth;

  bool operator==(const DecodingInfo&) const = default;
};

struct GarbleOptions {
  bool auth = false;
  unsigned threads = 1;  // results are identical for any thread count
  const TweakableHash* hash = nullptr;
};

struct Garbling {
  GarbledCircuit gc;
  EncodingInfo e;
  DecodingInfo d;
};

const TweakableHash& default_hash();

Garbling garble(const Circuit& c, const SchemeParams& params, Prg& rng,
                const GarbleOptions& opts = {});

std::vector<Label> encode(const EncodingInfo& e, std::span<const uint64_t> x);

// Optional `pointers` receives the row pointer used at each projection gate.
std::vector<Label> eval(const GarbledCircuit& gc, std::span<const Label> inputs,
                        const TweakableHash& h = default_hash(),
                        std::vector<uint64_t>* pointers = nullptr);

std::vector<uint64_t> decode(const DecodingInfo& d, std::span<const Label> outputs);

// nullopt when any output label is not one of the genuine labels.
std::optional<std::vector<uint64_t>> decode_auth(const DecodingInfo& d,
                                                 std::span<const Label> outputs,
                                                 const TweakableHash& h = default_hash());

// Digest listed for an output label in auth mode.
Block auth_digest(const TweakableHash& h, const Block& label, WireId wire);

}  // namespace projgc
