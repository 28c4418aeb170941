#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace projgc {

using WireId = uint32_t;
using Table = std::shared_ptr<const std::vector<uint32_t>>;

enum class GateKind : uint8_t { Xor, Proj, Const };
enum class Party : uint8_t { Garbler, Evaluator };
// Census bucket a gate was emitted under.
enum class Category : uint8_t { Setup, KeySchedule, DataPath };
inline constexpr unsigned kCategoryCount = 3;

inline constexpr unsigned kMaxWidth = 16;

struct Gate {
  GateKind kind = GateKind::Xor;
  WireId out = 0;
  WireId a = 0;
  WireId b = 0;        // second XOR operand
  unsigned width = 0;  // output width
  Table table;         // projection entries, 2^width(a) of them
  uint64_t value = 0;  // constant value
  Category category = Category::DataPath;
};

struct InputWire {
  WireId wire = 0;
  Party owner = Party::Garbler;

  bool operator==(const InputWire&) const = default;
};

class Circuit {
 public:
  size_t num_wires() const { return widths_.size(); }
  unsigned width(WireId w) const { return widths_.at(w); }
  const std::vector<uint8_t>& widths() const { return widths_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<InputWire>& inputs() const { return inputs_; }
  const std::vector<WireId>& outputs() const { return outputs_; }
  unsigned max_width() const;
  size_t projection_count() const;

  // Throws CircuitError / WidthError on any invariant violation.
  void validate() const;

 private:
  friend class CircuitBuilder;
  friend Circuit make_circuit(std::vector<uint8_t>, std::vector<Gate>, std::vector<InputWire>,
                              std::vector<WireId>);
  std::vector<uint8_t> widths_;
  std::vector<Gate> gates_;
  std::vector<InputWire> inputs_;
  std::vector<WireId> outputs_;
};

// Assembles and validates a circuit from raw parts (used by parsers).
Circuit make_circuit(std::vector<uint8_t> widths, std::vector<Gate> gates,
                     std::vector<InputWire> inputs, std::vector<WireId> outputs);

class CircuitBuilder {
 public:
  explicit CircuitBuilder(unsigned nbar = 8);

  WireId add_input(unsigned width, Party owner = Party::Garbler);
  WireId add_xor(WireId a, WireId b);
  WireId add_proj(WireId a, Table table, unsigned m);
  WireId add_proj(WireId a, std::vector<uint32_t> table, unsigned m);
  WireId add_const(uint64_t value, unsigned width);
  void mark_output(WireId w);

  // XOR of a non-empty list of equal-width wires.
  WireId xor_all(std::span<const WireId> wires);

  void set_category(Category c) { category_ = c; }
  Category category() const { return category_; }
  unsigned nbar() const { return nbar_; }
  unsigned width(WireId w) const;

  Circuit build() &&;
  Circuit build() const&;

 private:
  WireId new_wire(unsigned width);
  void check_wire(WireId w) const;

  unsigned nbar_;
  Category category_ = Category::DataPath;
  Circuit c_;
};

enum class DecomposeStrategy { Tree, Naive };

// Concatenation, first wire in the lowest bits. One shift projection per source.
WireId gadget_compose(CircuitBuilder& b, std::span<const WireId> wires);
// Slices, first part from the lowest bits.
std::vector<WireId> gadget_decompose(CircuitBuilder& b, WireId w, std::span<const unsigned> parts,
                                     DecomposeStrategy strategy = DecomposeStrategy::Tree);
WireId gadget_constant(CircuitBuilder& b, uint64_t value, unsigned width);

// Plaintext evaluation. Values are ordered as c.inputs() / c.outputs().
std::vector<uint64_t> eval_plain(const Circuit& c, std::span<const uint64_t> inputs);
// Same, returning the value of every wire.
std::vector<uint64_t> eval_plain_all(const Circuit& c, std::span<const uint64_t> inputs);

Table make_table(std::vector<uint32_t> entries);

}  // namespace projgc
