#include "reference/random_circuit.hpp"

namespace reftest {

using namespace projgc;

Circuit random_circuit(Prg& rng, const RandomCircuitShape& shape) {
  CircuitBuilder b(shape.max_width);
  std::vector<WireId> wires;
  unsigned inputs = 1 + unsigned(rng.uniform(shape.max_inputs));
  for (unsigned i = 0; i < inputs; ++i) {
    unsigned w = 1 + unsigned(rng.uniform(shape.max_width));
    wires.push_back(b.add_input(w, rng.uniform(2) ? Party::Evaluator : Party::Garbler));
  }
  unsigned gates = 1 + unsigned(rng.uniform(shape.max_gates));
  for (unsigned g = 0; g < gates; ++g) {
    unsigned kind = unsigned(rng.uniform(10));
    WireId a = wires[rng.uniform(wires.size())];
    if (kind < 4) {
      // XOR with any other wire of the same width, else fall through to a projection
      std::vector<WireId> same;
      for (WireId w : wires)
        if (b.width(w) == b.width(a)) same.push_back(w);
      WireId o = same[rng.uniform(same.size())];
      wires.push_back(b.add_xor(a, o));
      continue;
    }
    if (kind == 9) {
      unsigned w = 1 + unsigned(rng.uniform(shape.max_width));
      wires.push_back(b.add_const(rng.uniform(uint64_t(1) << w), w));
      continue;
    }
    unsigned n = b.width(a);
    unsigned m = 1 + unsigned(rng.uniform(shape.max_width));
    std::vector<uint32_t> t(size_t(1) << n);
    for (auto& e : t) e = uint32_t(rng.uniform(uint64_t(1) << m));
    wires.push_back(b.add_proj(a, std::move(t), m));
  }
  // Always expose the last wire, plus a random selection of the others.
  for (size_t i = 0; i + 1 < wires.size(); ++i)
    if (rng.uniform(4) == 0) b.mark_output(wires[i]);
  b.mark_output(wires.back());
  return std::move(b).build();
}

unsigned input_bits(const Circuit& c) {
  unsigned s = 0;
  for (const auto& in : c.inputs()) s += c.width(in.wire);
  return s;
}

}  // namespace reftest
