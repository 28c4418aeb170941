#pragma once

#include "projgc/circuit.hpp"
#include "projgc/prg.hpp"

namespace reftest {

struct RandomCircuitShape {
  unsigned max_gates = 32;
  unsigned max_width = 8;
  unsigned max_inputs = 4;
};

projgc::Circuit random_circuit(projgc::Prg& rng, const RandomCircuitShape& shape = {});

// Total bits over all inputs.
unsigned input_bits(const projgc::Circuit& c);

}  // namespace reftest
