#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "projgc/circuit.hpp"

namespace projgc {

struct SchemeCost {
  double garble_h = 0;
  double eval_h = 0;
  double ciphertexts = 0;
  double bits = 0;

  double bytes() const { return bits / 8; }
  SchemeCost& operator+=(const SchemeCost& o);
};

struct BooleanCount {
  uint64_t and_gates = 0;
  std::optional<uint64_t> xor_gates;
};

struct GateCost {
  WireId out = 0;
  unsigned n = 0;
  unsigned m = 0;
  uint64_t garble_h = 0;
  uint64_t eval_h = 0;
  uint64_t ciphertexts = 0;
  uint64_t bits = 0;
};

// Projection gates per category, keyed by input width.
using Census = std::map<unsigned, uint64_t>;

struct Ratios {
  double garble = 0;
  double send = 0;
  double eval = 0;
};

struct CostReport {
  unsigned kappa = 128;
  SchemeCost projective;
  uint64_t table_bits = 0;  // exact, equals projective.bits
  std::optional<SchemeCost> half_gates;
  std::optional<SchemeCost> three_halves;
  std::vector<GateCost> per_gate;  // one entry per projection gate
  std::array<Census, kCategoryCount> census;

  // Payload bytes once all rows are packed and the tail is padded.
  uint64_t table_bytes_padded() const { return (table_bits + 7) / 8; }
  // Improvement factors over a baseline (>1 means this scheme is cheaper).
  static Ratios ratios(const SchemeCost& base, const SchemeCost& ours);
};

GateCost projection_cost(unsigned n, unsigned m, unsigned kappa);
SchemeCost half_gates_cost(uint64_t and_gates, unsigned kappa);
SchemeCost three_halves_cost(uint64_t and_gates, unsigned kappa);

CostReport count_costs(const Circuit& c, std::optional<BooleanCount> boolean_equivalent,
                       unsigned kappa);

}  // namespace projgc
