#include "projgc/cost.hpp"

namespace projgc {

SchemeCost& SchemeCost::operator+=(const SchemeCost& o) {
  garble_h += o.garble_h;
  eval_h += o.eval_h;
  ciphertexts += o.ciphertexts;
  bits += o.bits;
  return *this;
}

GateCost projection_cost(unsigned n, unsigned m, unsigned kappa) {
  GateCost g;
  g.n = n;
  g.m = m;
  g.garble_h = uint64_t(1) << n;
  g.eval_h = 1;
  g.ciphertexts = (uint64_t(1) << n) - 1;
  g.bits = g.ciphertexts * (kappa + m);
  return g;
}

SchemeCost half_gates_cost(uint64_t and_gates, unsigned kappa) {
  double a = double(and_gates);
  return {4 * a, 2 * a, 2 * a, 2 * a * kappa};
}

SchemeCost three_halves_cost(uint64_t and_gates, unsigned kappa) {
  double a = double(and_gates);
  return {6 * a, 3 * a, 1.5 * a, 1.5 * a * kappa};
}

Ratios CostReport::ratios(const SchemeCost& base, const SchemeCost& ours) {
  return {base.garble_h / ours.garble_h, base.ciphertexts / ours.ciphertexts,
          base.eval_h / ours.eval_h};
}

CostReport count_costs(const Circuit& c, std::optional<BooleanCount> boolean_equivalent,
                       unsigned kappa) {
  CostReport r;
  r.kappa = kappa;
  for (const auto& g : c.gates()) {
    if (g.kind != GateKind::Proj) continue;
    GateCost gc = projection_cost(c.width(g.a), g.width, kappa);
    gc.out = g.out;
    r.projective.garble_h += double(gc.garble_h);
    r.projective.eval_h += double(gc.eval_h);
    r.projective.ciphertexts += double(gc.ciphertexts);
    r.table_bits += gc.bits;
    r.census[size_t(g.category)][gc.n] += 1;
    r.per_gate.push_back(gc);
  }
  r.projective.bits = double(r.table_bits);
  if (boolean_equivalent) {
    r.half_gates = half_gates_cost(boolean_equivalent->and_gates, kappa);
    r.three_halves = three_halves_cost(boolean_equivalent->and_gates, kappa);
  }
  return r;
}

}  // namespace projgc
