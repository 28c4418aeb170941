#pragma once

// Machine-readable records and aligned text tables for cost and run reports.

#include <json.hpp>

#include <array>
#include <span>
#include <string>

#include "projgc/cost.hpp"
#include "projgc/proto/runner.hpp"
#include "projgc/spn/primitive.hpp"

namespace projgc::proto {

struct PrimitiveSummary {
  std::string name;
  std::string key_mode;
  unsigned rounds = 0;
  std::array<uint64_t, kCategoryCount> ands{};
  CostReport cost;  // whole circuit, Boolean baseline from the AND census
  Ratios vs_half_gates;
  Ratios vs_three_halves;
};

PrimitiveSummary summarize(const spn::BuiltPrimitive& p, unsigned kappa = 128);

// "128 1-bit + 49 8-bit", empty for an empty census.
std::string census_text(const Census& c);
std::string_view category_name(Category c);

nlohmann::json to_json(const CostReport& r);
nlohmann::json to_json(const PrimitiveSummary& s);
nlohmann::json to_json(const RunResult& r);

// Totals of one circuit, one row per scheme.
std::string cost_table(const CostReport& r);
// Setup / key schedule / data path columns, AND count above projection census.
std::string census_table(std::span<const PrimitiveSummary> rows);
// Garble / Send / Eval improvement factors against both baselines.
std::string ratio_table(std::span<const PrimitiveSummary> rows);

}  // namespace projgc::proto
