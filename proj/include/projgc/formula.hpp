#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace projgc {

// Straight-line NOT/AND/XOR program over single bits. Variable 0..inputs-1 are the
// input bits, least significant first; outputs list the variables forming the result.
struct BooleanFormula {
  enum class Op : uint8_t { Not, And, Xor, One };
  struct Step {
    Op op;
    uint32_t out;
    uint32_t a = 0;
    uint32_t b = 0;
  };

  std::vector<std::string> names;
  size_t input_count = 0;
  std::vector<uint32_t> outputs;
  std::vector<Step> steps;

  unsigned and_count() const;
  unsigned arity() const { return unsigned(input_count); }
};

// Text form:
//   in x0 x1 x2 x3
//   out y0 y1 y2 y3
//   a = ~(x0 ^ x2)
//   b = x0 ^ (a & x3)
// `~` binds tighter than `&`, which binds tighter than `^`. Names are assigned once.
BooleanFormula parse_formula(std::string_view text);

uint32_t eval_formula(const BooleanFormula& f, uint32_t x);
std::vector<uint32_t> expand_formula(const BooleanFormula& f);

struct FormulaReport {
  bool match = false;
  unsigned and_count = 0;
  size_t mismatches = 0;
};

FormulaReport verify_formula(const BooleanFormula& f, std::span<const uint32_t> table);

}  // namespace projgc
