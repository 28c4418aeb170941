#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "projgc/circuit.hpp"
#include "projgc/formula.hpp"

namespace projgc::spn {

struct SboxAsset {
  std::string name;
  std::string source;  // first comment line of the data file
  unsigned n = 0;
  unsigned m = 0;
  std::vector<uint32_t> table;
  Table shared;  // same entries, ready for add_proj
  std::optional<BooleanFormula> formula;
  std::optional<unsigned> ands;  // AND gates per evaluation in the Boolean baseline
  uint64_t checksum = 0;
};

// FNV-1a 64 over the entries as little-endian u32.
uint64_t table_checksum(std::span<const uint32_t> table);

// Parses one data file; throws FormatError on a malformed file or a checksum mismatch.
SboxAsset parse_sbox_asset(std::string_view text);

// Embedded assets, parsed once. Throws Error for an unknown name.
const SboxAsset& sbox(std::string_view name);
std::vector<std::string> sbox_names();

// Throws Error if the asset has no formula.
std::vector<uint32_t> sbox_from_formula(const SboxAsset& asset);

struct SboxVerification {
  bool checksum_ok = false;
  bool bijective = false;
  bool has_formula = false;
  bool formula_match = false;
  unsigned formula_ands = 0;
  std::optional<unsigned> expected_ands;

  // Formula (when present) matches the table and its AND count.
  bool ok() const;
};

SboxVerification verify_sbox(const SboxAsset& asset);

}  // namespace projgc::spn
