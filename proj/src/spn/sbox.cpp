#include "projgc/spn/sbox.hpp"

#include <charconv>
#include <map>
#include <mutex>
#include <sstream>

#include "projgc/error.hpp"

namespace projgc::spn {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kEmbeddedTables[];
extern const unsigned kEmbeddedTableCount;
}  // namespace detail

uint64_t table_checksum(std::span<const uint32_t> table) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint32_t e : table)
    for (int i = 0; i < 4; ++i) {
      h ^= (e >> (8 * i)) & 0xff;
      h *= 0x100000001b3ull;
    }
  return h;
}

namespace {

uint64_t parse_hex(std::string_view s) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (ec != std::errc{} || p != s.data() + s.size()) throw FormatError("bad hex value '" + std::string(s) + "'");
  return v;
}

}  // namespace

SboxAsset parse_sbox_asset(std::string_view text) {
  SboxAsset a;
  std::istringstream in{std::string(text)};
  std::string line, formula;
  enum { Header, InTable, InFormula } state = Header;
  bool have_checksum = false;
  while (std::getline(in, line)) {
    if (state == InFormula) {
      formula += line + "\n";
      continue;
    }
    if (!line.empty() && line[0] == '#') {
      if (a.source.empty()) a.source = line.substr(line.find_first_not_of("# "));
      continue;
    }
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (state == InTable) {
      if (key == "formula") {
        state = InFormula;
        continue;
      }
      std::string tok = key;
      do a.table.push_back(uint32_t(parse_hex(tok)));
      while (ls >> tok);
      continue;
    }
    if (key == "name") ls >> a.name;
    else if (key == "width") ls >> a.n >> a.m;
    else if (key == "ands") {
      unsigned v = 0;
      ls >> v;
      a.ands = v;
    } else if (key == "checksum") {
      std::string h;
      ls >> h;
      a.checksum = parse_hex(h);
      have_checksum = true;
    } else if (key == "table") state = InTable;
    else throw FormatError("unknown S-box header field '" + key + "'");
  }
  if (a.name.empty() || a.n == 0 || a.m == 0 || a.n > kMaxWidth || a.m > 32)
    throw FormatError("S-box file lacks a valid name or width");
  if (a.table.size() != (size_t(1) << a.n))
    throw FormatError("S-box " + a.name + ": table has " + std::to_string(a.table.size()) + " entries");
  for (uint32_t e : a.table)
    if (a.m < 32 && (e >> a.m)) throw FormatError("S-box " + a.name + ": entry exceeds output width");
  if (!have_checksum) throw FormatError("S-box " + a.name + ": missing checksum");
  if (table_checksum(a.table) != a.checksum) throw FormatError("S-box " + a.name + ": checksum mismatch");
  if (!formula.empty()) {
    try {
      a.formula = parse_formula(formula);
    } catch (const Error& e) {
      throw FormatError("S-box " + a.name + ": " + e.what());
    }
  }
  a.shared = make_table(a.table);
  return a;
}

namespace {

const std::map<std::string, SboxAsset, std::less<>>& registry() {
  static const auto reg = [] {
    std::map<std::string, SboxAsset, std::less<>> m;
    for (unsigned i = 0; i < detail::kEmbeddedTableCount; ++i) {
      auto a = parse_sbox_asset(detail::kEmbeddedTables[i].second);
      m.emplace(a.name, std::move(a));
    }
    return m;
  }();
  return reg;
}

}  // namespace

const SboxAsset& sbox(std::string_view name) {
  auto& r = registry();
  auto it = r.find(name);
  if (it == r.end()) throw Error("unknown S-box '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> sbox_names() {
  std::vector<std::string> v;
  for (const auto& [k, _] : registry()) v.push_back(k);
  return v;
}

std::vector<uint32_t> sbox_from_formula(const SboxAsset& asset) {
  if (!asset.formula) throw Error("S-box " + asset.name + " has no formula");
  return expand_formula(*asset.formula);
}

bool SboxVerification::ok() const {
  if (!checksum_ok) return false;
  if (!has_formula) return true;
  return formula_match && (!expected_ands || *expected_ands == formula_ands);
}

SboxVerification verify_sbox(const SboxAsset& a) {
  SboxVerification v;
  v.checksum_ok = table_checksum(a.table) == a.checksum;
  if (a.n == a.m) {
    std::vector<bool> seen(a.table.size());
    v.bijective = true;
    for (uint32_t e : a.table) {
      if (e >= seen.size() || seen[e]) v.bijective = false;
      else seen[e] = true;
    }
  }
  v.expected_ands = a.ands;
  if (a.formula) {
    v.has_formula = true;
    auto r = verify_formula(*a.formula, a.table);
    v.formula_match = r.match;
    v.formula_ands = r.and_count;
  }
  return v;
}

}  // namespace projgc::spn
