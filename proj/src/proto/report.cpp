#include "projgc/proto/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

namespace projgc::proto {

namespace {

using Row = std::vector<std::string>;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string render(const std::vector<Row>& rows, size_t rule_after = 1) {
  std::vector<size_t> w;
  for (const auto& r : rows) {
    if (w.size() < r.size()) w.resize(r.size(), 0);
    for (size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  }
  std::ostringstream os;
  for (size_t k = 0; k < rows.size(); ++k) {
    std::string line;
    for (size_t i = 0; i < rows[k].size(); ++i) {
      if (i) line += "  ";
      const auto& cell = rows[k][i];
      // Text left-aligned in the first column, everything else right-aligned.
      line += i == 0 ? cell + std::string(w[i] - cell.size(), ' ') : std::string(w[i] - cell.size(), ' ') + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
    if (k + 1 == rule_after) {
      size_t total = 0;
      for (auto x : w) total += x;
      os << std::string(total + 2 * (w.size() - 1), '-') << '\n';
    }
  }
  return os.str();
}

nlohmann::json census_json(const Census& c) {
  nlohmann::json j = nlohmann::json::object();
  for (auto [n, count] : c) j[std::to_string(n)] = count;
  return j;
}

nlohmann::json scheme_json(const SchemeCost& s) {
  return {{"garble_h", s.garble_h}, {"eval_h", s.eval_h}, {"ciphertexts", s.ciphertexts}, {"bytes", s.bytes()}};
}

nlohmann::json ratios_json(const Ratios& r) { return {{"garble", r.garble}, {"send", r.send}, {"eval", r.eval}}; }

nlohmann::json phase_json(const PhaseStats& p) {
  return {{"bytes_to_evaluator", p.bytes_to_evaluator},
          {"bytes_to_garbler", p.bytes_to_garbler},
          {"messages_to_evaluator", p.messages_to_evaluator},
          {"messages_to_garbler", p.messages_to_garbler}};
}

}  // namespace

std::string_view category_name(Category c) {
  switch (c) {
    case Category::Setup: return "setup";
    case Category::KeySchedule: return "key_schedule";
    case Category::DataPath: return "data_path";
  }
  return "?";
}

PrimitiveSummary summarize(const spn::BuiltPrimitive& p, unsigned kappa) {
  PrimitiveSummary s;
  s.name = p.spec.name;
  s.key_mode = std::string(spn::to_string(p.spec.key_mode));
  s.rounds = p.rounds;
  s.ands = p.and_census;
  s.cost = count_costs(p.circuit, p.boolean(), kappa);
  s.vs_half_gates = CostReport::ratios(*s.cost.half_gates, s.cost.projective);
  s.vs_three_halves = CostReport::ratios(*s.cost.three_halves, s.cost.projective);
  return s;
}

std::string census_text(const Census& c) {
  std::string out;
  for (auto [n, count] : c) {
    if (!count) continue;
    if (!out.empty()) out += " + ";
    out += std::to_string(count) + " " + std::to_string(n) + "-bit";
  }
  return out;
}

nlohmann::json to_json(const CostReport& r) {
  nlohmann::json j;
  j["kappa"] = r.kappa;
  j["projective"] = scheme_json(r.projective);
  j["table_bits"] = r.table_bits;
  j["table_bytes_padded"] = r.table_bytes_padded();
  j["projection_gates"] = r.per_gate.size();
  if (r.half_gates) {
    j["half_gates"] = scheme_json(*r.half_gates);
    j["ratios_half_gates"] = ratios_json(CostReport::ratios(*r.half_gates, r.projective));
  }
  if (r.three_halves) {
    j["three_halves"] = scheme_json(*r.three_halves);
    j["ratios_three_halves"] = ratios_json(CostReport::ratios(*r.three_halves, r.projective));
  }
  nlohmann::json census = nlohmann::json::object();
  for (unsigned c = 0; c < kCategoryCount; ++c)
    census[std::string(category_name(Category(c)))] = census_json(r.census[c]);
  j["census"] = census;
  return j;
}

nlohmann::json to_json(const PrimitiveSummary& s) {
  nlohmann::json j;
  j["primitive"] = s.name;
  j["key_mode"] = s.key_mode;
  j["rounds"] = s.rounds;
  nlohmann::json ands = nlohmann::json::object();
  for (unsigned c = 0; c < kCategoryCount; ++c) ands[std::string(category_name(Category(c)))] = s.ands[c];
  j["and_gates"] = ands;
  j["cost"] = to_json(s.cost);
  return j;
}

nlohmann::json to_json(const RunResult& r) {
  return {{"outputs", r.outputs},
          {"offline", phase_json(r.offline)},
          {"online", phase_json(r.online)},
          {"table_payload_bytes", r.table_payload_bytes},
          {"ot_transfers", r.ot_transfers},
          {"garble_hash_calls", r.garble_hash_calls},
          {"eval_hash_calls", r.eval_hash_calls}};
}

std::string cost_table(const CostReport& r) {
  std::vector<Row> rows{{"scheme", "garble H", "eval H", "ciphertexts", "bytes"}};
  auto add = [&](const std::string& name, const SchemeCost& s) {
    rows.push_back({name, fixed(s.garble_h, 0), fixed(s.eval_h, 0), fixed(s.ciphertexts, 1), fixed(s.bytes(), 1)});
  };
  add("projective", r.projective);
  if (r.half_gates) add("half-gates", *r.half_gates);
  if (r.three_halves) add("three-halves", *r.three_halves);
  std::string out = "kappa " + std::to_string(r.kappa) + ", " + std::to_string(r.per_gate.size()) +
                    " projection gates, table payload " + std::to_string(r.table_bytes_padded()) + " bytes\n";
  return out + render(rows);
}

std::string census_table(std::span<const PrimitiveSummary> rows) {
  std::vector<Row> t{{"primitive", "setup", "key schedule", "data path"}};
  for (const auto& s : rows) {
    Row ands{s.name}, proj{""};
    for (unsigned c = 0; c < kCategoryCount; ++c) {
      ands.push_back(s.ands[c] ? std::to_string(s.ands[c]) + " AND" : "");
      proj.push_back(census_text(s.cost.census[c]));
    }
    t.push_back(std::move(ands));
    t.push_back(std::move(proj));
  }
  return render(t);
}

std::string ratio_table(std::span<const PrimitiveSummary> rows) {
  std::vector<Row> t{{"primitive", "base", "garble", "send", "eval"}};
  for (const auto& s : rows) {
    auto add = [&](const std::string& name, const std::string& base, const Ratios& r) {
      t.push_back({name, base, "x" + fixed(r.garble, 2), "x" + fixed(r.send, 2), "x" + fixed(r.eval, 2)});
    };
    add(s.name, "half-gates", s.vs_half_gates);
    add("", "three-halves", s.vs_three_halves);
  }
  return render(t);
}

}  // namespace projgc::proto
