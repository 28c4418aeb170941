#include "projgc/formula.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "projgc/error.hpp"

namespace projgc {

unsigned BooleanFormula::and_count() const {
  unsigned n = 0;
  for (const auto& s : steps) n += s.op == Op::And;
  return n;
}

namespace {

class Parser {
 public:
  Parser(BooleanFormula& f, std::map<std::string, uint32_t>& vars) : f_(f), vars_(vars) {}

  uint32_t parse(std::string_view expr) {
    s_ = expr;
    pos_ = 0;
    uint32_t v = parse_xor();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw CircuitError("formula: " + why + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  uint32_t temp(BooleanFormula::Op op, uint32_t a, uint32_t b) {
    uint32_t id = uint32_t(f_.names.size());
    f_.names.push_back("_t" + std::to_string(id));
    f_.steps.push_back({op, id, a, b});
    return id;
  }
  uint32_t parse_xor() {
    uint32_t v = parse_and();
    while (eat('^')) v = temp(BooleanFormula::Op::Xor, v, parse_and());
    return v;
  }
  uint32_t parse_and() {
    uint32_t v = parse_unary();
    while (eat('&')) v = temp(BooleanFormula::Op::And, v, parse_unary());
    return v;
  }
  uint32_t parse_unary() {
    if (eat('~')) return temp(BooleanFormula::Op::Not, parse_unary(), 0);
    if (eat('(')) {
      uint32_t v = parse_xor();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (name.empty()) fail("expected operand");
    if (name == "1") return temp(BooleanFormula::Op::One, 0, 0);
    auto it = vars_.find(name);
    if (it == vars_.end()) fail("unknown name '" + name + "'");
    return it->second;
  }

  BooleanFormula& f_;
  std::map<std::string, uint32_t>& vars_;
  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

BooleanFormula parse_formula(std::string_view text) {
  BooleanFormula f;
  std::map<std::string, uint32_t> vars;
  std::vector<std::string> out_names;
  bool have_in = false;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "in") {
      std::string n;
      while (ls >> n) {
        if (vars.count(n)) throw CircuitError("formula: duplicate input " + n);
        vars[n] = uint32_t(f.names.size());
        f.names.push_back(n);
      }
      f.input_count = f.names.size();
      have_in = true;
      continue;
    }
    if (head == "out") {
      std::string n;
      while (ls >> n) out_names.push_back(n);
      continue;
    }
    if (!have_in) throw CircuitError("formula: 'in' line must come first");
    auto eq = line.find('=');
    if (eq == std::string::npos) throw CircuitError("formula: expected assignment: " + line);
    std::string lhs = line.substr(0, eq);
    lhs.erase(0, lhs.find_first_not_of(" \t"));
    lhs.erase(lhs.find_last_not_of(" \t") + 1);
    if (vars.count(lhs)) throw CircuitError("formula: '" + lhs + "' assigned twice");
    Parser p(f, vars);
    uint32_t v = p.parse(std::string_view(line).substr(eq + 1));
    // A plain copy just aliases its source.
    vars[lhs] = v;
  }
  if (!have_in || f.input_count == 0) throw CircuitError("formula: no inputs");
  for (const auto& n : out_names) {
    auto it = vars.find(n);
    if (it == vars.end()) throw CircuitError("formula: output '" + n + "' never assigned");
    f.outputs.push_back(it->second);
  }
  if (f.outputs.empty()) throw CircuitError("formula: no outputs");
  return f;
}

uint32_t eval_formula(const BooleanFormula& f, uint32_t x) {
  std::vector<uint8_t> v(f.names.size(), 0);
  for (size_t i = 0; i < f.input_count; ++i) v[i] = (x >> i) & 1;
  for (const auto& s : f.steps) {
    switch (s.op) {
      case BooleanFormula::Op::Not: v[s.out] = v[s.a] ^ 1; break;
      case BooleanFormula::Op::And: v[s.out] = v[s.a] & v[s.b]; break;
      case BooleanFormula::Op::Xor: v[s.out] = v[s.a] ^ v[s.b]; break;
      case BooleanFormula::Op::One: v[s.out] = 1; break;
    }
  }
  uint32_t y = 0;
  for (size_t i = 0; i < f.outputs.size(); ++i) y |= uint32_t(v[f.outputs[i]]) << i;
  return y;
}

std::vector<uint32_t> expand_formula(const BooleanFormula& f) {
  std::vector<uint32_t> t(size_t(1) << f.input_count);
  for (uint32_t x = 0; x < t.size(); ++x) t[x] = eval_formula(f, x);
  return t;
}

FormulaReport verify_formula(const BooleanFormula& f, std::span<const uint32_t> table) {
  if (table.size() != (size_t(1) << f.input_count))
    throw WidthError("formula arity does not match table size");
  FormulaReport r;
  r.and_count = f.and_count();
  for (uint32_t x = 0; x < table.size(); ++x) r.mismatches += eval_formula(f, x) != table[x];
  r.match = r.mismatches == 0;
  return r;
}

}  // namespace projgc
