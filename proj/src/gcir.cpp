#include "projgc/gcir.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "projgc/error.hpp"

namespace projgc {

namespace {

[[noreturn]] void bad(size_t line_no, const std::string& why) {
  throw FormatError("gcir line " + std::to_string(line_no) + ": " + why);
}

uint64_t parse_hex(const std::string& s, size_t line_no) {
  if (s.empty()) bad(line_no, "empty hex value");
  size_t used = 0;
  uint64_t v = 0;
  try {
    v = std::stoull(s, &used, 16);
  } catch (const std::exception&) {
    bad(line_no, "bad hex value '" + s + "'");
  }
  if (used != s.size()) bad(line_no, "bad hex value '" + s + "'");
  return v;
}

const char* category_name(Category c) {
  switch (c) {
    case Category::Setup: return "setup";
    case Category::KeySchedule: return "key";
    case Category::DataPath: return "data";
  }
  return "data";
}

}  // namespace

Circuit parse_gcir(std::string_view text) {
  std::unordered_map<uint64_t, WireId> ids;
  std::vector<uint8_t> widths;
  std::vector<Gate> gates;
  std::vector<InputWire> inputs;
  std::vector<WireId> outputs;
  Category cat = Category::DataPath;

  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;

  auto lookup = [&](uint64_t file_id) {
    auto it = ids.find(file_id);
    if (it == ids.end()) bad(line_no, "wire " + std::to_string(file_id) + " used before definition");
    return it->second;
  };
  auto define = [&](uint64_t file_id, unsigned width) {
    if (ids.count(file_id)) bad(line_no, "wire " + std::to_string(file_id) + " defined twice");
    if (width == 0 || width > kMaxWidth) bad(line_no, "width out of range");
    WireId w = WireId(widths.size());
    ids[file_id] = w;
    widths.push_back(uint8_t(width));
    return w;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    if (op == "INPUT") {
      uint64_t w;
      unsigned n;
      if (!(ls >> w >> n)) bad(line_no, "INPUT needs wire and width");
      std::string owner;
      Party p = Party::Garbler;
      if (ls >> owner) {
        if (owner == "E") p = Party::Evaluator;
        else if (owner != "G") bad(line_no, "owner must be G or E");
      }
      inputs.push_back({define(w, n), p});
    } else if (op == "XOR") {
      uint64_t o, a, b;
      if (!(ls >> o >> a >> b)) bad(line_no, "XOR needs out a b");
      Gate g;
      g.kind = GateKind::Xor;
      g.a = lookup(a);
      g.b = lookup(b);
      g.width = widths[g.a];
      g.category = cat;
      g.out = define(o, g.width);
      gates.push_back(std::move(g));
    } else if (op == "PROJ") {
      uint64_t o, a;
      unsigned m;
      std::string list;
      if (!(ls >> o >> a >> m >> list)) bad(line_no, "PROJ needs out a m table");
      std::vector<uint32_t> t;
      std::istringstream ts(list);
      std::string e;
      while (std::getline(ts, e, ',')) t.push_back(uint32_t(parse_hex(e, line_no)));
      Gate g;
      g.kind = GateKind::Proj;
      g.a = lookup(a);
      g.width = m;
      g.table = make_table(std::move(t));
      g.category = cat;
      g.out = define(o, m);
      gates.push_back(std::move(g));
    } else if (op == "CONST") {
      uint64_t o;
      unsigned n;
      std::string v;
      if (!(ls >> o >> n >> v)) bad(line_no, "CONST needs out n v");
      Gate g;
      g.kind = GateKind::Const;
      g.width = n;
      g.value = parse_hex(v, line_no);
      g.category = cat;
      g.out = define(o, n);
      gates.push_back(std::move(g));
    } else if (op == "OUTPUT") {
      uint64_t w;
      if (!(ls >> w)) bad(line_no, "OUTPUT needs a wire");
      outputs.push_back(lookup(w));
    } else if (op == "CAT") {
      std::string c;
      ls >> c;
      if (c == "setup") cat = Category::Setup;
      else if (c == "key") cat = Category::KeySchedule;
      else if (c == "data") cat = Category::DataPath;
      else bad(line_no, "unknown category '" + c + "'");
    } else {
      bad(line_no, "unknown statement '" + op + "'");
    }
    std::string extra;
    if (ls >> extra) bad(line_no, "trailing tokens");
  }
  try {
    return make_circuit(std::move(widths), std::move(gates), std::move(inputs), std::move(outputs));
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("gcir: ") + e.what());
  }
}

std::string write_gcir(const Circuit& c) {
  std::ostringstream os;
  os << "# projgc circuit: " << c.inputs().size() << " inputs, " << c.gates().size() << " gates, "
     << c.outputs().size() << " outputs\n";
  // Inputs and gates are interleaved by wire id.
  size_t next_input = 0;
  auto flush_inputs_below = [&](WireId limit) {
    while (next_input < c.inputs().size() && c.inputs()[next_input].wire < limit) {
      const auto& in = c.inputs()[next_input++];
      os << "INPUT " << in.wire << ' ' << c.width(in.wire)
         << (in.owner == Party::Evaluator ? " E" : "") << '\n';
    }
  };
  std::optional<Category> cat;
  os << std::hex;
  for (const auto& g : c.gates()) {
    os << std::dec;
    flush_inputs_below(g.out);
    if (!cat || *cat != g.category) {
      cat = g.category;
      os << "CAT " << category_name(g.category) << '\n';
    }
    switch (g.kind) {
      case GateKind::Xor: os << "XOR " << g.out << ' ' << g.a << ' ' << g.b << '\n'; break;
      case GateKind::Proj: {
        os << "PROJ " << g.out << ' ' << g.a << ' ' << g.width << ' ' << std::hex;
        for (size_t i = 0; i < g.table->size(); ++i) os << (i ? "," : "") << (*g.table)[i];
        os << std::dec << '\n';
        break;
      }
      case GateKind::Const:
        os << "CONST " << g.out << ' ' << g.width << ' ' << std::hex << g.value << std::dec << '\n';
        break;
    }
  }
  os << std::dec;
  flush_inputs_below(WireId(c.num_wires()));
  for (WireId o : c.outputs()) os << "OUTPUT " << o << '\n';
  return os.str();
}

Circuit load_gcir(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_gcir(ss.str());
}

void save_gcir(const Circuit& c, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << write_gcir(c);
}

}  // namespace projgc
