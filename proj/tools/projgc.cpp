// projgc: build, garble, evaluate and cost projective garbled circuits.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "projgc/cost.hpp"
#include "projgc/error.hpp"
#include "projgc/garble.hpp"
#include "projgc/gcir.hpp"
#include "projgc/proto/channel.hpp"
#include "projgc/proto/report.hpp"
#include "projgc/proto/runner.hpp"
#include "projgc/proto/wire_format.hpp"
#include "projgc/spn/primitive.hpp"
#include "projgc/spn/sbox.hpp"

using namespace projgc;
namespace pr = projgc::proto;

namespace {

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw Error("cannot write " + path);
}

void write_text(const std::string& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

spn::Bytes parse_hex(const std::string& s) {
  if (s.size() % 2) throw Error("odd-length hex string '" + s + "'");
  spn::Bytes out;
  for (size_t i = 0; i < s.size(); i += 2) out.push_back(uint8_t(std::stoul(s.substr(i, 2), nullptr, 16)));
  return out;
}

std::string hex(std::span<const uint8_t> b) {
  std::string s;
  char buf[3];
  for (auto v : b) {
    std::snprintf(buf, sizeof buf, "%02x", v);
    s += buf;
  }
  return s;
}

// "3,a,ff": one hex value per input wire.
std::vector<uint64_t> parse_values(const std::string& s) {
  std::vector<uint64_t> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoull(item, nullptr, 16));
  return out;
}

std::string join_values(std::span<const uint64_t> v) {
  std::string s;
  char buf[20];
  for (size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(v[i]));
    s += (i ? "," : "") + std::string(buf);
  }
  return s;
}

struct PrimitiveArgs {
  std::string name = "aes128";
  std::string key_mode = "in-circuit";
  unsigned rounds = 0;
  std::string const_key;

  void add(CLI::App* cmd, bool required = true) {
    cmd->add_option("--primitive,-p", name, "Primitive name")->required(required);
    cmd->add_option("--key-mode", key_mode, "in-circuit | const | ot | share");
    cmd->add_option("--rounds", rounds, "Round count for variable-round primitives");
  }

  spn::BuiltPrimitive build(const spn::Bytes& const_key = {}) const {
    spn::PrimitiveSpec spec{name, spn::parse_key_mode(key_mode), rounds, const_key};
    if (spec.key_mode == spn::KeyMode::GarblerConst && spec.const_key.empty())
      spec.const_key.assign(spn::primitive_info(name).key_bytes, 0);
    return spn::build_primitive(spec);
  }
};

int cmd_list() {
  for (const auto& p : spn::primitives()) {
    std::string modes;
    for (auto m : {spn::KeyMode::InCircuit, spn::KeyMode::GarblerConst, spn::KeyMode::EvaluatorOt,
                   spn::KeyMode::LinearShare})
      if (p.supports(m)) modes += (modes.empty() ? "" : ",") + std::string(spn::to_string(m));
    std::cout << p.name << "  block " << p.block_bytes << "B  key " << p.key_bytes << "B  tweak " << p.tweak_bytes
              << "B  rounds " << p.default_rounds << "  modes " << modes << '\n';
  }
  return 0;
}

int cmd_circuit(const PrimitiveArgs& pa, const std::string& key_hex, const std::string& out) {
  auto p = pa.build(key_hex.empty() ? spn::Bytes{} : parse_hex(key_hex));
  save_gcir(p.circuit, out);
  std::cerr << p.spec.name << ": " << p.circuit.gates().size() << " gates, " << p.circuit.projection_count()
            << " projections, written to " << out << '\n';
  return 0;
}

int cmd_garble(const std::string& file, std::optional<uint64_t> seed, bool auth, unsigned threads,
               const std::string& out, std::string enc) {
  Circuit c = load_gcir(file);
  SchemeParams params;
  params.seed = seed;
  Prg rng = seed ? Prg(*seed) : Prg::from_os_entropy();
  auto g = garble(c, params, rng, {.auth = auth, .threads = threads});
  write_file(out, pr::serialize_gc(g.gc, g.d));
  if (enc.empty()) enc = out + ".enc";
  write_file(enc, pr::serialize_encoding(g.e));
  std::cerr << "tables " << pr::pack_tables(g.gc).size() << " bytes, encoding written to " << enc << '\n';
  return 0;
}

int cmd_eval(const std::string& gc_file, std::string enc_file, const std::string& inputs) {
  auto [gc, d] = pr::deserialize_gc(read_file(gc_file));
  if (enc_file.empty()) enc_file = gc_file + ".enc";
  EncodingInfo e = pr::deserialize_encoding(read_file(enc_file));
  auto x = parse_values(inputs);
  auto labels = eval(gc, encode(e, x));
  std::vector<uint64_t> y;
  if (d.mode == DecodingInfo::Mode::Auth) {
    auto r = decode_auth(d, labels);
    if (!r) throw ProtocolError("output labels failed authentication");
    y = *r;
  } else {
    y = decode(d, labels);
  }
  std::cout << join_values(y) << '\n';
  return 0;
}

// Each party fills in only what it knows; the rest is zero and never sent.
spn::PrimitiveInputs party_inputs(const spn::PrimitiveInfo& info, spn::KeyMode mode, bool garbler,
                                  const std::string& key, const std::string& tweak, const std::string& block) {
  spn::PrimitiveInputs in;
  in.key.assign(info.key_bytes, 0);
  in.key_share.assign(info.key_bytes, 0);
  in.tweak.assign(info.tweak_bytes, 0);
  in.block.assign(info.block_bytes, 0);
  auto fill = [](spn::Bytes& dst, const std::string& h, const char* what) {
    if (h.empty()) return;
    auto b = parse_hex(h);
    if (b.size() != dst.size())
      throw Error(std::string(what) + " must be " + std::to_string(dst.size()) + " bytes");
    dst = b;
  };
  bool evaluator_key = mode == spn::KeyMode::EvaluatorOt || mode == spn::KeyMode::LinearShare;
  if (garbler) {
    if (mode == spn::KeyMode::LinearShare)
      fill(in.key_share, key, "--key");
    else if (!evaluator_key)
      fill(in.key, key, "--key");
    fill(in.tweak, tweak, "--tweak");
  } else {
    if (evaluator_key) fill(in.key, key, "--key");
    fill(in.block, block, "--block");
  }
  return in;
}

struct RunArgs {
  PrimitiveArgs prim;
  std::string role, listen, connect, key, tweak, block, output;
  std::optional<uint64_t> seed;
  bool auth = false, share_outputs = false, json = false;
  unsigned sessions = 1, threads = 1;
};

int cmd_run(const RunArgs& a) {
  if (a.listen.empty() == a.connect.empty()) throw Error("give exactly one of --listen and --connect");
  const bool garbler = a.role == "garbler";
  auto mode = spn::parse_key_mode(a.prim.key_mode);
  const auto& info = spn::primitive_info(a.prim.name);
  spn::Bytes const_key;
  if (mode == spn::KeyMode::GarblerConst && garbler) const_key = parse_hex(a.key);
  auto p = a.prim.build(const_key);
  auto values = p.input_values(party_inputs(info, mode, garbler, a.key, a.tweak, a.block));
  auto [xg, xe] = pr::split_inputs(p.circuit, values);

  auto open = [&](pr::TcpListener* l) { return l ? l->accept() : pr::tcp_connect(a.connect, 10000); };
  std::unique_ptr<pr::TcpListener> listener;
  if (!a.listen.empty()) {
    listener = std::make_unique<pr::TcpListener>(a.listen);
    std::cerr << "listening on port " << listener->port() << '\n';
  }

  if (garbler) {
    pr::SessionConfig cfg;
    cfg.auth = a.auth;
    cfg.share_outputs = a.share_outputs;
    cfg.threads = a.threads;
    // Sessions are independent: own connection, own randomness and offsets.
    std::vector<std::thread> workers;
    std::vector<pr::GarblerResult> results(a.sessions);
    std::vector<std::string> errors(a.sessions);
    for (unsigned s = 0; s < a.sessions; ++s) {
      auto ch = open(listener.get());
      pr::SessionConfig sc = cfg;
      if (a.seed) sc.params.seed = *a.seed + s;
      workers.emplace_back([&, s, sc, ch = std::move(ch)]() mutable {
        try {
          results[s] = pr::garbler_session(*ch, p.circuit, xg, sc);
        } catch (const std::exception& ex) {
          errors[s] = ex.what();
        }
      });
    }
    for (auto& t : workers) t.join();
    int rc = 0;
    for (unsigned s = 0; s < a.sessions; ++s) {
      if (!errors[s].empty()) {
        std::cerr << "session " << s << ": " << errors[s] << '\n';
        rc = 1;
        continue;
      }
      const auto& r = results[s];
      if (a.json) {
        nlohmann::json j{{"session", s},
                         {"table_payload_bytes", r.table_payload_bytes},
                         {"ot_transfers", r.ot_transfers},
                         {"garble_hash_calls", r.garble_hash_calls}};
        if (r.outputs) j["output"] = hex(p.output_bytes(*r.outputs));
        std::cout << j.dump() << '\n';
      } else if (r.outputs) {
        std::cout << hex(p.output_bytes(*r.outputs)) << '\n';
      }
      if (r.outputs && !a.output.empty()) write_text(a.output, hex(p.output_bytes(*r.outputs)) + "\n");
    }
    return rc;
  }

  auto ch = open(listener.get());
  pr::PhaseStats offline;
  auto r = pr::evaluator_session(*ch, xe, a.share_outputs, &offline);
  std::string out = hex(p.output_bytes(r.outputs));
  if (!a.output.empty()) write_text(a.output, out + "\n");
  if (a.json) {
    std::cout << nlohmann::json{{"output", out},
                                {"table_payload_bytes", r.table_payload_bytes},
                                {"eval_hash_calls", r.eval_hash_calls},
                                {"bytes_received", ch->stats().bytes_received},
                                {"bytes_sent", ch->stats().bytes_sent},
                                {"messages_received", ch->stats().messages_received},
                                {"messages_sent", ch->stats().messages_sent}}
                     .dump()
              << '\n';
  } else {
    std::cout << out << '\n';
  }
  return 0;
}

int cmd_count(const std::string& file, const PrimitiveArgs& pa, unsigned kappa, const std::string& format) {
  CostReport r;
  if (!file.empty()) {
    r = count_costs(load_gcir(file), std::nullopt, kappa);
  } else {
    auto s = pr::summarize(pa.build(), kappa);
    if (format == "json") {
      std::cout << pr::to_json(s).dump(2) << '\n';
      return 0;
    }
    std::vector<pr::PrimitiveSummary> rows{s};
    std::cout << pr::cost_table(s.cost) << '\n' << pr::census_table(rows) << '\n' << pr::ratio_table(rows);
    return 0;
  }
  if (format == "json")
    std::cout << pr::to_json(r).dump(2) << '\n';
  else
    std::cout << pr::cost_table(r);
  return 0;
}

int cmd_tables(unsigned kappa, unsigned fides_rounds, const std::string& format) {
  std::vector<pr::PrimitiveSummary> census, ratios;
  for (const auto& info : spn::primitives()) {
    if (info.name.rfind("skinny", 0) == 0 && info.name != "skinny-64-128") continue;
    census.push_back(pr::summarize(spn::build_primitive({info.name, spn::KeyMode::InCircuit, 0, {}}), kappa));
    bool fides = info.name.rfind("fides", 0) == 0;
    ratios.push_back(fides ? pr::summarize(spn::build_primitive({info.name, spn::KeyMode::InCircuit, fides_rounds, {}}),
                                           kappa)
                           : census.back());
  }
  if (format == "json") {
    nlohmann::json j{{"census", nlohmann::json::array()}, {"ratios", nlohmann::json::array()}};
    for (const auto& s : census) j["census"].push_back(pr::to_json(s));
    for (const auto& s : ratios) j["ratios"].push_back(pr::to_json(s));
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "Gate counts (AND gates above projection gates)\n" << pr::census_table(census) << '\n';
  std::cout << "Improvement factors at kappa " << kappa << " (fides with " << fides_rounds << " rounds)\n"
            << pr::ratio_table(ratios);
  return 0;
}

int cmd_verify_sbox(const std::string& name) {
  std::vector<std::string> names;
  if (name == "all")
    for (const auto& n : spn::sbox_names()) names.emplace_back(n);
  else
    names.push_back(name);
  bool all_ok = true;
  for (const auto& n : names) {
    const auto& a = spn::sbox(n);
    auto v = spn::verify_sbox(a);
    std::cout << n << ": " << a.n << "->" << a.m << " checksum " << (v.checksum_ok ? "ok" : "BAD") << ", "
              << (v.bijective ? "bijective" : "not bijective");
    if (v.has_formula) {
      std::cout << ", formula " << (v.formula_match ? "matches" : "MISMATCH") << " with " << v.formula_ands
                << " ANDs";
      if (v.expected_ands) std::cout << " (expected " << *v.expected_ands << ")";
    }
    std::cout << (v.ok() ? "" : "  FAILED") << '\n';
    all_ok = all_ok && v.ok();
  }
  return all_ok ? 0 : 1;
}

int cmd_bench(const PrimitiveArgs& pa, unsigned iterations, unsigned threads, bool json) {
  using clock = std::chrono::steady_clock;
  auto p = pa.build();
  const auto& info = *p.info;
  spn::PrimitiveInputs in{spn::Bytes(info.key_bytes, 0x2b), spn::Bytes(info.tweak_bytes, 0x5a),
                          spn::Bytes(info.block_bytes, 0x3c), spn::Bytes(info.key_bytes, 0)};
  auto x = p.input_values(in);
  Prg rng(1);
  double garble_ms = 0, eval_ms = 0;
  uint64_t garble_h = 0, eval_h = 0;
  for (unsigned i = 0; i < iterations; ++i) {
    TweakableHash hg, he;
    auto t0 = clock::now();
    auto g = garble(p.circuit, SchemeParams{}, rng, {.threads = threads, .hash = &hg});
    auto labels = encode(g.e, x);
    auto t1 = clock::now();
    auto out = eval(g.gc, labels, he);
    auto t2 = clock::now();
    if (decode(g.d, out) != eval_plain(p.circuit, x)) throw Error("benchmark run decoded a wrong result");
    garble_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
    eval_ms += std::chrono::duration<double, std::milli>(t2 - t1).count();
    garble_h = hg.calls();
    eval_h = he.calls();
  }
  auto hg = half_gates_cost(p.and_total(), 128);
  nlohmann::json j{{"primitive", p.spec.name},
                   {"key_mode", spn::to_string(p.spec.key_mode)},
                   {"iterations", iterations},
                   {"garble_ms", garble_ms / iterations},
                   {"eval_ms", eval_ms / iterations},
                   {"garble_hash_calls", garble_h},
                   {"eval_hash_calls", eval_h},
                   {"half_gates_eval_hash_calls", hg.eval_h},
                   {"eval_improvement", hg.eval_h / double(eval_h)}};
  if (json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::printf("%s (%s), %u iterations\n", p.spec.name.c_str(), std::string(spn::to_string(p.spec.key_mode)).c_str(),
                iterations);
    std::printf("  garble  %10.3f ms  %8llu H calls\n", garble_ms / iterations, (unsigned long long)garble_h);
    std::printf("  eval    %10.3f ms  %8llu H calls (half-gates model %.0f, x%.2f)\n", eval_ms / iterations,
                (unsigned long long)eval_h, hg.eval_h, hg.eval_h / double(eval_h));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projective garbled circuits with multi-bit wires"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the built-in primitives");

  PrimitiveArgs circ_p;
  std::string circ_key, circ_out;
  auto* circ = app.add_subcommand("circuit", "Write a primitive's circuit as .gcir");
  circ_p.add(circ);
  circ->add_option("--const-key", circ_key, "Key baked in with --key-mode const (hex)");
  circ->add_option("-o,--output", circ_out, "Output file")->required();

  std::string g_file, g_out, g_enc;
  std::optional<uint64_t> g_seed;
  bool g_auth = false;
  unsigned g_threads = 1;
  auto* garb = app.add_subcommand("garble", "Garble a .gcir circuit");
  garb->add_option("-c,--circuit", g_file, "Circuit file")->required()->check(CLI::ExistingFile);
  garb->add_option("--seed", g_seed, "Deterministic seed");
  garb->add_option("-o,--output", g_out, "Garbled circuit file")->required();
  garb->add_option("--encoding", g_enc, "Encoding file (default OUTPUT.enc)");
  garb->add_flag("--auth", g_auth, "Authenticated output decoding");
  garb->add_option("--threads", g_threads, "Garbling threads");

  std::string e_file, e_enc, e_inputs;
  auto* ev = app.add_subcommand("eval", "Evaluate a garbled circuit on plaintext inputs");
  ev->add_option("-g,--garbled", e_file, "Garbled circuit file")->required()->check(CLI::ExistingFile);
  ev->add_option("--encoding", e_enc, "Encoding file (default GC.enc)");
  ev->add_option("--inputs", e_inputs, "Comma-separated hex value per input wire")->required();

  RunArgs ra;
  auto* run = app.add_subcommand("run", "One party of a two-party evaluation over TCP");
  ra.prim.add(run);
  run->add_option("--role", ra.role, "garbler | evaluator")
      ->required()
      ->check(CLI::IsMember({"garbler", "evaluator"}));
  run->add_option("--listen", ra.listen, "host:port to listen on");
  run->add_option("--connect", ra.connect, "host:port to connect to");
  run->add_option("--key", ra.key, "Key (garbler), or this party's key share with --key-mode share (hex)");
  run->add_option("--tweak", ra.tweak, "Tweak, garbler side (hex)");
  run->add_option("--block", ra.block, "Input block, evaluator side (hex)");
  run->add_option("--seed", ra.seed, "Garbler seed");
  run->add_option("--sessions", ra.sessions, "Garbler: number of connections to serve");
  run->add_option("--threads", ra.threads, "Garbling threads");
  run->add_flag("--auth", ra.auth, "Authenticated output decoding");
  run->add_flag("--share-outputs", ra.share_outputs, "Return output labels to the garbler");
  run->add_flag("--json", ra.json, "Print a JSON record");
  run->add_option("-o,--output", ra.output, "Also write the decoded output (hex) to this file");

  std::string c_file, c_format = "table";
  unsigned c_kappa = 128;
  PrimitiveArgs c_p;
  c_p.name.clear();
  auto* count = app.add_subcommand("count", "Cost model for a circuit file or a primitive");
  auto* c_opt = count->add_option("-c,--circuit", c_file, "Circuit file")->check(CLI::ExistingFile);
  c_p.add(count, false);
  count->add_option("--kappa", c_kappa, "Security parameter");
  count->add_option("--format", c_format, "json | table")->check(CLI::IsMember({"json", "table"}));
  count->get_option("--primitive")->excludes(c_opt);

  unsigned t_kappa = 128, t_fides = 17;
  std::string t_format = "table";
  auto* tables = app.add_subcommand("tables", "Gate counts and improvement factors of all primitives");
  tables->add_option("--kappa", t_kappa, "Security parameter");
  tables->add_option("--fides-rounds", t_fides, "Rounds counted for fides in the factor table");
  tables->add_option("--format", t_format, "json | table")->check(CLI::IsMember({"json", "table"}));

  std::string vs_name;
  auto* vs = app.add_subcommand("verify-sbox", "Check an S-box asset and its formula");
  vs->add_option("name", vs_name, "S-box name, or 'all'")->required();

  PrimitiveArgs b_p;
  unsigned b_iter = 10, b_threads = 1;
  bool b_json = false;
  auto* bench = app.add_subcommand("bench", "Time garbling and evaluation of a primitive");
  b_p.add(bench);
  bench->add_option("--iterations", b_iter, "Iterations")->check(CLI::PositiveNumber);
  bench->add_option("--threads", b_threads, "Garbling threads");
  bench->add_flag("--json", b_json, "Print JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) return cmd_list();
    if (*circ) return cmd_circuit(circ_p, circ_key, circ_out);
    if (*garb) return cmd_garble(g_file, g_seed, g_auth, g_threads, g_out, g_enc);
    if (*ev) return cmd_eval(e_file, e_enc, e_inputs);
    if (*run) return cmd_run(ra);
    if (*count) {
      if (c_file.empty() && c_p.name.empty()) throw Error("count needs --circuit or --primitive");
      return cmd_count(c_file, c_p, c_kappa, c_format);
    }
    if (*tables) return cmd_tables(t_kappa, t_fides, t_format);
    if (*vs) return cmd_verify_sbox(vs_name);
    if (*bench) return cmd_bench(b_p, b_iter, b_threads, b_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
