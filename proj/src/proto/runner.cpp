#include "projgc/proto/runner.hpp"

#include <exception>
#include <future>
#include <string>

#include "projgc/error.hpp"
#include "projgc/garble.hpp"
#include "projgc/proto/ot.hpp"
#include "projgc/proto/wire_format.hpp"

namespace projgc::proto {

namespace {

std::vector<uint8_t> one_frame(Frame f) { return encode_message(std::span<const Frame>(&f, 1)); }

PhaseStats from_evaluator_view(const ChannelStats& s) {
  return {s.bytes_received, s.bytes_sent, s.messages_received, s.messages_sent};
}

PhaseStats minus(const PhaseStats& a, const PhaseStats& b) {
  return {a.bytes_to_evaluator - b.bytes_to_evaluator, a.bytes_to_garbler - b.bytes_to_garbler,
          a.messages_to_evaluator - b.messages_to_evaluator, a.messages_to_garbler - b.messages_to_garbler};
}

}  // namespace

GarblerResult garbler_session(Channel& ch, const Circuit& c, std::span<const uint64_t> x_g,
                              const SessionConfig& cfg) {
  Prg rng = cfg.params.seed ? Prg(*cfg.params.seed) : Prg::from_os_entropy();
  TweakableHash h;
  GarbleOptions opts;
  opts.auth = cfg.auth;
  opts.threads = cfg.threads;
  opts.hash = &h;
  Garbling g = garble(c, cfg.params, rng, opts);

  GarblerResult r;
  r.garble_hash_calls = h.calls();
  r.table_payload_bytes = (g.gc.table_bits() + 7) / 8;

  // Garbler labels are fixed before anything is sent.
  std::vector<Label> own;
  size_t k = 0;
  for (size_t i = 0; i < g.e.owners.size(); ++i) {
    if (g.e.owners[i] != Party::Garbler) continue;
    if (k >= x_g.size()) throw ProtocolError("too few garbler input values");
    const Label& z = g.e.zero_labels[i];
    own.push_back(encode_value(z, x_g[k++], g.e.offset(z.width)));
  }
  if (k != x_g.size()) throw ProtocolError("too many garbler input values");

  ch.send(encode_message(gc_frames(g.gc, g.d)));

  OtSender ot(g.e, rng);
  r.ot_transfers = ot.transfers();
  auto request = decode_message(ch.recv());
  auto picks = ot.respond(bits_from_frame(find_frame(request, FrameType::OtBitExchange)));
  std::vector<Frame> reply{labels_frame(FrameType::GarblerInputs, own, g.gc.kappa),
                           labels_frame(FrameType::OtBitExchange, picks, g.gc.kappa)};
  ch.send(encode_message(reply));

  if (cfg.share_outputs) {
    auto msg = decode_message(ch.recv());
    auto labels = labels_from_frame(find_frame(msg, FrameType::OutputLabels), g.gc.kappa);
    if (cfg.auth) {
      auto out = decode_auth(g.d, labels, h);
      if (!out) throw ProtocolError("output labels failed authentication");
      r.outputs = std::move(*out);
    } else {
      r.outputs = decode(g.d, labels);
    }
  }
  return r;
}

EvaluatorResult evaluator_session(Channel& ch, std::span<const uint64_t> x_e, bool share_outputs,
                                  PhaseStats* offline) {
  auto offline_msg = decode_message(ch.recv());
  auto [gc, d] = gc_from_frames(offline_msg);
  if (offline) *offline = from_evaluator_view(ch.stats());

  EvaluatorResult r;
  r.table_payload_bytes = find_frame(offline_msg, FrameType::Tables).payload.size();

  auto widths = evaluator_widths(gc.topology);
  ch.send(one_frame(bits_frame(ot_choices(widths, x_e))));

  auto online = decode_message(ch.recv());
  auto own = labels_from_frame(find_frame(online, FrameType::GarblerInputs), gc.kappa);
  auto mine = ot_combine(widths, labels_from_frame(find_frame(online, FrameType::OtBitExchange), gc.kappa));

  std::vector<Label> inputs;
  size_t gi = 0, ei = 0;
  for (const auto& in : gc.topology.inputs) {
    if (in.owner == Party::Garbler) {
      if (gi >= own.size()) throw ProtocolError("garbler sent too few input labels");
      inputs.push_back(own[gi++]);
    } else {
      inputs.push_back(mine[ei++]);
    }
  }
  if (gi != own.size()) throw ProtocolError("garbler sent too many input labels");
  for (size_t i = 0; i < inputs.size(); ++i)
    if (inputs[i].width != gc.topology.widths[gc.topology.inputs[i].wire])
      throw ProtocolError("input label " + std::to_string(i) + " has the wrong width");

  TweakableHash h;
  auto out_labels = eval(gc, inputs, h);
  r.eval_hash_calls = h.calls();

  if (d.mode == DecodingInfo::Mode::Auth) {
    auto out = decode_auth(d, out_labels, h);
    if (!out) throw ProtocolError("output labels failed authentication");
    r.outputs = std::move(*out);
  } else {
    r.outputs = decode(d, out_labels);
  }
  if (share_outputs) ch.send(one_frame(labels_frame(FrameType::OutputLabels, out_labels, gc.kappa)));
  return r;
}

RunResult run_two_party(const Circuit& c, std::span<const uint64_t> x_g, std::span<const uint64_t> x_e,
                        const RunConfig& cfg) {
  auto chans = cfg.transport == Transport::Memory ? memory_channel_pair() : loopback_tcp_pair();
  auto& gch = chans.first;
  auto& ech = chans.second;
  std::vector<uint64_t> xg(x_g.begin(), x_g.end());
  auto garbler = std::async(std::launch::async, [&, xg] {
    try {
      return garbler_session(*gch, c, xg, cfg);
    } catch (...) {
      gch.reset();
      throw;
    }
  });

  RunResult r;
  EvaluatorResult er;
  try {
    er = evaluator_session(*ech, x_e, cfg.share_outputs, &r.offline);
  } catch (...) {
    // Unblock the garbler before propagating.
    ech.reset();
    try {
      garbler.get();
    } catch (...) {
    }
    throw;
  }
  GarblerResult gr = garbler.get();
  if (cfg.share_outputs && gr.outputs != er.outputs) throw ProtocolError("parties decoded different outputs");

  r.outputs = std::move(er.outputs);
  r.online = minus(from_evaluator_view(ech->stats()), r.offline);
  r.table_payload_bytes = er.table_payload_bytes;
  r.ot_transfers = gr.ot_transfers;
  r.garble_hash_calls = gr.garble_hash_calls;
  r.eval_hash_calls = er.eval_hash_calls;
  return r;
}

std::pair<std::vector<uint64_t>, std::vector<uint64_t>> split_inputs(const Circuit& c,
                                                                     std::span<const uint64_t> x) {
  if (x.size() != c.inputs().size())
    throw WidthError("expected " + std::to_string(c.inputs().size()) + " input values");
  std::pair<std::vector<uint64_t>, std::vector<uint64_t>> r;
  for (size_t i = 0; i < x.size(); ++i)
    (c.inputs()[i].owner == Party::Garbler ? r.first : r.second).push_back(x[i]);
  return r;
}

std::vector<uint64_t> merge_inputs(const Circuit& c, std::span<const uint64_t> x_g,
                                   std::span<const uint64_t> x_e) {
  std::vector<uint64_t> x;
  size_t gi = 0, ei = 0;
  for (const auto& in : c.inputs()) {
    auto& src = in.owner == Party::Garbler ? x_g : x_e;
    auto& k = in.owner == Party::Garbler ? gi : ei;
    if (k >= src.size()) throw WidthError("too few input values for one party");
    x.push_back(src[k++]);
  }
  if (gi != x_g.size() || ei != x_e.size()) throw WidthError("too many input values for one party");
  return x;
}

}  // namespace projgc::proto
