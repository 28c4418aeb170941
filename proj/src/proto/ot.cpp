#include "projgc/proto/ot.hpp"

#include <string>

#include "projgc/error.hpp"

namespace projgc::proto {

OtSender::OtSender(const EncodingInfo& e, Prg& rng) {
  for (size_t i = 0; i < e.owners.size(); ++i) {
    if (e.owners[i] != Party::Evaluator) continue;
    const Label& w0 = e.zero_labels[i];
    const unsigned n = w0.width;
    const auto& cols = e.offset(n).columns();
    Label acc{Block{}, n};
    for (unsigned j = 0; j < n; ++j) {
      Label m0 = j + 1 < n ? random_label(n, rng, e.kappa) : acc ^ w0;
      acc = acc ^ m0;
      pairs_.emplace_back(m0, Label{m0.bits ^ cols[j], n});
    }
  }
}

std::vector<Label> OtSender::respond(std::span<const uint8_t> choices) const {
  if (choices.size() != pairs_.size())
    throw ProtocolError("OT expects " + std::to_string(pairs_.size()) + " choice bits, got " +
                        std::to_string(choices.size()));
  std::vector<Label> out;
  out.reserve(choices.size());
  for (size_t i = 0; i < choices.size(); ++i) out.push_back(choices[i] ? pairs_[i].second : pairs_[i].first);
  return out;
}

std::vector<uint8_t> ot_choices(std::span<const uint8_t> widths, std::span<const uint64_t> values) {
  if (widths.size() != values.size())
    throw ProtocolError("evaluator has " + std::to_string(widths.size()) + " inputs, got " +
                        std::to_string(values.size()) + " values");
  std::vector<uint8_t> bits;
  for (size_t i = 0; i < widths.size(); ++i) {
    if (widths[i] < 64 && values[i] >> widths[i])
      throw WidthError("evaluator input " + std::to_string(i) + " does not fit " + std::to_string(widths[i]) +
                       " bits");
    for (unsigned j = 0; j < widths[i]; ++j) bits.push_back((values[i] >> j) & 1);
  }
  return bits;
}

std::vector<Label> ot_combine(std::span<const uint8_t> widths, std::span<const Label> received) {
  size_t total = 0;
  for (auto w : widths) total += w;
  if (received.size() != total)
    throw ProtocolError("OT returned " + std::to_string(received.size()) + " labels, expected " +
                        std::to_string(total));
  std::vector<Label> out;
  size_t k = 0;
  for (auto w : widths) {
    Label acc{Block{}, w};
    for (unsigned j = 0; j < w; ++j, ++k) {
      if (received[k].width != w) throw ProtocolError("OT label width mismatch");
      acc = acc ^ received[k];
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<uint8_t> evaluator_widths(const Topology& t) {
  std::vector<uint8_t> w;
  for (const auto& in : t.inputs)
    if (in.owner == Party::Evaluator) w.push_back(t.widths.at(in.wire));
  return w;
}

std::vector<uint8_t> evaluator_widths(const EncodingInfo& e) {
  std::vector<uint8_t> w;
  for (size_t i = 0; i < e.owners.size(); ++i)
    if (e.owners[i] == Party::Evaluator) w.push_back(uint8_t(e.zero_labels[i].width));
  return w;
}

std::vector<Label> ot_exchange_sim(const EncodingInfo& e, std::span<const uint64_t> evaluator_values,
                                   Prg& rng) {
  OtSender sender(e, rng);
  auto widths = evaluator_widths(e);
  auto picks = sender.respond(ot_choices(widths, evaluator_values));
  return ot_combine(widths, picks);
}

}  // namespace projgc::proto
