#pragma once

// Simulated 1-out-of-2 OT for evaluator input labels, one transfer per input bit.
// The sender splits each zero label W^0 of an n-bit wire into n random shares
// m_1..m_n with XOR equal to W^0, and offers (m_i, m_i ^ R_n[i]) for bit i.
// The receiver XORs its n picks into W^0 ^ x.R_n.
//
// This is a trusted forwarding exchange: the sender sees the choice bits.
// Not secure for production use. A real OT plugs in behind OtSender::respond.

#include <cstdint>
#include <span>
#include <vector>

#include "projgc/garble.hpp"

namespace projgc::proto {

class OtSender {
 public:
  // Prepares candidates for every evaluator-owned input of `e`.
  OtSender(const EncodingInfo& e, Prg& rng);

  size_t transfers() const { return pairs_.size(); }
  // One label per choice bit. Throws ProtocolError on a bit count mismatch.
  std::vector<Label> respond(std::span<const uint8_t> choices) const;

 private:
  std::vector<std::pair<Label, Label>> pairs_;
};

// Receiver side, needing only input widths. Values are evaluator inputs in input order.
std::vector<uint8_t> ot_choices(std::span<const uint8_t> widths, std::span<const uint64_t> values);
// XORs the per-bit labels back into one label per wire.
std::vector<Label> ot_combine(std::span<const uint8_t> widths, std::span<const Label> received);

// Widths of the evaluator-owned inputs, in input order.
std::vector<uint8_t> evaluator_widths(const Topology& t);
std::vector<uint8_t> evaluator_widths(const EncodingInfo& e);

// Sender and receiver run back to back in one call.
std::vector<Label> ot_exchange_sim(const EncodingInfo& e, std::span<const uint64_t> evaluator_values,
                                   Prg& rng);

}  // namespace projgc::proto
