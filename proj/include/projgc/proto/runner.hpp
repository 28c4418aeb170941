#pragma once

// Two-party sessions over a Channel.
//
// Offline, garbler -> evaluator: one message [Header][Tables][DecodingInfo].
// Online: evaluator -> garbler [OtBitExchange(choice bits)], then
// garbler -> evaluator [GarblerInputs][OtBitExchange(labels)]. With
// share_outputs the evaluator finally returns [OutputLabels] and the garbler
// decodes too. The message count never depends on the circuit.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "projgc/circuit.hpp"
#include "projgc/label.hpp"
#include "projgc/proto/channel.hpp"

namespace projgc::proto {

enum class Transport { Memory, Stream };

struct SessionConfig {
  SchemeParams params;  // params.seed fixes all garbler randomness
  bool auth = false;
  bool share_outputs = false;
  unsigned threads = 1;
};

struct GarblerResult {
  std::optional<std::vector<uint64_t>> outputs;  // only with share_outputs
  uint64_t table_payload_bytes = 0;
  uint64_t ot_transfers = 0;
  uint64_t garble_hash_calls = 0;
};

struct EvaluatorResult {
  std::vector<uint64_t> outputs;
  uint64_t table_payload_bytes = 0;
  uint64_t eval_hash_calls = 0;
};

// Direction-split traffic for one phase.
struct PhaseStats {
  uint64_t bytes_to_evaluator = 0;
  uint64_t bytes_to_garbler = 0;
  uint64_t messages_to_evaluator = 0;
  uint64_t messages_to_garbler = 0;

  uint64_t bytes() const { return bytes_to_evaluator + bytes_to_garbler; }
  uint64_t messages() const { return messages_to_evaluator + messages_to_garbler; }
};

// x_g: garbler-owned inputs in input order.
GarblerResult garbler_session(Channel& ch, const Circuit& c, std::span<const uint64_t> x_g,
                              const SessionConfig& cfg);

// The evaluator sees only what arrives on the channel. `offline` receives
// the traffic counted up to and including the offline message.
EvaluatorResult evaluator_session(Channel& ch, std::span<const uint64_t> x_e, bool share_outputs = false,
                                  PhaseStats* offline = nullptr);

struct RunConfig : SessionConfig {
  Transport transport = Transport::Memory;
};

struct RunResult {
  std::vector<uint64_t> outputs;
  PhaseStats offline;
  PhaseStats online;
  uint64_t table_payload_bytes = 0;
  uint64_t ot_transfers = 0;
  uint64_t garble_hash_calls = 0;
  uint64_t eval_hash_calls = 0;
};

// Both parties in one process, the garbler on its own thread.
RunResult run_two_party(const Circuit& c, std::span<const uint64_t> x_g, std::span<const uint64_t> x_e,
                        const RunConfig& cfg);

// Splits full input values (input order) by owner.
std::pair<std::vector<uint64_t>, std::vector<uint64_t>> split_inputs(const Circuit& c,
                                                                     std::span<const uint64_t> x);
// Inverse of split_inputs.
std::vector<uint64_t> merge_inputs(const Circuit& c, std::span<const uint64_t> x_g,
                                   std::span<const uint64_t> x_e);

}  // namespace projgc::proto
