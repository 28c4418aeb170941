#pragma once

#include <string>
#include <string_view>

#include "projgc/circuit.hpp"

namespace projgc {

// .gcir text format, one statement per line:
//   INPUT w n [G|E]        input wire w of width n, owned by garbler (default) or evaluator
//   XOR out a b
//   PROJ out a m t0,t1,... table entries in hex
//   CONST out n v          v in hex
//   OUTPUT w
//   CAT setup|key|data     census category for the gates that follow
// Wire ids and widths are decimal. `#` starts a comment.
Circuit parse_gcir(std::string_view text);
std::string write_gcir(const Circuit& c);

Circuit load_gcir(const std::string& path);
void save_gcir(const Circuit& c, const std::string& path);

}  // namespace projgc
