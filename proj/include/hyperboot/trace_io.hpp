#pragma once

#include <iosfwd>
#include <string>

#include "hyperboot/extension.hpp"
#include "hyperboot/process.hpp"

namespace hyperboot {

// Trace files are line-delimited JSON:
//   {"format":"hyperboot-trace","version":1,"pattern":..,"k":..,"n":..,"initial":[[..],..]}
//   {"step":m,"added":[[..],..],"witnesses":[[..],..]}   one per step
//   {"end":true,"terminated":..,"tau":..|null,"steps":..}
// A witness is its vertex map. Keys are written in sorted order, so equal
// traces serialize to equal bytes.
inline constexpr int kTraceFormatVersion = 1;

void write_trace_jsonl(std::ostream& out, const Trace& tr, bool witnesses = true);
std::string format_trace_jsonl(const Trace& tr, bool witnesses = true);
void save_trace_jsonl(const std::string& path, const Trace& tr, bool witnesses = true);

/// Parses and validates a trace against p: every added edge must be absent
/// before its step and every witness must be a copy using its edge. Steps
/// saved without witnesses get the least witness recomputed. Throws ParseError.
Trace read_trace_jsonl(std::istream& in, const ExtensionPattern& p);
Trace load_trace_jsonl(const std::string& path, const ExtensionPattern& p);

/// Columns step, edges_added, cumulative_edges; row 0 is the initial state.
void write_trace_csv(std::ostream& out, const Trace& tr);
void save_trace_csv(const std::string& path, const Trace& tr);

}  // namespace hyperboot
