#pragma once

#include <map>
#include <optional>
#include <string>

#include "ncert/reduction.hpp"

namespace ncert::jsonio {

/// Serializes a certificate as structured text: spec, witness, pivot list,
/// final entry, every conjugator with its exact inverse, the norm value and
/// the verdict. All integers are decimal strings, so no reader needs a
/// native big-integer encoding. Intermediate matrices are not stored; a
/// verifier reconstructs them by re-running the reduction.
std::string certificate_to_json(const reduction::Certificate& cert);

/// Parses certificate text and re-verifies it by re-running the reduction
/// from the stored spec and witness. Structural problems (missing keys,
/// malformed integers, a spec or witness that cannot run) raise ParseError.
/// A well-formed file whose stored pivots, conjugators, final entry, norm
/// or verdict disagree with the recomputation comes back with verdict
/// Invalid; otherwise the fully recomputed certificate is returned.
reduction::Certificate certificate_from_json(const std::string& text);

/// One-way dump of a full reduction trace (including intermediates) for
/// inspection; integers as decimal strings.
std::string trace_to_json(const reduction::GroupSpec& spec,
                          const reduction::Witness& witness,
                          const reduction::ReductionTrace& trace);

/// Structured record of one CLI invocation.
struct RunReport {
  std::string command;                          ///< subcommand name
  std::map<std::string, std::string> inputs;    ///< flag echo
  std::string outcome;                          ///< ok | inconclusive | error
  std::string payload_json;                     ///< result payload (JSON text)
  std::optional<long> wall_ms;                  ///< measured, never serialized
  std::map<std::string, std::string> bounds;    ///< search bounds used
};

/// Serializes a run report. The wall-time field is written as null so that
/// identical invocations with identical seeds produce byte-identical
/// reports; everything else round-trips losslessly.
std::string report_to_json(const RunReport& report);

/// Parses a run report; ParseError on malformed text or an outcome outside
/// {ok, inconclusive, error}.
RunReport report_from_json(const std::string& text);

}  // namespace ncert::jsonio
