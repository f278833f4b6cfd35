#pragma once

#include <string>
#include <vector>

#include "cff/approx.hpp"
#include "cff/erasure.hpp"
#include "cff/io/config.hpp"
#include "cff/vector_frames.hpp"

namespace cff::io {

Json to_json(const FrameBounds& b);
Json to_json(const EigensumIdentity& id);
Json to_json(const FusionBounds& fb);
Json to_json(const SynthesisCharacterization& sc);
Json to_json(const ErasureReport& er);  // indices reported 1-based
Json to_json(const E1Report& er);
Json to_json(const TraceClassReport& tc);
Json to_json(const ApproxReport& ar);

Json input_summary(const LoadedSystem& in);

// Fixed leading keys of every report: schema, command, inputs, tolerance,
// seed, samples. Callers append result, verdicts, and wall_time_ms, so key
// order is identical across runs.
Json envelope(const std::string& command, const std::vector<const LoadedSystem*>& inputs,
              double tolerance, long long seed, int samples);

// Compact by default, two-space indented with --pretty; newline-terminated.
std::string render(const Json& report, bool pretty);

}  // namespace cff::io
