// ============================================================================
// pta/json_io.hpp: JSON forms of traces, verdicts and the 0/1 automaton
// ============================================================================
//
// Trace:   [{"delay": "5/2", "transition": 3, "action": "wakeup1",
//            "location": "l2.transmit.idle", "valuation": {"x": "5/2", ...}}]
//          location and valuation describe the configuration after the step.
// Verdict: {"verdict", "mode", "bound", "gamma", "witness", "stats"}
//
// Rationals are strings ("n" or "n/d") so no precision is lost.
//
// ============================================================================

#ifndef PTA_JSON_IO_HPP
#define PTA_JSON_IO_HPP

#include "pta/model.hpp"
#include "pta/semantics.hpp"
#include "pta/solver.hpp"
#include "pta/zerone.hpp"

#include "json.hpp"

namespace pta {

using Json = nlohmann::ordered_json;

Json gamma_to_json(const ParamValuation& gamma);
ParamValuation gamma_from_json(const Json& j);

/// Replays `run` to annotate each step; throws StepError if it does not replay.
Json trace_to_json(const Pta& a, const ParamValuation& gamma, const TimedRun& run);

/// Accepts a trace array or an object with a "witness" array.
TimedRun trace_from_json(const Json& j);

Json check_to_json(const Pta& a, const ParamValuation& gamma, const CheckResult& r);
Json synthesis_to_json(const Pta& a, const SynthesisResult& r);

/// The 0/1 automaton: states with region and corner renderings, the three
/// edge families, and counts.
Json zero_one_to_json(const ZeroOneTA& zo);

/// A run of Â as a list of {kind, action?, state, t}.
Json zo_run_to_json(const ZeroOneTA& zo, const ZoRun& run);

}  // namespace pta

#endif  // PTA_JSON_IO_HPP
