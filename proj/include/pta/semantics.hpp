// ============================================================================
// pta/semantics.hpp: concrete timed semantics for a fixed parameter valuation
// ============================================================================
//
// Configurations carry exact rational clock values. `delay` and `fire` are the
// two rules of the timed transition system; `replay` runs a script of
// (delay, transition) pairs through them. `empty` decides language emptiness
// with the region graph over all clocks and returns a replayable witness when
// the language is nonempty.
//
// A run is accepted when it ends in an accepting location right after an
// action, or when the initial location itself is accepting (the empty run).
//
// ============================================================================

#ifndef PTA_SEMANTICS_HPP
#define PTA_SEMANTICS_HPP

#include "pta/model.hpp"
#include "pta/rational.hpp"
#include "pta/region.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pta {

struct Configuration {
    LocationId location = 0;
    ClockValuation nu;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// One step of a timed run: let `delay` time units pass, then fire `transition`.
struct RunStep {
    Rational delay;
    TransitionId transition = 0;

    friend bool operator==(const RunStep&, const RunStep&) = default;
};

struct TimedRun {
    std::vector<RunStep> steps;

    friend bool operator==(const TimedRun&, const TimedRun&) = default;
};

/// (ℓ0, ν0); throws StepError if ν0 violates the initial invariant under γ.
Configuration initial_configuration(const Pta& a, std::span<const std::int64_t> gamma);

/// (ℓ, ν) -d-> (ℓ, ν + d). Throws StepError citing the violated invariant.
Configuration delay(const Pta& a, const Configuration& c, const Rational& d,
                    std::span<const std::int64_t> gamma);

/// (ℓ, ν) -t-> (ℓ', ν[R]). Throws StepError when t does not leave ℓ, the guard
/// fails, or the target invariant fails.
Configuration fire(const Pta& a, const Configuration& c, TransitionId t,
                   std::span<const std::int64_t> gamma);

/// Configurations after every step of the run, starting from `start`
/// (result[0] == start). StepError::step() is the index of the failing step.
std::vector<Configuration> replay_trace(const Pta& a, std::span<const std::int64_t> gamma,
                                        const Configuration& start, const TimedRun& run);

/// Final configuration of `run` from (ℓ0, ν0).
Configuration replay(const Pta& a, const ParamValuation& gamma, const TimedRun& run);

/// Same from an arbitrary start configuration.
Configuration replay_from(const Pta& a, const ParamValuation& gamma, const Configuration& start,
                          const TimedRun& run);

/// True when the run replays from (ℓ0, ν0) and is accepted.
bool accepts(const Pta& a, const ParamValuation& gamma, const TimedRun& run);

struct EmptinessResult {
    bool empty = true;
    std::optional<TimedRun> witness;
    std::size_t states_explored = 0;
};

/// Decides L_γ(a) = ∅ by accepting-location reachability in the region graph.
EmptinessResult empty(const Pta& a, const ParamValuation& gamma);

/// Reachability of a location satisfying `target` from an arbitrary start
/// configuration; the witness run starts at `start`. With no target, the
/// automaton's accepting locations are used.
EmptinessResult search_from(const Pta& a, std::span<const std::int64_t> gamma, const Configuration& start,
                            const std::function<bool(LocationId)>& target = {});

/// Region bound for `a` under γ: the largest constant after substitution.
int region_bound(const Pta& a, std::span<const std::int64_t> gamma);

// ── Region graph export ─────────────────────────────────────────────────────

struct RegionGraph {
    struct Node {
        LocationId location;
        Region region;
    };
    struct Edge {
        std::size_t from, to;
        std::optional<TransitionId> transition;  // empty for time successor edges
    };
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    bool truncated = false;
};

/// The reachable region graph from (ℓ0, ν0), cut off after `max_nodes`.
RegionGraph explore_region_graph(const Pta& a, const ParamValuation& gamma, std::size_t max_nodes);

std::string to_dot(const RegionGraph& g, const Pta& a);

}  // namespace pta

#endif  // PTA_SEMANTICS_HPP
