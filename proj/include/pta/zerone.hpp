// ============================================================================
// pta/zerone.hpp: reduction of a one-parametric-clock PTA to a parametric
//                  0/1-timed automaton over a single clock
// ============================================================================
//
// Pipeline:
//
//   A  --add_fractional_clock-->  A'  --build_01-->  Â  --zo_empty(γ)-->  run
//                                                          |
//                               TimedRun of A  <--project--+--concretize_run
//
// A' adds a clock z tracking the fractional part of the parametric clock xp.
// Â tracks the region and a corner point of every clock except xp, and keeps
// only xp as a real clock whose value moves in unit steps. For a fixed γ its
// semantics is a finite graph once x̂p saturates above every constant it is
// compared with.
//
// ============================================================================

#ifndef PTA_ZERONE_HPP
#define PTA_ZERONE_HPP

#include "pta/model.hpp"
#include "pta/region.hpp"
#include "pta/semantics.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pta {

// ── A -> A' ─────────────────────────────────────────────────────────────────

struct FractionalPta {
    Pta automaton;
    ClockId xp = 0;
    ClockId z = 0;
    /// Transitions [0, original_transitions) keep the ids of A; the rest are
    /// the z = 1 self-loops, one per location in location order.
    std::size_t original_transitions = 0;
};

/// Requires an invariant-free automaton with exactly one parametric clock,
/// or with none when `xp` designates the clock to treat as parametric.
/// The fresh clock is named z, or z', z'', ... when taken.
FractionalPta add_fractional_clock(const Pta& a, std::optional<ClockId> xp = std::nullopt);

/// Drops the z self-loops from a run of A' and merges their delays into the
/// next original step. Trailing loops are discarded.
TimedRun project_run(const FractionalPta& f, const TimedRun& run);

// ── Â ───────────────────────────────────────────────────────────────────────

/// Rewrites a constraint on xp for the given classification; the clock is
/// replaced by `hat_clock`. Throws std::invalid_argument for '=' unless EXACT.
Constraint rewrite_guard(const Constraint& h, Iota mode, ClockId hat_clock = 0);

struct ZoState {
    LocationId location;
    Region region;
    CornerPoint corner;
};

struct ZoAction {
    std::size_t source;
    Guard guard;  // constraints on clock 0 (x̂p)
    bool reset;
    std::size_t target;
    TransitionId origin;  // transition of A'
};

struct ZeroOneTA {
    std::string name;
    std::vector<std::string> params;
    std::vector<std::string> location_names;
    std::vector<bool> accepting_locations;

    /// Clocks of Ĉ in region/corner order, as ids of A'.
    std::vector<ClockId> hat_clocks;
    std::vector<std::string> hat_clock_names;
    std::size_t z_position = 0;
    std::string clock_name;  // x̂p
    int bound = 0;           // M over Ĉ
    std::int64_t xp_constant = 0;  // largest integer constant compared with xp

    std::vector<ZoState> states;
    std::size_t initial = 0;
    std::vector<std::optional<std::size_t>> zero_delay;  // per state
    std::vector<std::optional<std::size_t>> unit_delay;  // per state
    std::vector<ZoAction> actions;
    std::vector<std::vector<std::size_t>> outgoing;  // action indices per state
    /// States at a non-accepting location from which no transition leaving
    /// the location can ever fire again; they are kept but not expanded.
    std::vector<bool> pruned;
    std::vector<bool> expanded;

    bool accepting(std::size_t s) const { return accepting_locations[states[s].location]; }
    Iota iota_of(std::size_t s) const { return iota(states[s].region, states[s].corner, z_position); }
};

/// Grows Â one state at a time: states are interned when first reached and
/// their edges are computed by expand().
class ZeroOneBuilder {
public:
    explicit ZeroOneBuilder(const FractionalPta& aprime);
    ~ZeroOneBuilder();
    ZeroOneBuilder(const ZeroOneBuilder&) = delete;
    ZeroOneBuilder& operator=(const ZeroOneBuilder&) = delete;

    const ZeroOneTA& graph() const;
    void expand(std::size_t state);
    ZeroOneTA take();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Reachable fragment of Â, built breadth-first from (ℓ0, r0, α0). Triples
/// that can never leave their non-accepting location are not expanded.
/// Throws Error once more than `max_states` states exist.
ZeroOneTA build_01(const FractionalPta& aprime, std::size_t max_states = 50'000'000);

// ── Discrete semantics ──────────────────────────────────────────────────────

enum class ZoEdge : std::uint8_t { Zero, Unit, Action };

std::string_view to_string(ZoEdge e);

struct ZoConfiguration {
    std::size_t state = 0;
    std::int64_t t = 0;

    friend bool operator==(const ZoConfiguration&, const ZoConfiguration&) = default;
};

struct ZoStep {
    ZoEdge kind;
    std::size_t action = 0;  // index into ZeroOneTA::actions when kind == Action
    ZoConfiguration to;
};

struct ZoRun {
    ZoConfiguration start;
    std::vector<ZoStep> steps;
};

struct ZoResult {
    bool empty = true;
    std::optional<ZoRun> run;
    std::size_t states_explored = 0;
    std::int64_t saturation = 0;  // Mp + 1
};

/// Largest constant x̂p is compared with under γ (Mp): the γ values and the
/// integer constants on xp in A'.
std::int64_t hat_bound(const ZeroOneTA& zo, std::span<const std::int64_t> gamma);

/// Accepting-state reachability in Â under γ, with x̂p saturating at Mp + 1.
ZoResult zo_empty(const ZeroOneTA& zo, std::span<const std::int64_t> gamma);
ZoResult zo_empty(const ZeroOneTA& zo, const ParamValuation& gamma);

struct OnTheFlyResult {
    ZeroOneTA graph;  // the part of Â expanded by the search
    ZoResult result;
};

/// Same verdict and run as zo_empty(build_01(aprime), γ), expanding only the
/// states the search visits.
OnTheFlyResult zo_search(const FractionalPta& aprime, std::span<const std::int64_t> gamma);

// ── Correspondence and concretization ───────────────────────────────────────

/// ν over the clocks of A' corresponds with (r, α, t): ν restricted to Ĉ lies
/// in r, ⌊ν(xp)⌋ + f(r,α) = t, and ν(xp) is integral iff ι(r,α) = EXACT. With
/// a saturation value s, condition 2 compares min(⌊ν(xp)⌋ + f, s) with t.
bool corresponds(const ZeroOneTA& zo, ClockId xp, const ClockValuation& nu, const Region& r,
                 const CornerPoint& alpha, std::int64_t t, std::optional<std::int64_t> saturation = {});

struct Concretization {
    TimedRun run;                         // run of A'
    std::vector<ClockValuation> valuations;  // aligned with start + each Â step
};

/// Builds a run of A' that corresponds step by step with `run`. Throws
/// StepError (step = Â step index) when the Â run is not a valid run under γ
/// or correspondence breaks.
Concretization concretize_run(const ZeroOneTA& zo, const FractionalPta& aprime,
                              std::span<const std::int64_t> gamma, const ZoRun& run);

std::string to_dot(const ZeroOneTA& zo);

}  // namespace pta

#endif  // PTA_ZERONE_HPP
