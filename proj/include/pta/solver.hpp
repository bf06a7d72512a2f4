// ============================================================================
// pta/solver.hpp: bounded parameter synthesis
// ============================================================================
//
// Valuations are enumerated by increasing parameter sum 0..B; valuations with
// the same sum are visited in lexicographic order of their value vectors, the
// parameters being sorted by name. REACH stops at the first valuation with a
// nonempty language, SAFE at the first with an empty one. Each valuation is
// decided by the concrete region graph, by the 0/1 automaton, or by both with
// a cross-check.
//
// ============================================================================

#ifndef PTA_SOLVER_HPP
#define PTA_SOLVER_HPP

#include "pta/model.hpp"
#include "pta/semantics.hpp"
#include "pta/zerone.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pta {

enum class Mode : std::uint8_t { Reach, Safe };
enum class Backend : std::uint8_t { Concrete, ZeroOne, BothCheck };

std::string_view to_string(Mode m);
std::string_view to_string(Backend b);
Mode parse_mode(std::string_view s);
Backend parse_backend(std::string_view s);

struct CheckResult {
    bool empty = true;
    std::optional<TimedRun> witness;  // run of the checked automaton
    std::size_t states_explored = 0;
    /// ZERONE only: the Â run, the explored part of Â it refers to, and its
    /// concretization as a run of A'.
    std::optional<ZoRun> zo_run;
    std::shared_ptr<const ZeroOneTA> zo_graph;
    std::optional<Concretization> concretization;
};

/// Per-automaton state shared by all valuations: the automaton and, for the
/// zerone backend, A' built from its normal form. Â is explored per valuation.
class Checker {
public:
    Checker(Pta automaton, Backend backend);

    const Pta& automaton() const { return automaton_; }
    Backend backend() const { return backend_; }
    const FractionalPta& fractional() const;

    /// Throws SolverError on backend disagreement under BOTH-CHECK.
    CheckResult check(const ParamValuation& gamma) const;
    CheckResult check_concrete(const ParamValuation& gamma) const;
    CheckResult check_zero_one(const ParamValuation& gamma) const;

private:
    Pta automaton_;
    Backend backend_;
    std::shared_ptr<const FractionalPta> fractional_;
    std::vector<std::pair<TransitionId, Constraint>> entry_checks_;
};

/// One-shot convenience wrapper around Checker.
CheckResult check(const Pta& a, const ParamValuation& gamma, Backend backend);

struct SynthesisQuery {
    Pta automaton;
    Mode mode = Mode::Reach;
    std::int64_t bound = 0;
    Backend backend = Backend::Concrete;
    /// Worker threads; 0 reads PTA_THREADS and falls back to 1.
    unsigned threads = 0;
};

struct SolverStats {
    std::size_t valuations_tested = 0;
    std::size_t states_explored = 0;
    double seconds = 0;
};

struct SynthesisResult {
    bool found = false;
    ParamValuation gamma;              // valid when found
    std::optional<TimedRun> witness;   // REACH only
    Mode mode = Mode::Reach;
    std::int64_t bound = 0;
    SolverStats stats;
};

/// Candidate valuations in enumeration order.
std::vector<ParamValuation> enumerate_valuations(const std::vector<std::string>& params, std::int64_t bound);

SynthesisResult solve(const SynthesisQuery& q);

/// Thread count from PTA_THREADS (>= 1).
unsigned default_threads();

}  // namespace pta

#endif  // PTA_SOLVER_HPP
