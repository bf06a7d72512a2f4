// ============================================================================
// pta/model.hpp: parametric timed automata: types and structural operations
// ============================================================================
//
// A PTA is stored with index-based references: clocks, parameters and
// locations are identified by their position in the owning tables. Guards are
// conjunctions of simple constraints `x ~ c` where c is a nonnegative integer
// or a parameter; diagonal constraints do not exist.
//
// All operations here are pure: they take automata by const reference and
// return new values.
//
// ============================================================================

#ifndef PTA_MODEL_HPP
#define PTA_MODEL_HPP

#include "pta/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pta {

using ClockId = std::size_t;
using ParamId = std::size_t;
using LocationId = std::size_t;
using TransitionId = std::size_t;

// ── Relation ────────────────────────────────────────────────────────────────

enum class Relation : std::uint8_t { Less, LessEq, Equal, GreaterEq, Greater };

std::string_view to_string(Relation rel);

/// True for < and <=, the only relations allowed in invariants.
bool is_upper_bound(Relation rel);

template <typename T>
bool compare(Relation rel, const T& lhs, const T& rhs) {
    switch (rel) {
        case Relation::Less: return lhs < rhs;
        case Relation::LessEq: return lhs <= rhs;
        case Relation::Equal: return lhs == rhs;
        case Relation::GreaterEq: return lhs >= rhs;
        case Relation::Greater: return lhs > rhs;
    }
    return false;
}

// ── Bound ───────────────────────────────────────────────────────────────────
// Right-hand side of a simple constraint: integer constant or parameter.

class Bound {
public:
    static Bound constant(std::int64_t value) { return Bound(false, value); }
    static Bound parameter(ParamId id) { return Bound(true, static_cast<std::int64_t>(id)); }

    bool is_parameter() const { return parameter_; }
    std::int64_t constant() const { return value_; }
    ParamId parameter() const { return static_cast<ParamId>(value_); }

    /// Value under a parameter valuation indexed by ParamId.
    std::int64_t value(std::span<const std::int64_t> gamma) const {
        return parameter_ ? gamma[parameter()] : value_;
    }

    friend bool operator==(const Bound&, const Bound&) = default;
    friend auto operator<=>(const Bound&, const Bound&) = default;

private:
    Bound(bool parameter, std::int64_t value) : parameter_(parameter), value_(value) {}

    bool parameter_;
    std::int64_t value_;
};

struct Constraint {
    ClockId clock;
    Relation rel;
    Bound bound;

    friend bool operator==(const Constraint&, const Constraint&) = default;
    friend auto operator<=>(const Constraint&, const Constraint&) = default;
};

/// Conjunction of simple constraints; empty means true.
struct Guard {
    std::vector<Constraint> constraints;

    bool is_true() const { return constraints.empty(); }
    /// Appends `c` unless an identical constraint is already present.
    void add(const Constraint& c);

    friend bool operator==(const Guard&, const Guard&) = default;
};

Guard conjoin(const Guard& a, const Guard& b);

struct Location {
    std::string name;
    Guard invariant;
    bool accepting = false;

    friend bool operator==(const Location&, const Location&) = default;
};

/// Handshake polarity of a transition label (`a!`, `a?`, or plain `a`).
enum class Sync : std::uint8_t { None, Send, Receive };

struct Transition {
    LocationId source = 0;
    Guard guard;
    std::string action = "tau";
    Sync sync = Sync::None;
    std::vector<ClockId> resets;  // sorted, no duplicates
    LocationId target = 0;

    bool resets_clock(ClockId x) const;

    friend bool operator==(const Transition&, const Transition&) = default;
};

struct Pta {
    std::string name = "A";
    std::vector<std::string> clocks;
    std::vector<std::string> params;
    std::vector<Location> locations;
    LocationId initial = 0;
    std::vector<Transition> transitions;

    std::optional<ClockId> find_clock(std::string_view name) const;
    std::optional<ParamId> find_param(std::string_view name) const;
    std::optional<LocationId> find_location(std::string_view name) const;

    std::set<std::string> alphabet() const;
    std::vector<TransitionId> outgoing(LocationId l) const;

    friend bool operator==(const Pta&, const Pta&) = default;
};

/// Parameter valuation by parameter name; values are nonnegative integers.
using ParamValuation = std::map<std::string, std::int64_t>;

/// Clock valuation indexed by ClockId.
using ClockValuation = std::vector<Rational>;

/// γ as a vector indexed by the automaton's ParamId. Throws ModelError when a
/// parameter is missing or a value is negative.
std::vector<std::int64_t> resolve_params(const Pta& a, const ParamValuation& gamma);

bool satisfies(const ClockValuation& nu, const Constraint& c, std::span<const std::int64_t> gamma);
bool satisfies(const ClockValuation& nu, const Guard& g, std::span<const std::int64_t> gamma);

/// Structural checks; throws ModelError naming the offending element.
void validate(const Pta& a);

/// Clocks compared with at least one parameter in a guard or invariant.
std::set<ClockId> parametric_clocks(const Pta& a);

/// Clocks appearing in any constraint or reset.
std::set<ClockId> used_clocks(const Pta& a);

/// Moves invariants onto guards and renames every action to `tau`.
/// Each transition l -(g,a,R)-> l' becomes l -(g & I(l) & I(l')[R], tau, R)-> l'
/// where I(l')[R] drops the conjuncts on reset clocks. Transition indices are
/// preserved. Emptiness is preserved for every γ under which the initial
/// valuation satisfies the initial invariant and every entry check holds.
Pta normalize(const Pta& a);

/// Conjuncts of I(l') on clocks reset by l -> l'. normalize drops them; the
/// transition may only be taken when they hold with the clock at 0.
std::vector<std::pair<TransitionId, Constraint>> entry_checks(const Pta& a);

/// Replaces every parameter occurrence by its value; the result has no
/// parameters. Throws ModelError if γ misses a parameter.
Pta substitute_params(const Pta& a, const ParamValuation& gamma);

struct ProductOptions {
    /// Index of the component whose accepting locations make a tuple
    /// accepting. Unset: a tuple is accepting when any component is.
    std::optional<std::size_t> accepting_component;
};

/// Binary handshake product. Transitions labelled with a channel in
/// `channels` fire only as a send/receive pair from two distinct components;
/// all other transitions interleave and keep their label. Clock and parameter
/// tables are merged by name; the components must use pairwise-disjoint
/// clocks.
Pta product(std::span<const Pta> components, const std::set<std::string>& channels,
            const ProductOptions& options = {});

/// Largest integer constant compared with any of `clocks`; 0 if none.
std::int64_t max_constant(const Pta& a, const std::set<ClockId>& clocks);

/// Largest integer constant over all constraints.
std::int64_t max_constant(const Pta& a);

std::string to_string(const Constraint& c, const Pta& a);
std::string to_string(const Guard& g, const Pta& a);

}  // namespace pta

#endif  // PTA_MODEL_HPP
