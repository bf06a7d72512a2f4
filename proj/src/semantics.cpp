// ============================================================================
// semantics.cpp: timed transition system, replay, region-graph emptiness
// ============================================================================

#include "pta/semantics.hpp"

#include "pta/error.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace pta {

namespace {

std::string describe_violation(const Pta& a, const Guard& g, const ClockValuation& nu,
                               std::span<const std::int64_t> gamma) {
    for (const auto& c : g.constraints) {
        if (!satisfies(nu, c, gamma)) return to_string(c, a);
    }
    return "true";
}

std::vector<std::size_t> reset_positions(const Transition& t) {
    return std::vector<std::size_t>(t.resets.begin(), t.resets.end());
}

bool region_satisfies(const Region& r, const Guard& g, std::span<const std::int64_t> gamma) {
    return std::all_of(g.constraints.begin(), g.constraints.end(), [&](const Constraint& c) {
        return satisfies(r, c.clock, c.rel, c.bound.value(gamma));
    });
}

struct StateKey {
    LocationId location;
    Region region;
    friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& s) const {
        return s.region.hash() ^ (s.location * 0x9e3779b97f4a7c15ULL);
    }
};

// Lazily explored region graph. Each node remembers how it was reached.
class RegionSearch {
public:
    RegionSearch(const Pta& a, std::span<const std::int64_t> gamma)
        : a_(a), gamma_(gamma), bound_(region_bound(a, gamma)) {
        for (TransitionId t = 0; t < a.transitions.size(); ++t) {
            outgoing_.resize(a.locations.size());
            outgoing_[a.transitions[t].source].push_back(t);
        }
        outgoing_.resize(a.locations.size());
    }

    int bound() const { return bound_; }

    struct Node {
        StateKey key;
        std::size_t parent;
        std::optional<TransitionId> via;  // empty: time successor (or root)
    };

    std::vector<Node> nodes;

    // Returns the index of the added node or npos if already known.
    std::size_t add(StateKey key, std::size_t parent, std::optional<TransitionId> via) {
        auto [it, fresh] = index_.emplace(key, nodes.size());
        if (!fresh) return npos;
        nodes.push_back(Node{std::move(key), parent, via});
        return nodes.size() - 1;
    }

    std::size_t find(const StateKey& key) const {
        auto it = index_.find(key);
        return it == index_.end() ? npos : it->second;
    }

    template <typename Visit>
    void successors(std::size_t n, Visit&& visit) {
        const StateKey key = nodes[n].key;
        const Location& loc = a_.locations[key.location];
        Region next = succ(key.region);
        if (!(next == key.region) && region_satisfies(next, loc.invariant, gamma_)) {
            visit(StateKey{key.location, std::move(next)}, std::optional<TransitionId>{});
        }
        for (TransitionId t : outgoing_[key.location]) {
            const Transition& tr = a_.transitions[t];
            if (!region_satisfies(key.region, tr.guard, gamma_)) continue;
            auto positions = reset_positions(tr);
            Region target = reset(key.region, positions);
            if (!region_satisfies(target, a_.locations[tr.target].invariant, gamma_)) continue;
            visit(StateKey{tr.target, std::move(target)}, std::optional<TransitionId>{t});
        }
    }

    // Concrete run along the node path root -> n, starting from `start`.
    TimedRun concretize(std::size_t n, const Configuration& start) const {
        std::vector<std::size_t> path;
        for (std::size_t cur = n; cur != npos; cur = nodes[cur].parent) path.push_back(cur);
        std::reverse(path.begin(), path.end());

        TimedRun run;
        ClockValuation nu = start.nu;
        Rational pending = 0;
        for (std::size_t i = 1; i < path.size(); ++i) {
            const Node& node = nodes[path[i]];
            if (!node.via) {
                Rational d = successor_delay(nu, bound_);
                for (auto& v : nu) v += d;
                pending += d;
            } else {
                run.steps.push_back(RunStep{pending, *node.via});
                pending = 0;
                for (ClockId x : a_.transitions[*node.via].resets) nu[x] = 0;
            }
            if (!(region_of(nu, bound_) == node.key.region)) {
                throw Error("internal: witness valuation left the region path");
            }
        }
        return run;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    const Pta& a_;
    std::span<const std::int64_t> gamma_;
    int bound_;
    std::vector<std::vector<TransitionId>> outgoing_;
    std::unordered_map<StateKey, std::size_t, StateKeyHash> index_;
};

}  // namespace

int region_bound(const Pta& a, std::span<const std::int64_t> gamma) {
    std::int64_t m = 0;
    auto scan = [&](const Guard& g) {
        for (const auto& c : g.constraints) m = std::max(m, c.bound.value(gamma));
    };
    for (const auto& l : a.locations) scan(l.invariant);
    for (const auto& t : a.transitions) scan(t.guard);
    return static_cast<int>(m);
}

Configuration initial_configuration(const Pta& a, std::span<const std::int64_t> gamma) {
    Configuration c{a.initial, ClockValuation(a.clocks.size(), Rational(0))};
    const Guard& inv = a.locations[a.initial].invariant;
    if (!satisfies(c.nu, inv, gamma)) {
        throw StepError("initial valuation violates invariant " + describe_violation(a, inv, c.nu, gamma) +
                        " of '" + a.locations[a.initial].name + "'");
    }
    return c;
}

Configuration delay(const Pta& a, const Configuration& c, const Rational& d,
                    std::span<const std::int64_t> gamma) {
    if (d < 0) throw StepError("negative delay " + to_string(d));
    Configuration out = c;
    for (auto& v : out.nu) v += d;
    const Guard& inv = a.locations[c.location].invariant;
    if (!satisfies(out.nu, inv, gamma)) {
        throw StepError("delay " + to_string(d) + " violates invariant " +
                        describe_violation(a, inv, out.nu, gamma) + " of '" + a.locations[c.location].name +
                        "'");
    }
    return out;
}

Configuration fire(const Pta& a, const Configuration& c, TransitionId t, std::span<const std::int64_t> gamma) {
    if (t >= a.transitions.size()) throw StepError("transition " + std::to_string(t) + " does not exist");
    const Transition& tr = a.transitions[t];
    if (tr.source != c.location) {
        throw StepError("transition " + std::to_string(t) + " does not leave '" +
                        a.locations[c.location].name + "'");
    }
    if (!satisfies(c.nu, tr.guard, gamma)) {
        throw StepError("transition " + std::to_string(t) + ": guard " +
                        describe_violation(a, tr.guard, c.nu, gamma) + " is not satisfied");
    }
    Configuration out{tr.target, c.nu};
    for (ClockId x : tr.resets) out.nu[x] = 0;
    const Guard& inv = a.locations[tr.target].invariant;
    if (!satisfies(out.nu, inv, gamma)) {
        throw StepError("transition " + std::to_string(t) + ": target invariant " +
                        describe_violation(a, inv, out.nu, gamma) + " is not satisfied");
    }
    return out;
}

std::vector<Configuration> replay_trace(const Pta& a, std::span<const std::int64_t> gamma,
                                        const Configuration& start, const TimedRun& run) {
    std::vector<Configuration> out{start};
    Configuration cur = start;
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        try {
            cur = delay(a, cur, run.steps[i].delay, gamma);
            cur = fire(a, cur, run.steps[i].transition, gamma);
        } catch (const StepError& e) {
            throw StepError("step " + std::to_string(i) + ": " + e.what(), i);
        }
        out.push_back(cur);
    }
    return out;
}

Configuration replay(const Pta& a, const ParamValuation& gamma, const TimedRun& run) {
    auto values = resolve_params(a, gamma);
    return replay_trace(a, values, initial_configuration(a, values), run).back();
}

Configuration replay_from(const Pta& a, const ParamValuation& gamma, const Configuration& start,
                          const TimedRun& run) {
    auto values = resolve_params(a, gamma);
    return replay_trace(a, values, start, run).back();
}

bool accepts(const Pta& a, const ParamValuation& gamma, const TimedRun& run) {
    try {
        return a.locations[replay(a, gamma, run).location].accepting;
    } catch (const StepError&) {
        return false;
    }
}

EmptinessResult search_from(const Pta& a, std::span<const std::int64_t> gamma, const Configuration& start,
                            const std::function<bool(LocationId)>& target) {
    auto is_target = [&](LocationId l) { return target ? target(l) : a.locations[l].accepting; };
    RegionSearch search(a, gamma);
    EmptinessResult result;

    if (!satisfies(start.nu, a.locations[start.location].invariant, gamma)) return result;
    StateKey root{start.location, region_of(start.nu, search.bound())};
    search.add(root, RegionSearch::npos, std::nullopt);
    if (is_target(start.location)) {
        result.empty = false;
        result.witness = TimedRun{};
        result.states_explored = 1;
        return result;
    }
    for (std::size_t head = 0; head < search.nodes.size(); ++head) {
        std::size_t found = RegionSearch::npos;
        search.successors(head, [&](StateKey key, std::optional<TransitionId> via) {
            if (found != RegionSearch::npos) return;
            LocationId loc = key.location;
            std::size_t idx = search.add(std::move(key), head, via);
            if (idx != RegionSearch::npos && is_target(loc)) found = idx;
        });
        if (found != RegionSearch::npos) {
            result.empty = false;
            result.witness = search.concretize(found, start);
            break;
        }
    }
    result.states_explored = search.nodes.size();
    return result;
}

EmptinessResult empty(const Pta& a, const ParamValuation& gamma) {
    auto values = resolve_params(a, gamma);
    Configuration start{a.initial, ClockValuation(a.clocks.size(), Rational(0))};
    return search_from(a, values, start);
}

RegionGraph explore_region_graph(const Pta& a, const ParamValuation& gamma, std::size_t max_nodes) {
    auto values = resolve_params(a, gamma);
    RegionSearch search(a, values);
    RegionGraph g;
    ClockValuation zero(a.clocks.size(), Rational(0));
    if (!satisfies(zero, a.locations[a.initial].invariant, values)) return g;
    search.add(StateKey{a.initial, region_of(zero, search.bound())}, RegionSearch::npos, std::nullopt);
    for (std::size_t head = 0; head < search.nodes.size(); ++head) {
        search.successors(head, [&](StateKey key, std::optional<TransitionId> via) {
            std::size_t to = search.find(key);
            if (to == RegionSearch::npos) {
                if (search.nodes.size() >= max_nodes) {
                    g.truncated = true;
                    return;
                }
                to = search.add(std::move(key), head, via);
            }
            g.edges.push_back(RegionGraph::Edge{head, to, via});
        });
    }
    for (const auto& n : search.nodes) g.nodes.push_back(RegionGraph::Node{n.key.location, n.key.region});
    return g;
}

std::string to_dot(const RegionGraph& g, const Pta& a) {
    std::ostringstream os;
    os << "digraph region_graph {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        const auto& loc = a.locations[n.location];
        os << "  n" << i << " [label=\"" << loc.name << "\\n" << to_string(n.region, a.clocks) << "\"";
        if (loc.accepting) os << ", peripheries=2";
        os << "];\n";
    }
    for (const auto& e : g.edges) {
        os << "  n" << e.from << " -> n" << e.to;
        if (e.transition) {
            os << " [label=\"t" << *e.transition << " " << a.transitions[*e.transition].action << "\"]";
        } else {
            os << " [style=dashed, label=\"succ\"]";
        }
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace pta
