// ============================================================================
// model.cpp: PTA structural operations
// ============================================================================

#include "pta/model.hpp"

#include "pta/error.hpp"

#include <algorithm>
#include <sstream>

namespace pta {

std::string_view to_string(Relation rel) {
    switch (rel) {
        case Relation::Less: return "<";
        case Relation::LessEq: return "<=";
        case Relation::Equal: return "==";
        case Relation::GreaterEq: return ">=";
        case Relation::Greater: return ">";
    }
    return "?";
}

bool is_upper_bound(Relation rel) { return rel == Relation::Less || rel == Relation::LessEq; }

void Guard::add(const Constraint& c) {
    if (std::find(constraints.begin(), constraints.end(), c) == constraints.end()) {
        constraints.push_back(c);
    }
}

Guard conjoin(const Guard& a, const Guard& b) {
    Guard out = a;
    for (const auto& c : b.constraints) out.add(c);
    return out;
}

bool Transition::resets_clock(ClockId x) const {
    return std::binary_search(resets.begin(), resets.end(), x);
}

namespace {

template <typename Table>
std::optional<std::size_t> index_of(const Table& table, std::string_view name) {
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] == name) return i;
    }
    return std::nullopt;
}

template <typename Fn>
void for_each_constraint(const Pta& a, Fn&& fn) {
    for (const auto& loc : a.locations) {
        for (const auto& c : loc.invariant.constraints) fn(c);
    }
    for (const auto& t : a.transitions) {
        for (const auto& c : t.guard.constraints) fn(c);
    }
}

}  // namespace

std::optional<ClockId> Pta::find_clock(std::string_view n) const { return index_of(clocks, n); }
std::optional<ParamId> Pta::find_param(std::string_view n) const { return index_of(params, n); }

std::optional<LocationId> Pta::find_location(std::string_view n) const {
    for (std::size_t i = 0; i < locations.size(); ++i) {
        if (locations[i].name == n) return i;
    }
    return std::nullopt;
}

std::set<std::string> Pta::alphabet() const {
    std::set<std::string> out;
    for (const auto& t : transitions) out.insert(t.action);
    return out;
}

std::vector<TransitionId> Pta::outgoing(LocationId l) const {
    std::vector<TransitionId> out;
    for (TransitionId i = 0; i < transitions.size(); ++i) {
        if (transitions[i].source == l) out.push_back(i);
    }
    return out;
}

std::vector<std::int64_t> resolve_params(const Pta& a, const ParamValuation& gamma) {
    std::vector<std::int64_t> out(a.params.size(), 0);
    for (ParamId p = 0; p < a.params.size(); ++p) {
        auto it = gamma.find(a.params[p]);
        if (it == gamma.end()) {
            throw ModelError("parameter valuation misses parameter '" + a.params[p] + "'");
        }
        if (it->second < 0) {
            throw ModelError("parameter '" + a.params[p] + "' has negative value");
        }
        out[p] = it->second;
    }
    return out;
}

bool satisfies(const ClockValuation& nu, const Constraint& c, std::span<const std::int64_t> gamma) {
    return compare(c.rel, nu[c.clock], Rational(c.bound.value(gamma)));
}

bool satisfies(const ClockValuation& nu, const Guard& g, std::span<const std::int64_t> gamma) {
    return std::all_of(g.constraints.begin(), g.constraints.end(),
                       [&](const Constraint& c) { return satisfies(nu, c, gamma); });
}

void validate(const Pta& a) {
    if (a.locations.empty()) throw ModelError("automaton '" + a.name + "' has no locations");
    if (a.initial >= a.locations.size()) throw ModelError("initial location out of range");

    auto check_constraint = [&](const Constraint& c, const std::string& where) {
        if (c.clock >= a.clocks.size()) throw ModelError("undeclared clock in " + where);
        if (c.bound.is_parameter()) {
            if (c.bound.parameter() >= a.params.size()) {
                throw ModelError("undeclared parameter in " + where);
            }
        } else if (c.bound.constant() < 0) {
            throw ModelError("negative constant in " + where);
        }
    };

    for (const auto& loc : a.locations) {
        for (const auto& c : loc.invariant.constraints) {
            check_constraint(c, "invariant of '" + loc.name + "'");
            if (!is_upper_bound(c.rel)) {
                throw ModelError("invariant of '" + loc.name + "' uses lower-bound relation " +
                                 std::string(to_string(c.rel)));
            }
        }
    }
    for (TransitionId i = 0; i < a.transitions.size(); ++i) {
        const auto& t = a.transitions[i];
        std::string where = "transition " + std::to_string(i);
        if (t.source >= a.locations.size() || t.target >= a.locations.size()) {
            throw ModelError(where + " has an endpoint outside the location set");
        }
        for (const auto& c : t.guard.constraints) check_constraint(c, where);
        for (ClockId x : t.resets) {
            if (x >= a.clocks.size()) throw ModelError(where + " resets an undeclared clock");
        }
        if (!std::is_sorted(t.resets.begin(), t.resets.end()) ||
            std::adjacent_find(t.resets.begin(), t.resets.end()) != t.resets.end()) {
            throw ModelError(where + " has an unsorted or duplicated reset set");
        }
    }
}

std::set<ClockId> parametric_clocks(const Pta& a) {
    std::set<ClockId> out;
    for_each_constraint(a, [&](const Constraint& c) {
        if (c.bound.is_parameter()) out.insert(c.clock);
    });
    return out;
}

std::set<ClockId> used_clocks(const Pta& a) {
    std::set<ClockId> out;
    for_each_constraint(a, [&](const Constraint& c) { out.insert(c.clock); });
    for (const auto& t : a.transitions) out.insert(t.resets.begin(), t.resets.end());
    return out;
}

Pta normalize(const Pta& a) {
    Pta out = a;
    for (auto& t : out.transitions) {
        Guard g = conjoin(t.guard, a.locations[t.source].invariant);
        for (const auto& c : a.locations[t.target].invariant.constraints) {
            if (!t.resets_clock(c.clock)) g.add(c);
        }
        t.guard = std::move(g);
        t.action = "tau";
        t.sync = Sync::None;
    }
    for (auto& loc : out.locations) loc.invariant = Guard{};
    return out;
}

std::vector<std::pair<TransitionId, Constraint>> entry_checks(const Pta& a) {
    std::vector<std::pair<TransitionId, Constraint>> out;
    for (TransitionId t = 0; t < a.transitions.size(); ++t) {
        const Transition& tr = a.transitions[t];
        for (const auto& c : a.locations[tr.target].invariant.constraints) {
            if (tr.resets_clock(c.clock)) out.emplace_back(t, c);
        }
    }
    return out;
}

Pta substitute_params(const Pta& a, const ParamValuation& gamma) {
    std::vector<std::int64_t> values = resolve_params(a, gamma);
    auto subst = [&](Guard& g) {
        Guard out;
        for (auto c : g.constraints) {
            if (c.bound.is_parameter()) c.bound = Bound::constant(values[c.bound.parameter()]);
            out.add(c);
        }
        g = std::move(out);
    };
    Pta out = a;
    for (auto& loc : out.locations) subst(loc.invariant);
    for (auto& t : out.transitions) subst(t.guard);
    out.params.clear();
    return out;
}

// ============================================================================
// product
// ============================================================================

namespace {

ClockId intern(std::vector<std::string>& table, const std::string& name) {
    auto it = std::find(table.begin(), table.end(), name);
    if (it != table.end()) return static_cast<std::size_t>(it - table.begin());
    table.push_back(name);
    return table.size() - 1;
}

struct Remap {
    std::vector<ClockId> clock;
    std::vector<ParamId> param;

    Constraint operator()(const Constraint& c) const {
        Bound b = c.bound.is_parameter() ? Bound::parameter(param[c.bound.parameter()]) : c.bound;
        return Constraint{clock[c.clock], c.rel, b};
    }
    Guard operator()(const Guard& g) const {
        Guard out;
        for (const auto& c : g.constraints) out.add((*this)(c));
        return out;
    }
    std::vector<ClockId> resets(const std::vector<ClockId>& r) const {
        std::vector<ClockId> out;
        for (ClockId x : r) out.push_back(clock[x]);
        std::sort(out.begin(), out.end());
        return out;
    }
};

std::vector<ClockId> merge_resets(const std::vector<ClockId>& a, const std::vector<ClockId>& b) {
    std::vector<ClockId> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

Pta product(std::span<const Pta> components, const std::set<std::string>& channels,
            const ProductOptions& options) {
    if (components.empty()) throw ModelError("product of zero components");
    if (options.accepting_component && *options.accepting_component >= components.size()) {
        throw ModelError("accepting component index out of range");
    }

    Pta out;
    std::vector<Remap> remaps(components.size());
    for (std::size_t i = 0; i < components.size(); ++i) {
        const Pta& c = components[i];
        for (const auto& x : c.clocks) remaps[i].clock.push_back(intern(out.clocks, x));
        for (const auto& p : c.params) remaps[i].param.push_back(intern(out.params, p));
    }

    // Disjoint clock usage.
    std::map<ClockId, std::size_t> owner;
    for (std::size_t i = 0; i < components.size(); ++i) {
        for (ClockId x : used_clocks(components[i])) {
            ClockId g = remaps[i].clock[x];
            auto [it, fresh] = owner.emplace(g, i);
            if (!fresh && it->second != i) {
                throw ModelError("clock '" + out.clocks[g] + "' is shared by components '" +
                                 components[it->second].name + "' and '" + components[i].name + "'");
            }
        }
    }

    // Every channel that is used needs both polarities.
    for (const auto& ch : channels) {
        bool send = false, receive = false, plain = false;
        for (const auto& c : components) {
            for (const auto& t : c.transitions) {
                if (t.action != ch) continue;
                send |= t.sync == Sync::Send;
                receive |= t.sync == Sync::Receive;
                plain |= t.sync == Sync::None;
            }
        }
        if (plain) throw ModelError("channel '" + ch + "' used without send/receive polarity");
        if (send && !receive) throw ModelError("channel '" + ch + "' has a sender but no receiver");
        if (receive && !send) throw ModelError("channel '" + ch + "' has a receiver but no sender");
    }

    const std::size_t n = components.size();
    std::vector<std::size_t> radix(n);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        radix[i] = total;
        total *= components[i].locations.size();
    }
    auto decode = [&](std::size_t index) {
        std::vector<LocationId> tuple(n);
        for (std::size_t i = 0; i < n; ++i) {
            tuple[i] = (index / radix[i]) % components[i].locations.size();
        }
        return tuple;
    };
    auto encode = [&](const std::vector<LocationId>& tuple) {
        std::size_t index = 0;
        for (std::size_t i = 0; i < n; ++i) index += tuple[i] * radix[i];
        return index;
    };

    std::vector<std::vector<std::vector<TransitionId>>> outgoing(n);
    for (std::size_t i = 0; i < n; ++i) {
        outgoing[i].resize(components[i].locations.size());
        for (TransitionId t = 0; t < components[i].transitions.size(); ++t) {
            outgoing[i][components[i].transitions[t].source].push_back(t);
        }
    }

    std::string name;
    for (std::size_t i = 0; i < n; ++i) name += (i ? "_" : "") + components[i].name;
    out.name = name;

    out.locations.resize(total);
    for (std::size_t index = 0; index < total; ++index) {
        auto tuple = decode(index);
        Location loc;
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            const Location& part = components[i].locations[tuple[i]];
            loc.name += (i ? "." : "") + part.name;
            loc.invariant = conjoin(loc.invariant, remaps[i](part.invariant));
            any |= part.accepting;
        }
        loc.accepting = options.accepting_component
                            ? components[*options.accepting_component]
                                  .locations[tuple[*options.accepting_component]]
                                  .accepting
                            : any;
        out.locations[index] = std::move(loc);
    }
    {
        std::vector<LocationId> init(n);
        for (std::size_t i = 0; i < n; ++i) init[i] = components[i].initial;
        out.initial = encode(init);
    }

    for (std::size_t index = 0; index < total; ++index) {
        auto tuple = decode(index);
        for (std::size_t i = 0; i < n; ++i) {
            for (TransitionId ti : outgoing[i][tuple[i]]) {
                const Transition& t = components[i].transitions[ti];
                if (!channels.count(t.action)) {
                    auto next = tuple;
                    next[i] = t.target;
                    Transition nt;
                    nt.source = index;
                    nt.guard = remaps[i](t.guard);
                    nt.action = t.action;
                    nt.sync = t.sync;
                    nt.resets = remaps[i].resets(t.resets);
                    nt.target = encode(next);
                    out.transitions.push_back(std::move(nt));
                    continue;
                }
                if (t.sync != Sync::Send) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i) continue;
                    for (TransitionId uj : outgoing[j][tuple[j]]) {
                        const Transition& u = components[j].transitions[uj];
                        if (u.action != t.action || u.sync != Sync::Receive) continue;
                        auto next = tuple;
                        next[i] = t.target;
                        next[j] = u.target;
                        Transition nt;
                        nt.source = index;
                        nt.guard = conjoin(remaps[i](t.guard), remaps[j](u.guard));
                        nt.action = t.action;
                        nt.sync = Sync::None;
                        nt.resets = merge_resets(remaps[i].resets(t.resets), remaps[j].resets(u.resets));
                        nt.target = encode(next);
                        out.transitions.push_back(std::move(nt));
                    }
                }
            }
        }
    }
    return out;
}

std::int64_t max_constant(const Pta& a, const std::set<ClockId>& clocks) {
    std::int64_t m = 0;
    for_each_constraint(a, [&](const Constraint& c) {
        if (!c.bound.is_parameter() && clocks.count(c.clock)) m = std::max(m, c.bound.constant());
    });
    return m;
}

std::int64_t max_constant(const Pta& a) {
    std::int64_t m = 0;
    for_each_constraint(a, [&](const Constraint& c) {
        if (!c.bound.is_parameter()) m = std::max(m, c.bound.constant());
    });
    return m;
}

std::string to_string(const Constraint& c, const Pta& a) {
    std::ostringstream oss;
    oss << a.clocks.at(c.clock) << to_string(c.rel);
    if (c.bound.is_parameter()) {
        oss << a.params.at(c.bound.parameter());
    } else {
        oss << c.bound.constant();
    }
    return oss.str();
}

std::string to_string(const Guard& g, const Pta& a) {
    if (g.is_true()) return "true";
    std::string out;
    for (std::size_t i = 0; i < g.constraints.size(); ++i) {
        if (i) out += " && ";
        out += to_string(g.constraints[i], a);
    }
    return out;
}

}  // namespace pta
