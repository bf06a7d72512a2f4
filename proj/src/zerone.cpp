// ============================================================================
// zerone.cpp: A', the corner-point 0/1 automaton Â, and its discrete search
// ============================================================================

#include "pta/zerone.hpp"

#include "pta/error.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pta {

// ============================================================================
// A -> A'
// ============================================================================

FractionalPta add_fractional_clock(const Pta& a, std::optional<ClockId> xp) {
    auto pclocks = parametric_clocks(a);
    if (xp) {
        if (*xp >= a.clocks.size()) throw ModelError("designated parametric clock is not a clock");
        if (pclocks.size() > 1 || (pclocks.size() == 1 && *pclocks.begin() != *xp)) {
            throw ModelError("clock '" + a.clocks[*pclocks.begin()] + "' is parametric but '" + a.clocks[*xp] +
                             "' was designated");
        }
    } else if (pclocks.size() != 1) {
        throw ModelError("expected exactly one parametric clock, found " + std::to_string(pclocks.size()));
    }
    for (const auto& l : a.locations) {
        if (!l.invariant.is_true()) {
            throw ModelError("location '" + l.name + "' has an invariant; normalize the automaton first");
        }
    }

    FractionalPta f;
    f.automaton = a;
    f.xp = xp ? *xp : *pclocks.begin();
    std::string name = "z";
    while (a.find_clock(name)) name += "'";
    f.z = f.automaton.clocks.size();
    f.automaton.clocks.push_back(name);
    f.original_transitions = a.transitions.size();

    for (auto& t : f.automaton.transitions) {
        t.guard.add(Constraint{f.z, Relation::Less, Bound::constant(1)});
        if (t.resets_clock(f.xp)) {
            t.resets.push_back(f.z);
            std::sort(t.resets.begin(), t.resets.end());
        }
    }
    for (LocationId l = 0; l < a.locations.size(); ++l) {
        Transition loop;
        loop.source = l;
        loop.target = l;
        loop.guard.add(Constraint{f.z, Relation::Equal, Bound::constant(1)});
        loop.resets = {f.z};
        f.automaton.transitions.push_back(std::move(loop));
    }
    return f;
}

TimedRun project_run(const FractionalPta& f, const TimedRun& run) {
    TimedRun out;
    Rational pending = 0;
    for (const auto& step : run.steps) {
        pending += step.delay;
        if (step.transition >= f.original_transitions) continue;
        out.steps.push_back(RunStep{pending, step.transition});
        pending = 0;
    }
    return out;
}

// ============================================================================
// Guard rewriting
// ============================================================================

Constraint rewrite_guard(const Constraint& h, Iota mode, ClockId hat_clock) {
    Constraint out{hat_clock, h.rel, h.bound};
    if (mode == Iota::Exact) return out;
    if (h.rel == Relation::Equal) {
        throw std::invalid_argument("rewrite_guard: equality under " + std::string(to_string(mode)));
    }
    if (mode == Iota::Less) {
        if (h.rel == Relation::Less) out.rel = Relation::LessEq;
        if (h.rel == Relation::GreaterEq) out.rel = Relation::Greater;
    } else {
        if (h.rel == Relation::LessEq) out.rel = Relation::Less;
        if (h.rel == Relation::Greater) out.rel = Relation::GreaterEq;
    }
    return out;
}

// ============================================================================
// build_01
// ============================================================================

namespace {

struct TripleKey {
    LocationId location;
    Region region;
    CornerPoint corner;
    friend bool operator==(const TripleKey&, const TripleKey&) = default;
};

struct TripleHash {
    std::size_t operator()(const TripleKey& k) const {
        std::size_t h = k.region.hash() ^ (k.location * 0x9e3779b97f4a7c15ULL);
        for (int v : k.corner) h = h * 31 + static_cast<std::size_t>(v + 1);
        return h;
    }
};

// Transition of A' split into its Ĉ part and its xp part.
struct SplitTransition {
    TransitionId id;
    std::vector<std::pair<std::size_t, Constraint>> hat;  // (position in Ĉ, constraint)
    std::vector<Constraint> on_xp;
    bool has_equality;
    bool resets_xp;
    std::vector<std::size_t> reset_positions;
    LocationId target;
};

}  // namespace

struct ZeroOneBuilder::Impl {
    const FractionalPta& f;
    ZeroOneTA zo;
    std::vector<std::vector<SplitTransition>> out;
    std::vector<std::vector<bool>> loop_resets;
    std::unordered_map<TripleKey, std::size_t, TripleHash> index;

    explicit Impl(const FractionalPta& fp);
    std::size_t intern(LocationId l, Region r, CornerPoint alpha);
    bool stuck(LocationId l, const Region& r) const;
    void expand(std::size_t s);
};

ZeroOneBuilder::Impl::Impl(const FractionalPta& fp) : f(fp) {
    const Pta& a = f.automaton;
    zo.name = a.name;
    zo.params = a.params;
    for (const auto& l : a.locations) {
        zo.location_names.push_back(l.name);
        zo.accepting_locations.push_back(l.accepting);
    }
    std::vector<std::size_t> position(a.clocks.size(), static_cast<std::size_t>(-1));
    for (ClockId c = 0; c < a.clocks.size(); ++c) {
        if (c == f.xp) continue;
        position[c] = zo.hat_clocks.size();
        zo.hat_clocks.push_back(c);
        zo.hat_clock_names.push_back(a.clocks[c]);
    }
    zo.z_position = position[f.z];
    zo.clock_name = a.clocks[f.xp];

    std::int64_t m = 0;
    out.resize(a.locations.size());
    for (TransitionId t = 0; t < a.transitions.size(); ++t) {
        const Transition& tr = a.transitions[t];
        SplitTransition s{t, {}, {}, false, tr.resets_clock(f.xp), {}, tr.target};
        for (const auto& c : tr.guard.constraints) {
            if (c.clock == f.xp) {
                s.on_xp.push_back(c);
                s.has_equality |= c.rel == Relation::Equal;
                if (!c.bound.is_parameter()) zo.xp_constant = std::max(zo.xp_constant, c.bound.constant());
            } else {
                if (c.bound.is_parameter()) throw ModelError("parameter compared with a clock other than xp");
                m = std::max(m, c.bound.constant());
                s.hat.emplace_back(position[c.clock], c);
            }
        }
        for (ClockId x : tr.resets) {
            if (x != f.xp) s.reset_positions.push_back(position[x]);
        }
        out[tr.source].push_back(std::move(s));
    }
    zo.bound = static_cast<int>(m);

    // Clocks some self-loop of A resets may fall back while the location stays put.
    loop_resets.assign(a.locations.size(), std::vector<bool>(a.clocks.size(), false));
    for (TransitionId t = 0; t < f.original_transitions; ++t) {
        const Transition& tr = a.transitions[t];
        if (tr.source != tr.target) continue;
        for (ClockId x : tr.resets) loop_resets[tr.source][x] = true;
    }

    const std::size_t n = zo.hat_clocks.size();
    zo.initial = intern(a.initial, Region::initial(n, zo.bound), CornerPoint(n, 0));
}

std::size_t ZeroOneBuilder::Impl::intern(LocationId l, Region r, CornerPoint alpha) {
    TripleKey key{l, std::move(r), std::move(alpha)};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    std::size_t id = zo.states.size();
    zo.states.push_back(ZoState{key.location, key.region, key.corner});
    index.emplace(std::move(key), id);
    zo.zero_delay.emplace_back();
    zo.unit_delay.emplace_back();
    zo.outgoing.emplace_back();
    zo.pruned.push_back(false);
    zo.expanded.push_back(false);
    return id;
}

// True when no transition leaving l can fire from r or any later region at l.
bool ZeroOneBuilder::Impl::stuck(LocationId l, const Region& r) const {
    if (zo.accepting_locations[l]) return false;
    const std::size_t zpos = zo.z_position;
    const bool z_gone = satisfies(r, zpos, Relation::Greater, 1);
    for (const auto& tr : out[l]) {
        if (tr.target == l) continue;
        bool blocked = false;
        for (const auto& [pos, c] : tr.hat) {
            if (pos == zpos) {
                blocked = z_gone;
            } else if (!loop_resets[l][zo.hat_clocks[pos]]) {
                const std::int64_t k = c.bound.constant();
                switch (c.rel) {
                    case Relation::Less: blocked = satisfies(r, pos, Relation::GreaterEq, k); break;
                    case Relation::LessEq:
                    case Relation::Equal: blocked = satisfies(r, pos, Relation::Greater, k); break;
                    default: break;
                }
            }
            if (blocked) break;
        }
        if (!blocked) return false;
    }
    return true;
}

void ZeroOneBuilder::Impl::expand(std::size_t s) {
    if (zo.expanded[s]) return;
    zo.expanded[s] = true;
    // Copies: interning may reallocate zo.states.
    const LocationId l = zo.states[s].location;
    const Region r = zo.states[s].region;
    const CornerPoint alpha = zo.states[s].corner;
    if (stuck(l, r)) {
        zo.pruned[s] = true;
        return;
    }

    Region next = succ(r);
    if (is_corner(next, alpha)) {
        std::size_t to = intern(l, std::move(next), alpha);
        zo.zero_delay[s] = to;
    }
    if (!r.all_above()) {
        CornerPoint lifted = succ(alpha, zo.bound);
        if (is_corner(r, lifted)) {
            std::size_t to = intern(l, r, std::move(lifted));
            zo.unit_delay[s] = to;
        }
    }

    const Iota mode = iota(r, alpha, zo.z_position);
    for (const auto& tr : out[l]) {
        bool enabled = std::all_of(tr.hat.begin(), tr.hat.end(), [&](const auto& pc) {
            return satisfies(r, pc.first, pc.second.rel, pc.second.bound.constant());
        });
        if (!enabled) continue;
        if (mode != Iota::Exact && tr.has_equality) continue;
        ZoAction act;
        act.source = s;
        for (const auto& h : tr.on_xp) act.guard.add(rewrite_guard(h, mode, 0));
        act.reset = tr.resets_xp;
        act.origin = tr.id;
        act.target = intern(tr.target, reset(r, tr.reset_positions), reset(alpha, tr.reset_positions));
        zo.outgoing[s].push_back(zo.actions.size());
        zo.actions.push_back(std::move(act));
    }
}

ZeroOneBuilder::ZeroOneBuilder(const FractionalPta& f) : impl_(std::make_unique<Impl>(f)) {}
ZeroOneBuilder::~ZeroOneBuilder() = default;

const ZeroOneTA& ZeroOneBuilder::graph() const { return impl_->zo; }
void ZeroOneBuilder::expand(std::size_t s) { impl_->expand(s); }
ZeroOneTA ZeroOneBuilder::take() { return std::move(impl_->zo); }

ZeroOneTA build_01(const FractionalPta& f, std::size_t max_states) {
    ZeroOneBuilder b(f);
    for (std::size_t s = 0; s < b.graph().states.size(); ++s) {
        if (b.graph().states.size() > max_states) throw Error("0/1 automaton exceeds " + std::to_string(max_states) + " states");
        b.expand(s);
    }
    return b.take();
}

// ============================================================================
// Discrete semantics
// ============================================================================

std::string_view to_string(ZoEdge e) {
    switch (e) {
        case ZoEdge::Zero: return "0";
        case ZoEdge::Unit: return "1";
        case ZoEdge::Action: return "action";
    }
    return "?";
}

std::int64_t hat_bound(const ZeroOneTA& zo, std::span<const std::int64_t> gamma) {
    std::int64_t mp = 0;
    for (auto v : gamma) mp = std::max(mp, v);
    return std::max(mp, zo.xp_constant);
}

namespace {

bool guard_holds(const Guard& g, std::int64_t t, std::span<const std::int64_t> gamma) {
    return std::all_of(g.constraints.begin(), g.constraints.end(),
                       [&](const Constraint& c) { return compare(c.rel, t, c.bound.value(gamma)); });
}

std::vector<std::int64_t> resolve_zo_params(const ZeroOneTA& zo, const ParamValuation& gamma) {
    std::vector<std::int64_t> out;
    for (const auto& p : zo.params) {
        auto it = gamma.find(p);
        if (it == gamma.end()) throw ModelError("no value for parameter '" + p + "'");
        if (it->second < 0) throw ModelError("negative value for parameter '" + p + "'");
        out.push_back(it->second);
    }
    return out;
}

}  // namespace

namespace {

// BFS over (state, t). `ensure` is called on every state before its edges are read.
template <typename Ensure>
ZoResult search(const ZeroOneTA& zo, std::span<const std::int64_t> gamma, Ensure&& ensure) {
    ZoResult result;
    const std::int64_t sat = hat_bound(zo, gamma) + 1;
    result.saturation = sat;
    const std::size_t width = static_cast<std::size_t>(sat) + 1;

    struct Parent {
        std::size_t node;
        ZoEdge kind;
        std::size_t action;
    };
    auto node_of = [&](ZoConfiguration c) { return c.state * width + static_cast<std::size_t>(c.t); };
    std::unordered_map<std::size_t, Parent> parent;
    std::vector<ZoConfiguration> queue;

    auto build_run = [&](std::size_t goal) {
        ZoRun run;
        std::vector<ZoStep> rev;
        std::size_t cur = goal;
        while (true) {
            const Parent& p = parent.at(cur);
            if (p.node == cur) break;
            ZoConfiguration to{cur / width, static_cast<std::int64_t>(cur % width)};
            rev.push_back(ZoStep{p.kind, p.action, to});
            cur = p.node;
        }
        run.start = ZoConfiguration{cur / width, static_cast<std::int64_t>(cur % width)};
        run.steps.assign(rev.rbegin(), rev.rend());
        return run;
    };

    ZoConfiguration init{zo.initial, 0};
    parent.emplace(node_of(init), Parent{node_of(init), ZoEdge::Zero, 0});
    queue.push_back(init);
    if (zo.accepting(zo.initial)) {
        result.empty = false;
        result.run = ZoRun{init, {}};
        result.states_explored = 1;
        return result;
    }

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const ZoConfiguration c = queue[head];
        const std::size_t from = node_of(c);
        ensure(c.state);
        std::optional<std::size_t> goal;
        auto visit = [&](ZoConfiguration to, ZoEdge kind, std::size_t action) {
            std::size_t id = node_of(to);
            if (!parent.emplace(id, Parent{from, kind, action}).second) return;
            queue.push_back(to);
            if (!goal && zo.accepting(to.state)) goal = id;
        };
        if (auto z = zo.zero_delay[c.state]) visit(ZoConfiguration{*z, c.t}, ZoEdge::Zero, 0);
        if (auto u = zo.unit_delay[c.state]) visit(ZoConfiguration{*u, std::min(c.t + 1, sat)}, ZoEdge::Unit, 0);
        for (std::size_t ai : zo.outgoing[c.state]) {
            const ZoAction& act = zo.actions[ai];
            if (!guard_holds(act.guard, c.t, gamma)) continue;
            visit(ZoConfiguration{act.target, act.reset ? 0 : c.t}, ZoEdge::Action, ai);
        }
        if (goal) {
            result.empty = false;
            result.run = build_run(*goal);
            break;
        }
    }
    result.states_explored = queue.size();
    return result;
}

}  // namespace

ZoResult zo_empty(const ZeroOneTA& zo, std::span<const std::int64_t> gamma) {
    return search(zo, gamma, [&](std::size_t s) {
        if (!zo.expanded[s]) throw Error("zo_empty: state " + std::to_string(s) + " was never expanded");
    });
}

ZoResult zo_empty(const ZeroOneTA& zo, const ParamValuation& gamma) {
    auto values = resolve_zo_params(zo, gamma);
    return zo_empty(zo, values);
}

OnTheFlyResult zo_search(const FractionalPta& f, std::span<const std::int64_t> gamma) {
    ZeroOneBuilder b(f);
    ZoResult r = search(b.graph(), gamma, [&](std::size_t s) { b.expand(s); });
    return OnTheFlyResult{b.take(), std::move(r)};
}

// ============================================================================
// Correspondence and concretization
// ============================================================================

namespace {

ClockValuation restrict_hat(const ZeroOneTA& zo, const ClockValuation& nu) {
    ClockValuation out;
    out.reserve(zo.hat_clocks.size());
    for (ClockId c : zo.hat_clocks) out.push_back(nu[c]);
    return out;
}

}  // namespace

bool corresponds(const ZeroOneTA& zo, ClockId xp, const ClockValuation& nu, const Region& r,
                 const CornerPoint& alpha, std::int64_t t, std::optional<std::int64_t> saturation) {
    ClockValuation hat = restrict_hat(zo, nu);
    if (!(region_of(hat, r.bound()) == r)) return false;
    if (!is_corner(r, alpha)) return false;
    const Iota mode = iota(r, alpha, zo.z_position);
    BigInt fl = floor_of(nu[xp]) + offset(mode);
    if (saturation && fl > *saturation) fl = *saturation;
    if (fl != t) return false;
    return is_integral(nu[xp]) == (mode == Iota::Exact);
}

Concretization concretize_run(const ZeroOneTA& zo, const FractionalPta& f, std::span<const std::int64_t> gamma,
                              const ZoRun& run) {
    const Pta& a = f.automaton;
    const std::int64_t sat = hat_bound(zo, gamma) + 1;
    Concretization out;
    Configuration conf{a.initial, ClockValuation(a.clocks.size(), Rational(0))};
    if (run.start != ZoConfiguration{zo.initial, 0}) throw StepError("run does not start in the initial state", 0);
    out.valuations.push_back(conf.nu);

    ZoConfiguration cur = run.start;
    Rational pending = 0;
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const ZoStep& step = run.steps[i];
        auto fail = [&](const std::string& why) { throw StepError("step " + std::to_string(i) + ": " + why, i); };
        switch (step.kind) {
            case ZoEdge::Zero: {
                if (zo.zero_delay[cur.state] != step.to.state || step.to.t != cur.t) fail("not a 0-delay edge");
                Rational d = successor_delay(restrict_hat(zo, conf.nu), zo.bound);
                try {
                    conf = delay(a, conf, d, gamma);
                } catch (const StepError& e) {
                    fail(e.what());
                }
                pending += d;
                break;
            }
            case ZoEdge::Unit:
                if (zo.unit_delay[cur.state] != step.to.state || step.to.t != std::min(cur.t + 1, sat)) {
                    fail("not a 1-delay edge");
                }
                break;
            case ZoEdge::Action: {
                if (step.action >= zo.actions.size()) fail("unknown action");
                const ZoAction& act = zo.actions[step.action];
                if (act.source != cur.state || act.target != step.to.state) fail("action does not connect the states");
                if (!guard_holds(act.guard, cur.t, gamma)) fail("rewritten guard fails at t=" + std::to_string(cur.t));
                if (step.to.t != (act.reset ? 0 : cur.t)) fail("wrong clock value after action");
                try {
                    conf = fire(a, conf, act.origin, gamma);
                } catch (const StepError& e) {
                    fail(e.what());
                }
                out.run.steps.push_back(RunStep{pending, act.origin});
                pending = 0;
                break;
            }
        }
        const ZoState& s = zo.states[step.to.state];
        if (conf.location != s.location ||
            !corresponds(zo, f.xp, conf.nu, s.region, s.corner, step.to.t, sat)) {
            fail("valuation does not correspond with the reached state");
        }
        out.valuations.push_back(conf.nu);
        cur = step.to;
    }
    return out;
}

// ============================================================================
// DOT export
// ============================================================================

namespace {

std::string guard_text(const ZeroOneTA& zo, const Guard& g) {
    if (g.is_true()) return "true";
    std::string out;
    for (std::size_t i = 0; i < g.constraints.size(); ++i) {
        const auto& c = g.constraints[i];
        out += (i ? " && " : "") + zo.clock_name + std::string(to_string(c.rel)) +
               (c.bound.is_parameter() ? zo.params[c.bound.parameter()] : std::to_string(c.bound.constant()));
    }
    return out;
}

}  // namespace

std::string to_dot(const ZeroOneTA& zo) {
    std::ostringstream os;
    os << "digraph zero_one {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t s = 0; s < zo.states.size(); ++s) {
        const auto& st = zo.states[s];
        os << "  s" << s << " [label=\"" << zo.location_names[st.location] << "\\n"
           << to_string(st.region, zo.hat_clock_names) << "\\n" << to_string(st.corner) << " "
           << to_string(zo.iota_of(s)) << "\"";
        if (zo.accepting(s)) os << ", peripheries=2";
        if (s == zo.initial) os << ", style=bold";
        os << "];\n";
    }
    for (std::size_t s = 0; s < zo.states.size(); ++s) {
        if (auto z = zo.zero_delay[s]) os << "  s" << s << " -> s" << *z << " [style=dashed, label=\"0\"];\n";
        if (auto u = zo.unit_delay[s]) os << "  s" << s << " -> s" << *u << " [style=dotted, label=\"1\"];\n";
    }
    for (const auto& act : zo.actions) {
        os << "  s" << act.source << " -> s" << act.target << " [label=\"t" << act.origin << ": "
           << guard_text(zo, act.guard) << (act.reset ? " {" + zo.clock_name + ":=0}" : "") << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace pta
