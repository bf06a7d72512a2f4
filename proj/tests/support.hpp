// Helpers shared by the unit tests and the acceptance runner.

#ifndef PTA_TESTS_SUPPORT_HPP
#define PTA_TESTS_SUPPORT_HPP

#include "pta/minsky.hpp"
#include "pta/model.hpp"
#include "pta/parser.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace pta::testing {

inline std::string fixture(const std::string& relative) { return std::string(PTA_FIXTURE_DIR) + "/" + relative; }

inline Pta load_fixture(const std::string& relative) { return parse_pta(read_file(fixture(relative))); }

// ── Random automata with one parametric clock ──────────────────────────────

struct RandomPtaOptions {
    int max_locations = 3;
    int max_clocks = 2;       // nonparametric clocks
    int max_constant = 3;
    int max_params = 2;
    int max_transitions = 6;
    bool invariants = false;
};

/// Clock 0 is the parametric clock xp; clocks 1.. are compared with
/// constants only. At least one xp constraint mentions a parameter.
inline Pta random_pta(std::mt19937_64& rng, const RandomPtaOptions& o = {}) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
    static const Relation kRels[] = {Relation::Less, Relation::LessEq, Relation::Equal, Relation::GreaterEq,
                                     Relation::Greater};

    Pta a;
    a.name = "R";
    const int nclocks = pick(0, o.max_clocks);
    a.clocks.push_back("xp");
    for (int i = 1; i <= nclocks; ++i) a.clocks.push_back("y" + std::to_string(i));
    const int nparams = pick(1, o.max_params);
    for (int i = 1; i <= nparams; ++i) a.params.push_back("p" + std::to_string(i));
    const int nloc = pick(1, o.max_locations);
    for (int i = 0; i < nloc; ++i) a.locations.push_back(Location{"q" + std::to_string(i), {}, false});
    a.locations[pick(0, nloc - 1)].accepting = true;

    auto constraint = [&](bool parametric_ok) {
        ClockId c = static_cast<ClockId>(pick(0, nclocks));
        Relation rel = kRels[pick(0, 4)];
        if (c == 0 && parametric_ok && coin(0.5)) {
            return Constraint{c, rel, Bound::parameter(static_cast<ParamId>(pick(0, nparams - 1)))};
        }
        return Constraint{c, rel, Bound::constant(pick(0, o.max_constant))};
    };

    const int ntrans = pick(1, o.max_transitions);
    for (int i = 0; i < ntrans; ++i) {
        Transition t;
        t.source = static_cast<LocationId>(pick(0, nloc - 1));
        t.target = static_cast<LocationId>(pick(0, nloc - 1));
        t.action = std::string(1, static_cast<char>('a' + pick(0, 2)));
        for (int k = pick(0, 2); k > 0; --k) t.guard.add(constraint(true));
        for (ClockId c = 0; c <= static_cast<ClockId>(nclocks); ++c) {
            if (coin(0.35)) t.resets.push_back(c);
        }
        a.transitions.push_back(std::move(t));
    }
    if (o.invariants) {
        for (auto& l : a.locations) {
            if (coin(0.4)) {
                Constraint c = constraint(true);
                c.rel = coin(0.5) ? Relation::Less : Relation::LessEq;
                l.invariant.add(c);
            }
        }
    }
    bool parametric = !parametric_clocks(a).empty();
    if (!parametric) {
        Transition& t = a.transitions[pick(0, ntrans - 1)];
        t.guard.add(Constraint{0, kRels[pick(0, 4)], Bound::parameter(static_cast<ParamId>(pick(0, nparams - 1)))});
    }
    return a;
}

/// Every γ with values in 0..max_value, parameters in declaration order.
inline std::vector<ParamValuation> all_valuations(const Pta& a, std::int64_t max_value) {
    std::vector<ParamValuation> out;
    std::vector<std::int64_t> v(a.params.size(), 0);
    while (true) {
        ParamValuation g;
        for (std::size_t i = 0; i < v.size(); ++i) g[a.params[i]] = v[i];
        out.push_back(std::move(g));
        std::size_t i = 0;
        while (i < v.size() && v[i] == max_value) v[i++] = 0;
        if (i == v.size()) break;
        ++v[i];
    }
    return out;
}

// ── Minsky oracle ───────────────────────────────────────────────────────────
// A direct interpreter kept separate from the library's.

struct MinskyFacts {
    enum class Kind { Halts, Loops, Unbounded } kind;
    std::int64_t max_counter = 0;
    /// Smallest p admitted by every gadget along the halting computation:
    /// increments from (v1, v2) need p > max(v1, v2), test-and-decrement
    /// branches need p >= the larger counter.
    std::int64_t reach_p = 0;
};

inline MinskyFacts minsky_facts(const MinskyMachine& m, std::int64_t give_up_at = 64) {
    std::size_t pc = 1;
    std::int64_t c[3] = {0, 0, 0};
    MinskyFacts f{MinskyFacts::Kind::Loops};
    std::set<std::tuple<std::size_t, std::int64_t, std::int64_t>> seen;
    while (true) {
        const Instruction& ins = m.at(pc);
        if (ins.kind == Instruction::Kind::Halt) {
            f.kind = MinskyFacts::Kind::Halts;
            return f;
        }
        if (!seen.emplace(pc, c[1], c[2]).second) return f;
        std::int64_t hi = std::max(c[1], c[2]);
        if (ins.kind == Instruction::Kind::Inc) {
            f.reach_p = std::max(f.reach_p, hi + 1);
            ++c[ins.counter];
            pc = ins.next;
        } else if (c[ins.counter] == 0) {
            pc = ins.zero;
        } else {
            f.reach_p = std::max(f.reach_p, hi);
            --c[ins.counter];
            pc = ins.next;
        }
        f.max_counter = std::max({f.max_counter, c[1], c[2]});
        if (f.max_counter > give_up_at) {
            f.kind = MinskyFacts::Kind::Unbounded;
            return f;
        }
    }
}

/// Language emptiness of the encodings at a fixed p, read off the machine
/// run: an increment from (v1, v2) needs p > max(v1, v2), a decrement needs
/// p >= max(v1, v2), otherwise the simulation deadlocks. The safety
/// encoding accepts as soon as the run sits at the target of an increment
/// of counter r with v_r = p.
struct EncodingVerdict {
    bool reach_nonempty = false;
    bool safe_nonempty = false;
};

inline EncodingVerdict encoding_verdict(const MinskyMachine& m, std::int64_t p, std::size_t max_steps = 10'000) {
    std::set<std::pair<std::size_t, int>> lacc;  // (label, counter)
    for (const auto& ins : m.instructions) {
        if (ins.kind == Instruction::Kind::Inc) lacc.emplace(ins.next, ins.counter);
    }
    EncodingVerdict v;
    std::size_t pc = 1;
    std::int64_t c[3] = {0, 0, 0};
    for (std::size_t step = 0; step < max_steps; ++step) {
        for (int r : {1, 2}) {
            if (lacc.count({pc, r}) && c[r] == p) v.safe_nonempty = true;
        }
        const Instruction& ins = m.at(pc);
        const std::int64_t hi = std::max(c[1], c[2]);
        if (ins.kind == Instruction::Kind::Halt) {
            v.reach_nonempty = true;
            return v;
        }
        if (ins.kind == Instruction::Kind::Inc) {
            if (p <= hi) return v;
            ++c[ins.counter];
            pc = ins.next;
        } else if (c[ins.counter] == 0) {
            pc = ins.zero;
        } else {
            if (p < hi) return v;
            --c[ins.counter];
            pc = ins.next;
        }
    }
    return v;
}

}  // namespace pta::testing

#endif  // PTA_TESTS_SUPPORT_HPP
