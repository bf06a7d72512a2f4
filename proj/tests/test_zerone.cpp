#include "doctest.h"

#include "support.hpp"

#include "pta/error.hpp"
#include "pta/semantics.hpp"
#include "pta/zerone.hpp"

#include <random>

using namespace pta;
using namespace pta::testing;

namespace {

const char* const kOne = R"(
clocks x y;
params p;
automaton One {
  location l0 init;
  location l1;
  location acc accepting;
  trans l0 -> l1 when (x>p) reset {x};
  trans l1 -> acc when (y<3 && x>=1);
}
)";

std::vector<Pta> random_suite(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<Pta> out;
    for (int i = 0; i < count; ++i) out.push_back(random_pta(rng));
    return out;
}

}  // namespace

TEST_CASE("add_fractional_clock shape") {
    Pta a = parse_pta(kOne);
    FractionalPta f = add_fractional_clock(a);
    const Pta& ap = f.automaton;
    CHECK(f.xp == 0);
    CHECK(ap.clocks.back() == "z");
    CHECK(f.z == ap.clocks.size() - 1);
    CHECK(f.original_transitions == a.transitions.size());
    CHECK(ap.transitions.size() == a.transitions.size() + a.locations.size());
    for (std::size_t t = 0; t < a.transitions.size(); ++t) {
        const Transition& u = ap.transitions[t];
        CHECK(std::count(u.guard.constraints.begin(), u.guard.constraints.end(),
                         Constraint{f.z, Relation::Less, Bound::constant(1)}) == 1);
        CHECK(u.resets_clock(f.z) == a.transitions[t].resets_clock(f.xp));
    }
    for (std::size_t t = a.transitions.size(); t < ap.transitions.size(); ++t) {
        const Transition& u = ap.transitions[t];
        CHECK(u.source == u.target);
        CHECK(u.source == t - a.transitions.size());
        CHECK(u.guard.constraints == std::vector<Constraint>{{f.z, Relation::Equal, Bound::constant(1)}});
        CHECK(u.resets == std::vector<ClockId>{f.z});
    }
}

TEST_CASE("add_fractional_clock preconditions and naming") {
    CHECK_THROWS_AS(add_fractional_clock(parse_pta("clocks x; automaton A { location l init; }")), ModelError);
    CHECK_THROWS_AS(add_fractional_clock(parse_pta(
                        "clocks x y; params p; automaton A { location l init; trans l -> l when (x<p && y<p); }")),
                    ModelError);
    CHECK_THROWS_AS(add_fractional_clock(parse_pta(
                        "clocks x; params p; automaton A { location l init invariant (x<=p); }")),
                    ModelError);
    FractionalPta f = add_fractional_clock(parse_pta(
        "clocks z x; params p; automaton A { location l init; trans l -> l when (x<p && z<1); }"));
    CHECK(f.automaton.clocks.back() == "z'");
}

TEST_CASE("A' has the same language emptiness as A") {
    for (const Pta& a : random_suite(5, 80)) {
        FractionalPta f = add_fractional_clock(a);
        for (const auto& gamma : all_valuations(a, 3)) {
            auto ra = empty(a, gamma);
            auto rf = empty(f.automaton, gamma);
            CHECK(ra.empty == rf.empty);
            if (!rf.empty) CHECK(accepts(a, gamma, project_run(f, *rf.witness)));
        }
    }
}

TEST_CASE("project_run drops the z loops and keeps total time") {
    Pta a = parse_pta(kOne);
    FractionalPta f = add_fractional_clock(a);
    TransitionId loop0 = f.original_transitions + 0;
    TimedRun r{{{Rational(1), loop0}, {Rational(1, 2), 0}, {Rational(1), f.original_transitions + 1}}};
    TimedRun p = project_run(f, r);
    REQUIRE(p.steps.size() == 1);
    CHECK(p.steps[0].delay == Rational(3, 2));
    CHECK(p.steps[0].transition == 0);
}

TEST_CASE("rewritten xp constraints agree with the value they abstract") {
    for (int n = 0; n <= 4; ++n) {
        for (int c = 0; c <= 4; ++c) {
            for (Relation rel : {Relation::Less, Relation::LessEq, Relation::Equal, Relation::GreaterEq,
                                 Relation::Greater}) {
                Constraint h{0, rel, Bound::constant(c)};
                // EXACT: xp = n, t = n.
                CHECK(compare(rewrite_guard(h, Iota::Exact).rel, n, c) == compare(rel, Rational(n), Rational(c)));
                if (rel == Relation::Equal) {
                    CHECK_THROWS_AS(rewrite_guard(h, Iota::Less), std::invalid_argument);
                    CHECK_THROWS_AS(rewrite_guard(h, Iota::More), std::invalid_argument);
                    continue;
                }
                // LESS: xp in (n, n+1), t = n + 1. MORE: xp in (n, n+1), t = n.
                Rational v = Rational(n) + Rational(1, 3);
                CHECK(compare(rewrite_guard(h, Iota::Less).rel, n + 1, c) == compare(rel, v, Rational(c)));
                CHECK(compare(rewrite_guard(h, Iota::More).rel, n, c) == compare(rel, v, Rational(c)));
            }
        }
    }
    Constraint p{3, Relation::Less, Bound::parameter(1)};
    Constraint r = rewrite_guard(p, Iota::Less, 0);
    CHECK(r.clock == 0);
    CHECK(r.bound == Bound::parameter(1));
}

TEST_CASE("structure of the 0/1 automaton") {
    std::size_t states = 0, zero = 0, unit = 0;
    for (const Pta& a : random_suite(17, 120)) {
        FractionalPta f = add_fractional_clock(a);
        ZeroOneTA zo = build_01(f);
        states += zo.states.size();
        const int m = zo.bound;
        for (std::size_t s = 0; s < zo.states.size(); ++s) {
            const ZoState& st = zo.states[s];
            CHECK(is_corner(st.region, st.corner));
            if (zo.pruned[s]) {
                CHECK_FALSE(zo.zero_delay[s]);
                CHECK_FALSE(zo.unit_delay[s]);
                CHECK(zo.outgoing[s].empty());
                CHECK_FALSE(zo.accepting(s));
                continue;
            }
            // The two delay kinds exclude each other.
            CHECK_FALSE((zo.zero_delay[s] && zo.unit_delay[s]));
            if (auto z = zo.zero_delay[s]) {
                ++zero;
                CHECK(zo.states[*z].location == st.location);
                CHECK(zo.states[*z].region == succ(st.region));
                CHECK(zo.states[*z].corner == st.corner);
            }
            if (auto u = zo.unit_delay[s]) {
                ++unit;
                const ZoState& to = zo.states[*u];
                CHECK(to.region == st.region);
                CHECK(to.corner == succ(st.corner, m));
                // After a unit delay only a 0-delay continues time.
                if (zo.expanded[*u] && !zo.pruned[*u]) CHECK_FALSE(zo.unit_delay[*u]);
            }
            for (std::size_t ai : zo.outgoing[s]) {
                const ZoAction& act = zo.actions[ai];
                const Transition& t = f.automaton.transitions[act.origin];
                CHECK(act.source == s);
                CHECK(t.source == st.location);
                CHECK(act.reset == t.resets_clock(f.xp));
                std::vector<std::size_t> pos;
                for (std::size_t i = 0; i < zo.hat_clocks.size(); ++i) {
                    if (t.resets_clock(zo.hat_clocks[i])) pos.push_back(i);
                }
                const ZoState& to = zo.states[act.target];
                CHECK(to.location == t.target);
                CHECK(to.region == reset(st.region, pos));
                CHECK(to.corner == reset(st.corner, pos));
                for (const auto& c : act.guard.constraints) {
                    CHECK(c.clock == 0);
                    if (zo.iota_of(s) != Iota::Exact) CHECK(c.rel != Relation::Equal);
                }
            }
        }
    }
    CHECK(states > 1000);
    CHECK(zero > 0);
    CHECK(unit > 0);
}

TEST_CASE("0/1 emptiness matches the concrete semantics") {
    int nonempty = 0, total = 0;
    for (const Pta& a : random_suite(23, 60)) {
        FractionalPta f = add_fractional_clock(a);
        ZeroOneTA zo = build_01(f);
        for (const auto& gamma : all_valuations(a, 4)) {
            ZoResult z = zo_empty(zo, gamma);
            CHECK(z.empty == empty(a, gamma).empty);
            ++total;
            if (z.empty) continue;
            ++nonempty;
            REQUIRE(z.run);
            auto values = resolve_params(a, gamma);
            Concretization c = concretize_run(zo, f, values, *z.run);
            CHECK(c.valuations.size() == z.run->steps.size() + 1);
            CHECK(accepts(f.automaton, gamma, c.run));
            CHECK(accepts(a, gamma, project_run(f, c.run)));
        }
    }
    CHECK(nonempty > 20);
    CHECK(total - nonempty > 20);
}

TEST_CASE("on-the-fly search agrees with the full construction") {
    for (const Pta& a : random_suite(29, 60)) {
        FractionalPta f = add_fractional_clock(a);
        ZeroOneTA full = build_01(f);
        for (const auto& gamma : all_valuations(a, 3)) {
            auto values = resolve_params(a, gamma);
            ZoResult want = zo_empty(full, values);
            OnTheFlyResult got = zo_search(f, values);
            CHECK(got.result.empty == want.empty);
            CHECK(got.result.saturation == want.saturation);
            CHECK(got.graph.states.size() <= full.states.size());
            if (!got.result.empty) {
                CHECK_NOTHROW(concretize_run(got.graph, f, values, *got.result.run));
            }
        }
    }
}

TEST_CASE("correspondence predicate") {
    Pta a = parse_pta(kOne);
    FractionalPta f = add_fractional_clock(a);
    ZeroOneTA zo = build_01(f);
    const ZoState& s0 = zo.states[zo.initial];
    ClockValuation nu(f.automaton.clocks.size(), Rational(0));
    CHECK(corresponds(zo, f.xp, nu, s0.region, s0.corner, 0));
    CHECK_FALSE(corresponds(zo, f.xp, nu, s0.region, s0.corner, 1));
    ClockValuation late = nu;
    late[f.xp] = 7;
    CHECK_FALSE(corresponds(zo, f.xp, late, s0.region, s0.corner, 2));
    CHECK(corresponds(zo, f.xp, late, s0.region, s0.corner, 2, 2));
}

TEST_CASE("concretize_run rejects a broken run") {
    Pta a = parse_pta(kOne);
    FractionalPta f = add_fractional_clock(a);
    std::vector<std::int64_t> g{1};
    OnTheFlyResult r = zo_search(f, g);
    REQUIRE_FALSE(r.result.empty);
    ZoRun bad = *r.result.run;
    REQUIRE_FALSE(bad.steps.empty());
    bad.steps.back().to.t += 1;
    try {
        concretize_run(r.graph, f, g, bad);
        FAIL("accepted a broken run");
    } catch (const StepError& e) {
        CHECK(e.step() == bad.steps.size() - 1);
    }
}

TEST_CASE("stuck triples are not expanded") {
    // Once y > 2 nothing leaves l1, so l1 triples past that point are pruned.
    Pta a = parse_pta(R"(
clocks x y;
params p;
automaton S {
  location l0 init;
  location l1;
  location acc accepting;
  trans l0 -> l1 when (x<=p);
  trans l1 -> acc when (y<=2 && x==p);
}
)");
    ZeroOneTA zo = build_01(add_fractional_clock(a));
    std::size_t pruned = std::count(zo.pruned.begin(), zo.pruned.end(), true);
    CHECK(pruned > 0);
    for (const auto& gamma : all_valuations(a, 4)) CHECK(zo_empty(zo, gamma).empty == empty(a, gamma).empty);
}

TEST_CASE("dot export of the 0/1 automaton") {
    ZeroOneTA zo = build_01(add_fractional_clock(parse_pta(kOne)));
    std::string dot = to_dot(zo);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("label=\"0\"") != std::string::npos);
}
