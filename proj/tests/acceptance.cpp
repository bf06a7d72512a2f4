// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "gadget_script.hpp"
#include "region_oracle.hpp"
#include "support.hpp"

#include "pta/error.hpp"
#include "pta/minsky.hpp"
#include "pta/semantics.hpp"
#include "pta/solver.hpp"
#include "pta/zerone.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace pta;
using namespace pta::testing;

namespace {

struct Report {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        if (failures.size() < 5) failures.push_back(what);
    }
};

bool timeout_location(const Pta& a, LocationId l) { return a.locations[l].name.rfind("timeout.", 0) == 0; }

// ── 1 ───────────────────────────────────────────────────────────────────────

void fire_alarm(Report& rep) {
    Pta a = load_fixture("firealarm.pta");

    SynthesisResult s = solve({a, Mode::Safe, 20, Backend::Concrete, 0});
    rep.require(s.found, "synth --mode safe --bound 20 found nothing");
    if (s.found) {
        rep.require(check(a, s.gamma, Backend::ZeroOne).empty, "synthesized valuation is not empty under zerone");
        rep.detail << "synth safe B=20: p1=" << s.gamma.at("p1") << ",p2=" << s.gamma.at("p2") << "; ";
    }
    SynthesisResult sz = solve({a, Mode::Safe, 20, Backend::ZeroOne, 0});
    rep.require(sz.found && sz.gamma == s.gamma, "zerone synthesis disagrees");

    const ParamValuation safe{{"p1", 5}, {"p2", 9}}, unsafe{{"p1", 5}, {"p2", 19}};
    for (Backend b : {Backend::Concrete, Backend::ZeroOne, Backend::BothCheck}) {
        std::string name(to_string(b));
        rep.require(check(a, safe, b).empty, "(5,9) not empty under " + name);
        CheckResult r = check(a, unsafe, b);
        rep.require(!r.empty, "(5,19) empty under " + name);
        rep.require(r.witness && accepts(a, unsafe, *r.witness), "(5,19) witness does not accept under " + name);
    }
    auto values = resolve_params(a, unsafe);
    auto to_timeout = search_from(a, values, initial_configuration(a, values),
                                  [&](LocationId l) { return timeout_location(a, l); });
    rep.require(!to_timeout.empty, "timeout unreachable under (5,19)");
    if (!to_timeout.empty) {
        Configuration end = replay(a, unsafe, *to_timeout.witness);
        rep.require(timeout_location(a, end.location), "timeout witness ends elsewhere");
        rep.detail << "(5,19) reaches " << a.locations[end.location].name << " in " << to_timeout.witness->steps.size()
                   << " steps; ";
    }
    auto timeout_safe = search_from(a, resolve_params(a, safe), initial_configuration(a, resolve_params(a, safe)),
                                    [&](LocationId l) { return timeout_location(a, l); });
    rep.require(timeout_safe.empty, "timeout reachable under (5,9)");
}

// ── 2 ───────────────────────────────────────────────────────────────────────

void abstraction_equivalence(Report& rep) {
    std::mt19937_64 rng(20240601);
    std::size_t automata = 0, cases = 0, nonempty = 0;
    for (int i = 0; i < 250; ++i) {
        Pta a = random_pta(rng);
        ZeroOneTA zo = build_01(add_fractional_clock(a));
        ++automata;
        for (const auto& gamma : all_valuations(a, 4)) {
            bool want = empty(a, gamma).empty;
            bool got = zo_empty(zo, gamma).empty;
            ++cases;
            nonempty += !want;
            rep.require(want == got, "automaton " + std::to_string(i) + ": " + to_text(a));
        }
    }
    // Automata with invariants go through the normal form first.
    RandomPtaOptions inv;
    inv.invariants = true;
    std::size_t with_inv = 0;
    for (int i = 0; i < 100; ++i) {
        Pta a = random_pta(rng, inv);
        Checker zc(a, Backend::ZeroOne);
        ++with_inv;
        for (const auto& gamma : all_valuations(a, 4)) {
            bool want = empty(a, gamma).empty;
            bool got = zc.check_zero_one(gamma).empty;
            ++cases;
            nonempty += !want;
            rep.require(want == got, "automaton with invariants " + std::to_string(i) + ": " + to_text(a));
        }
    }
    rep.detail << automata << " automata + " << with_inv << " with invariants, " << cases << " valuations, "
               << nonempty << " nonempty; ";
    rep.require(automata >= 200, "fewer than 200 automata");
}

// ── 3 ───────────────────────────────────────────────────────────────────────

void golden_traces(Report& rep) {
    for (const char* name : {"inc_upper.json", "inc_lower.json", "dec_upper.json", "dec_lower.json"}) {
        GadgetScript s = load_gadget_script(name);
        std::string err = check_gadget_script(s);
        rep.require(err.empty(), std::string(name) + ": " + err);

        const Pta& a = s.automaton;
        auto values = resolve_params(a, s.gamma);
        const LocationId merge = location_named(a, "l1_4"), next = location_named(a, "l2");
        const std::string wrong = s.branch == "upper" ? "lower" : "upper";
        Pta wrong_only = without_transition(a, branch_entry(a, s.branch));
        auto stuck = search_from(wrong_only, values, s.start, [&](LocationId l) { return l == merge || l == next; });
        rep.require(stuck.empty, std::string(name) + ": the " + wrong + " branch reaches l1_4");
        Pta right_only = without_transition(a, branch_entry(a, wrong));
        auto r = search_from(right_only, values, s.start, [&](LocationId l) { return l == next; });
        rep.require(!r.empty && replay_from(right_only, s.gamma, s.start, *r.witness) == s.expected.back(),
                    std::string(name) + ": the " + s.branch + " branch misses the scripted end");
    }
    rep.detail << "4 scripts replayed, wrong branches stuck before l1_4; ";
}

// ── 4 ───────────────────────────────────────────────────────────────────────

void minsky_suite(Report& rep) {
    const char* suite[] = {"h0.mm", "h1.mm", "h2.mm", "h3.mm", "b1.mm", "b2.mm", "u1.mm", "u2.mm"};
    for (const char* name : suite) {
        MinskyMachine m = parse_minsky(read_file(fixture(std::string("minsky/") + name)));
        MinskyFacts f = minsky_facts(m);
        MinskyOutcome o = interpret(m, 1000);
        rep.require(o.halted == (f.kind == MinskyFacts::Kind::Halts), std::string(name) + ": interpreters disagree");
        const bool halts = f.kind == MinskyFacts::Kind::Halts;
        const bool bounded = f.kind != MinskyFacts::Kind::Unbounded;
        if (halts) rep.require(f.max_counter <= 3, std::string(name) + ": K > 3");

        Pta reach = encode_reach(m), safe = encode_safe(m);
        SynthesisResult r = solve({reach, Mode::Reach, 6, Backend::Concrete, 0});
        rep.require(r.found == halts, std::string(name) + ": REACH verdict disagrees with the interpreter");
        if (halts && r.found) {
            rep.require(r.gamma.at("p") == f.reach_p, std::string(name) + ": REACH found p=" +
                                                          std::to_string(r.gamma.at("p")) + ", expected " +
                                                          std::to_string(f.reach_p));
            rep.require(r.witness && accepts(reach, r.gamma, *r.witness), std::string(name) + ": REACH witness");
        }

        SynthesisResult s = solve({safe, Mode::Safe, 6, Backend::Concrete, 0});
        rep.require(s.found == bounded, std::string(name) + ": SAFE verdict disagrees with the interpreter");
        if (bounded) {
            rep.require(s.found && empty(safe, s.gamma).empty, std::string(name) + ": SAFE valuation not empty");
            // Any p above the largest counter value keeps the safety encoding empty.
            rep.require(empty(safe, {{"p", f.max_counter + 1}}).empty,
                        std::string(name) + ": p = max counter + 1 not empty");
        } else {
            for (std::int64_t p = 0; p <= 4; ++p) {
                auto e = empty(safe, {{"p", p}});
                rep.require(!e.empty && accepts(safe, {{"p", p}}, *e.witness),
                            std::string(name) + ": safety language empty at p=" + std::to_string(p));
            }
        }
        rep.detail << name << (halts ? " halts" : bounded ? " loops" : " unbounded");
        if (r.found) rep.detail << " reach p=" << r.gamma.at("p");
        if (s.found) rep.detail << " safe p=" << s.gamma.at("p");
        rep.detail << "; ";
    }
}

// ── 5 ───────────────────────────────────────────────────────────────────────

void region_algebra(Report& rep) {
    std::mt19937_64 rng(99);
    std::size_t same = 0;
    for (int i = 0; i < 1000; ++i) {
        int m = static_cast<int>(rng() % 4);
        std::size_t n = 1 + rng() % 3;
        auto draw = [&] {
            std::vector<Rational> v(n);
            for (auto& x : v) x = Rational(static_cast<long>(rng() % (4 * (m + 2))), 4);
            return v;
        };
        auto a = draw(), b = draw();
        bool eq = region_of(a, m) == region_of(b, m);
        same += eq;
        rep.require(eq == region_equivalent(a, b, m), "canonicity pair " + std::to_string(i));
    }
    rep.detail << "1000 pairs (" << same << " equivalent); ";

    for (int m = 0; m <= 3; ++m) {
        rep.require(all_regions(1, m).size() == static_cast<std::size_t>(2 * m + 2),
                    "one-clock count for M=" + std::to_string(m));
    }

    std::size_t regions = 0, samples = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int m = 0; m <= 2; ++m) {
            for (const Region& r : all_regions(n, m)) {
                ++regions;
                auto cs = corners_of(r);
                std::set<CornerPoint> corners(cs.begin(), cs.end());
                std::vector<int> beta(n, 0);
                while (true) {
                    ++samples;
                    rep.require((corners.count(beta) > 0) == in_closure(r, beta), "closure membership");
                    std::size_t i = 0;
                    while (i < n && beta[i] == m + 1) beta[i++] = 0;
                    if (i == n) break;
                    ++beta[i];
                }
                for (const auto& a : cs) {
                    CornerPoint s = succ(a, m);
                    for (std::size_t i = 0; i < n; ++i) {
                        rep.require(s[i] == std::min(a[i] + 1, m + 1), "succ_cp");
                    }
                    rep.require(succ(CornerPoint(n, m + 1), m) == CornerPoint(n, m + 1), "succ_cp fixpoint");
                    for (std::size_t z = 0; z < n; ++z) {
                        Iota io = iota(r, a, z);
                        bool less = a[z] == 1 && !satisfies(r, z, Relation::Equal, 1);
                        bool more = a[z] == 0 && !satisfies(r, z, Relation::Equal, 0);
                        int hits = (io == Iota::Less) + (io == Iota::More) + (io == Iota::Exact);
                        rep.require(hits == 1 && (io == Iota::Less) == less && (io == Iota::More) == more, "iota");
                    }
                }
            }
        }
    }
    rep.detail << regions << " regions, " << samples << " closure samples; ";
}

// ── 6 ───────────────────────────────────────────────────────────────────────

/// Correspondence of ν with (r, α, t), stated on the valuation directly.
bool corresponds_directly(const ZeroOneTA& zo, ClockId xp, const ClockValuation& nu, const ZoState& s,
                          std::int64_t t, std::int64_t saturation) {
    std::vector<Rational> hat;
    for (ClockId c : zo.hat_clocks) hat.push_back(nu[c]);
    if (!(region_of(hat, zo.bound) == s.region)) return false;
    Iota io = iota(s.region, s.corner, zo.z_position);
    BigInt whole = floor_of(nu[xp]) + offset(io);
    if (std::min<BigInt>(whole, saturation) != t) return false;
    return is_integral(nu[xp]) == (io == Iota::Exact);
}

void witness_integrity(Report& rep) {
    std::size_t concrete = 0, zerone = 0, steps = 0;
    auto verify = [&](const Pta& a, const ParamValuation& gamma, const std::string& label) {
        for (Backend b : {Backend::Concrete, Backend::ZeroOne}) {
            if (b == Backend::ZeroOne && parametric_clocks(a).size() > 1) continue;
            Checker c(a, b);
            CheckResult r = c.check(gamma);
            if (r.empty) continue;
            const std::string where = label + " [" + std::string(to_string(b)) + "]";
            rep.require(r.witness && accepts(a, gamma, *r.witness), where + ": witness does not replay to acceptance");
            if (b == Backend::Concrete) {
                ++concrete;
                continue;
            }
            ++zerone;
            if (!r.zo_run || !r.zo_graph || !r.concretization) {
                rep.require(false, where + ": no 0/1 run");
                continue;
            }
            const FractionalPta& f = c.fractional();
            const ZeroOneTA& zo = *r.zo_graph;
            auto values = resolve_params(f.automaton, gamma);
            const std::int64_t sat = hat_bound(zo, values) + 1;
            const auto& nus = r.concretization->valuations;
            rep.require(nus.size() == r.zo_run->steps.size() + 1, where + ": valuation count");
            rep.require(accepts(f.automaton, gamma, r.concretization->run), where + ": A' run does not accept");
            rep.require(project_run(f, r.concretization->run) == *r.witness, where + ": projection differs");
            for (std::size_t i = 0; i < nus.size() && i <= r.zo_run->steps.size(); ++i) {
                const ZoConfiguration& cfg = i == 0 ? r.zo_run->start : r.zo_run->steps[i - 1].to;
                const ZoState& s = zo.states[cfg.state];
                bool direct = corresponds_directly(zo, f.xp, nus[i], s, cfg.t, sat);
                bool lib = corresponds(zo, f.xp, nus[i], s.region, s.corner, cfg.t, sat);
                rep.require(direct && lib, where + ": correspondence fails at step " + std::to_string(i));
                ++steps;
            }
        }
    };

    std::mt19937_64 rng(606);
    for (int i = 0; i < 150; ++i) {
        RandomPtaOptions o;
        o.invariants = i % 2 == 1;
        Pta a = random_pta(rng, o);
        for (const auto& gamma : all_valuations(a, 3)) verify(a, gamma, "random " + std::to_string(i));
    }
    Pta fire = load_fixture("firealarm.pta");
    verify(fire, {{"p1", 5}, {"p2", 19}}, "firealarm (5,19)");
    for (const char* name : {"h1.mm", "h2.mm", "b1.mm", "u1.mm"}) {
        MinskyMachine m = parse_minsky(read_file(fixture(std::string("minsky/") + name)));
        for (std::int64_t p = 0; p <= 3; ++p) {
            verify(encode_reach(m), {{"p", p}}, std::string(name) + " reach");
            verify(encode_safe(m), {{"p", p}}, std::string(name) + " safe");
        }
    }
    rep.detail << concrete << " concrete and " << zerone << " zerone witnesses, " << steps
               << " corresponding steps; ";
    rep.require(zerone > 100 && concrete > 100, "too few witnesses");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<void(Report&)> run;
    };
    const Criterion criteria[] = {
        {1, "fire-alarm safety synthesis", fire_alarm},
        {2, "abstraction equivalence on random automata", abstraction_equivalence},
        {3, "gadget golden traces and stuck branches", golden_traces},
        {4, "Minsky reduction suite", minsky_suite},
        {5, "region and corner algebra", region_algebra},
        {6, "witness integrity and correspondence", witness_integrity},
    };
    bool all = true;
    for (const auto& c : criteria) {
        Report rep;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(rep);
        } catch (const std::exception& e) {
            rep.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all &= rep.pass;
        std::cout << (rep.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << rep.detail.str()
                  << std::fixed << std::setprecision(2) << secs << " s)\n";
        for (const auto& f : rep.failures) std::cout << "    " << f << "\n";
        std::cout.flush();
    }
    return all ? 0 : 1;
}
