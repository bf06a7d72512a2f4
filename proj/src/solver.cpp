// ============================================================================
// solver.cpp: per-valuation checks and bounded synthesis
// ============================================================================

#include "pta/solver.hpp"

#include "pta/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <thread>

namespace pta {

std::string_view to_string(Mode m) { return m == Mode::Reach ? "reach" : "safe"; }

std::string_view to_string(Backend b) {
    switch (b) {
        case Backend::Concrete: return "concrete";
        case Backend::ZeroOne: return "zerone";
        case Backend::BothCheck: return "both";
    }
    return "?";
}

Mode parse_mode(std::string_view s) {
    if (s == "reach") return Mode::Reach;
    if (s == "safe") return Mode::Safe;
    throw Error("unknown mode '" + std::string(s) + "' (expected reach or safe)");
}

Backend parse_backend(std::string_view s) {
    if (s == "concrete") return Backend::Concrete;
    if (s == "zerone") return Backend::ZeroOne;
    if (s == "both") return Backend::BothCheck;
    throw Error("unknown backend '" + std::string(s) + "' (expected concrete, zerone or both)");
}

// ============================================================================
// Checker
// ============================================================================

Checker::Checker(Pta automaton, Backend backend) : automaton_(std::move(automaton)), backend_(backend) {
    validate(automaton_);
    if (backend_ == Backend::Concrete) return;
    entry_checks_ = entry_checks(automaton_);
    try {
        Pta n = normalize(automaton_);
        const auto before = parametric_clocks(automaton_);
        if (before.size() > 1) {
            throw ModelError("expected exactly one parametric clock, found " + std::to_string(before.size()));
        }
        std::optional<ClockId> xp;
        if (parametric_clocks(n).empty()) {
            // Parameters play no role: any clock can stand in for xp.
            if (!before.empty()) {
                xp = *before.begin();
            } else {
                if (n.clocks.empty()) {
                    std::string name = "xp";
                    while (n.find_clock(name)) name += "'";
                    n.clocks.push_back(name);
                }
                xp = 0;
            }
        }
        fractional_ = std::make_shared<const FractionalPta>(add_fractional_clock(n, xp));
    } catch (const ModelError& e) {
        throw SolverError(std::string("zerone backend unavailable: ") + e.what());
    }
}

const FractionalPta& Checker::fractional() const {
    if (!fractional_) throw SolverError("checker was built without the zerone backend");
    return *fractional_;
}

CheckResult Checker::check_concrete(const ParamValuation& gamma) const {
    EmptinessResult r = empty(automaton_, gamma);
    CheckResult out;
    out.empty = r.empty;
    out.witness = std::move(r.witness);
    out.states_explored = r.states_explored;
    return out;
}

CheckResult Checker::check_zero_one(const ParamValuation& gamma) const {
    const FractionalPta& f = fractional();
    auto values = resolve_params(automaton_, gamma);
    CheckResult out;
    // Normalization drops the initial invariant; a violated one means no runs at all.
    ClockValuation zero(automaton_.clocks.size(), Rational(0));
    if (!satisfies(zero, automaton_.locations[automaton_.initial].invariant, values)) return out;

    // Entry checks that fail under γ disable their transition (z < 0 never holds).
    std::optional<FractionalPta> restricted;
    for (const auto& [t, c] : entry_checks_) {
        if (satisfies(zero, c, values)) continue;
        if (!restricted) restricted = f;
        restricted->automaton.transitions[t].guard.add(Constraint{f.z, Relation::Less, Bound::constant(0)});
    }
    const FractionalPta& g = restricted ? *restricted : f;

    OnTheFlyResult r = zo_search(g, values);
    out.empty = r.result.empty;
    out.states_explored = r.result.states_explored;
    if (!r.result.empty) {
        out.concretization = concretize_run(r.graph, g, values, *r.result.run);
        out.witness = project_run(g, out.concretization->run);
        out.zo_run = std::move(r.result.run);
        out.zo_graph = std::make_shared<const ZeroOneTA>(std::move(r.graph));
    }
    return out;
}

CheckResult Checker::check(const ParamValuation& gamma) const {
    switch (backend_) {
        case Backend::Concrete: return check_concrete(gamma);
        case Backend::ZeroOne: return check_zero_one(gamma);
        case Backend::BothCheck: break;
    }
    CheckResult concrete = check_concrete(gamma);
    CheckResult zo = check_zero_one(gamma);
    if (concrete.empty != zo.empty) {
        std::string g;
        for (const auto& [k, v] : gamma) g += (g.empty() ? "" : ",") + k + "=" + std::to_string(v);
        throw SolverError("backend disagreement at " + g + ": concrete says " +
                          (concrete.empty ? "empty" : "nonempty") + ", zerone says " +
                          (zo.empty ? "empty" : "nonempty"));
    }
    zo.states_explored += concrete.states_explored;
    return zo;
}

CheckResult check(const Pta& a, const ParamValuation& gamma, Backend backend) {
    return Checker(a, backend).check(gamma);
}

// ============================================================================
// Enumeration
// ============================================================================

std::vector<ParamValuation> enumerate_valuations(const std::vector<std::string>& params, std::int64_t bound) {
    std::vector<std::string> names = params;
    std::sort(names.begin(), names.end());
    std::vector<ParamValuation> out;
    std::vector<std::int64_t> values(names.size(), 0);

    // All vectors with the given remaining sum from position i on, lexicographically.
    auto fill = [&](auto&& self, std::size_t i, std::int64_t remaining) -> void {
        if (i + 1 >= names.size()) {
            if (names.empty()) {
                if (remaining == 0) out.emplace_back();
                return;
            }
            values[i] = remaining;
            ParamValuation g;
            for (std::size_t j = 0; j < names.size(); ++j) g[names[j]] = values[j];
            out.push_back(std::move(g));
            return;
        }
        for (std::int64_t v = 0; v <= remaining; ++v) {
            values[i] = v;
            self(self, i + 1, remaining - v);
        }
    };
    for (std::int64_t s = 0; s <= bound; ++s) {
        fill(fill, 0, s);
        if (names.empty()) break;
    }
    return out;
}

unsigned default_threads() {
    if (const char* env = std::getenv("PTA_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

// ============================================================================
// solve
// ============================================================================

SynthesisResult solve(const SynthesisQuery& q) {
    if (q.bound < 0) throw SolverError("bound must be nonnegative");
    const auto start = std::chrono::steady_clock::now();
    Checker checker(q.automaton, q.backend);
    const unsigned threads = q.threads ? q.threads : default_threads();

    SynthesisResult result;
    result.mode = q.mode;
    result.bound = q.bound;
    const auto candidates = enumerate_valuations(q.automaton.params, q.bound);

    struct Slot {
        std::optional<CheckResult> result;
        std::exception_ptr error;
    };
    const std::size_t batch = std::max<std::size_t>(1, threads * 2);
    for (std::size_t base = 0; base < candidates.size() && !result.found; base += batch) {
        const std::size_t end = std::min(candidates.size(), base + batch);
        std::vector<Slot> slots(end - base);
        auto work = [&](std::size_t i) {
            try {
                slots[i - base].result = checker.check(candidates[i]);
            } catch (...) {
                slots[i - base].error = std::current_exception();
            }
        };
        if (threads <= 1) {
            for (std::size_t i = base; i < end; ++i) work(i);
        } else {
            std::vector<std::jthread> pool;
            std::atomic<std::size_t> next{base};
            for (unsigned w = 0; w < threads; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < end; i = next++) work(i);
                });
            }
        }
        for (std::size_t i = base; i < end; ++i) {
            Slot& slot = slots[i - base];
            if (slot.error) std::rethrow_exception(slot.error);
            ++result.stats.valuations_tested;
            result.stats.states_explored += slot.result->states_explored;
            bool hit = q.mode == Mode::Reach ? !slot.result->empty : slot.result->empty;
            if (hit) {
                result.found = true;
                result.gamma = candidates[i];
                if (q.mode == Mode::Reach) result.witness = std::move(slot.result->witness);
                break;
            }
        }
    }
    result.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace pta
