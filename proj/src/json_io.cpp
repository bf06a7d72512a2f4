// ============================================================================
// json_io.cpp
// ============================================================================

#include "pta/json_io.hpp"

#include "pta/error.hpp"

namespace pta {

Json gamma_to_json(const ParamValuation& gamma) {
    Json j = Json::object();
    for (const auto& [name, value] : gamma) j[name] = value;
    return j;
}

ParamValuation gamma_from_json(const Json& j) {
    if (!j.is_object()) throw Error("gamma must be a JSON object");
    ParamValuation out;
    for (const auto& [name, value] : j.items()) {
        if (!value.is_number_integer()) throw Error("gamma value for '" + name + "' is not an integer");
        out[name] = value.get<std::int64_t>();
    }
    return out;
}

namespace {

Json valuation_to_json(const Pta& a, const ClockValuation& nu) {
    Json j = Json::object();
    for (ClockId c = 0; c < a.clocks.size(); ++c) j[a.clocks[c]] = to_string(nu[c]);
    return j;
}

}  // namespace

Json trace_to_json(const Pta& a, const ParamValuation& gamma, const TimedRun& run) {
    auto values = resolve_params(a, gamma);
    auto configs = replay_trace(a, values, initial_configuration(a, values), run);
    Json out = Json::array();
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const RunStep& s = run.steps[i];
        Json step;
        step["delay"] = to_string(s.delay);
        step["transition"] = s.transition;
        step["action"] = a.transitions[s.transition].action;
        step["location"] = a.locations[configs[i + 1].location].name;
        step["valuation"] = valuation_to_json(a, configs[i + 1].nu);
        out.push_back(std::move(step));
    }
    return out;
}

TimedRun trace_from_json(const Json& j) {
    const Json* steps = &j;
    if (j.is_object()) {
        if (!j.contains("witness")) throw Error("trace object has no \"witness\" field");
        steps = &j.at("witness");
    }
    if (!steps->is_array()) throw Error("trace must be a JSON array");
    TimedRun run;
    for (std::size_t i = 0; i < steps->size(); ++i) {
        const Json& s = (*steps)[i];
        try {
            const Json& d = s.at("delay");
            Rational delay = d.is_string() ? parse_rational(d.get<std::string>())
                                           : parse_rational(std::to_string(d.get<std::int64_t>()));
            run.steps.push_back(RunStep{delay, s.at("transition").get<TransitionId>()});
        } catch (const nlohmann::json::exception& e) {
            throw Error("trace step " + std::to_string(i) + ": " + e.what());
        }
    }
    return run;
}

Json check_to_json(const Pta& a, const ParamValuation& gamma, const CheckResult& r) {
    Json j;
    j["empty"] = r.empty;
    j["gamma"] = gamma_to_json(gamma);
    if (r.witness) j["witness"] = trace_to_json(a, gamma, *r.witness);
    j["stats"] = Json{{"states_explored", r.states_explored}};
    return j;
}

Json synthesis_to_json(const Pta& a, const SynthesisResult& r) {
    Json j;
    j["verdict"] = r.found ? "FOUND" : "NOT-FOUND-UP-TO";
    j["mode"] = std::string(to_string(r.mode));
    j["bound"] = r.bound;
    j["gamma"] = r.found ? gamma_to_json(r.gamma) : Json(nullptr);
    j["witness"] = r.witness ? trace_to_json(a, r.gamma, *r.witness) : Json(nullptr);
    j["stats"] = Json{{"valuations_tested", r.stats.valuations_tested},
                      {"states_explored", r.stats.states_explored},
                      {"seconds", r.stats.seconds}};
    return j;
}

Json zero_one_to_json(const ZeroOneTA& zo) {
    Json j;
    j["name"] = zo.name;
    j["clock"] = zo.clock_name;
    j["params"] = zo.params;
    j["region_clocks"] = zo.hat_clock_names;
    j["bound"] = zo.bound;
    j["initial"] = zo.initial;

    Json states = Json::array();
    for (std::size_t s = 0; s < zo.states.size(); ++s) {
        const auto& st = zo.states[s];
        Json e;
        e["id"] = s;
        e["location"] = zo.location_names[st.location];
        e["region"] = to_string(st.region, zo.hat_clock_names);
        e["corner"] = st.corner;
        e["iota"] = std::string(to_string(zo.iota_of(s)));
        e["accepting"] = zo.accepting(s);
        if (zo.pruned[s]) e["pruned"] = true;
        states.push_back(std::move(e));
    }
    j["states"] = std::move(states);

    Json zero = Json::array(), unit = Json::array();
    for (std::size_t s = 0; s < zo.states.size(); ++s) {
        if (zo.zero_delay[s]) zero.push_back({s, *zo.zero_delay[s]});
        if (zo.unit_delay[s]) unit.push_back({s, *zo.unit_delay[s]});
    }
    j["zero_delays"] = std::move(zero);
    j["unit_delays"] = std::move(unit);

    Json actions = Json::array();
    for (const auto& act : zo.actions) {
        Json guard = Json::array();
        for (const auto& c : act.guard.constraints) {
            guard.push_back(zo.clock_name + std::string(to_string(c.rel)) +
                            (c.bound.is_parameter() ? zo.params[c.bound.parameter()]
                                                    : std::to_string(c.bound.constant())));
        }
        actions.push_back(Json{{"source", act.source},
                               {"target", act.target},
                               {"guard", std::move(guard)},
                               {"reset", act.reset},
                               {"origin", act.origin}});
    }
    j["actions"] = std::move(actions);
    j["stats"] = Json{{"states", zo.states.size()},
                      {"zero_delays", j["zero_delays"].size()},
                      {"unit_delays", j["unit_delays"].size()},
                      {"actions", zo.actions.size()}};
    return j;
}

Json zo_run_to_json(const ZeroOneTA& zo, const ZoRun& run) {
    Json out = Json::array();
    auto state = [&](const ZoConfiguration& c) {
        const auto& st = zo.states[c.state];
        return Json{{"state", c.state},
                    {"location", zo.location_names[st.location]},
                    {"region", to_string(st.region, zo.hat_clock_names)},
                    {"corner", st.corner},
                    {"t", c.t}};
    };
    Json first = state(run.start);
    first["kind"] = "start";
    out.push_back(std::move(first));
    for (const auto& step : run.steps) {
        Json e = state(step.to);
        e["kind"] = std::string(to_string(step.kind));
        if (step.kind == ZoEdge::Action) e["origin"] = zo.actions[step.action].origin;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace pta
