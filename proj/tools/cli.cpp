// ============================================================================
// cli.cpp: subcommands over the pta library
// ============================================================================

#include "cli.hpp"

#include "pta/error.hpp"
#include "pta/json_io.hpp"
#include "pta/minsky.hpp"
#include "pta/parser.hpp"
#include "pta/semantics.hpp"
#include "pta/solver.hpp"
#include "pta/zerone.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pta {

namespace {

constexpr int kAnswered = 0;
constexpr int kNotFound = 1;
constexpr int kInputError = 2;

ParamValuation parse_gamma(const std::string& text) {
    ParamValuation out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw Error("bad --gamma entry '" + item + "' (expected name=value)");
        std::string name = item.substr(0, eq), value = item.substr(eq + 1);
        if (value.empty() || !std::all_of(value.begin(), value.end(), ::isdigit) || value.size() > 12) {
            throw Error("bad --gamma value '" + value + "' for '" + name + "' (expected a nonnegative integer)");
        }
        if (!out.emplace(name, std::stoll(value)).second) throw Error("parameter '" + name + "' given twice");
    }
    return out;
}

struct ModelOptions {
    std::string file;
    std::string accepting;  // component name whose accepting locations count

    Pta load() const {
        Network net = parse_network(read_file(file));
        ProductOptions opts;
        if (!accepting.empty()) {
            auto it = std::find_if(net.automata.begin(), net.automata.end(),
                                   [&](const Pta& a) { return a.name == accepting; });
            if (it == net.automata.end()) throw Error("no automaton named '" + accepting + "'");
            opts.accepting_component = static_cast<std::size_t>(it - net.automata.begin());
        }
        Pta a = flatten(net, opts);
        validate(a);
        return a;
    }
};

void add_model(CLI::App* cmd, ModelOptions& m) {
    cmd->add_option("file", m.file, "model file")->required();
    cmd->add_option("--accepting-component", m.accepting,
                    "only this automaton's accepting locations make a product location accepting");
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parametric timed automata: emptiness checking and bounded parameter synthesis"};
    app.name("pta");
    app.require_subcommand(1);

    ModelOptions model;

    auto* validate_cmd = app.add_subcommand("validate", "parse a model and report its shape");
    add_model(validate_cmd, model);

    auto* product_cmd = app.add_subcommand("product", "print the flattened product automaton");
    add_model(product_cmd, model);
    std::string out_path;
    product_cmd->add_option("--out", out_path, "output file (default stdout)");

    std::string gamma_text, backend_text = "concrete";
    bool show_zo_run = false;
    auto* check_cmd = app.add_subcommand("check", "decide emptiness for one parameter valuation");
    add_model(check_cmd, model);
    check_cmd->add_option("--gamma", gamma_text, "parameter valuation, e.g. p1=5,p2=9");
    check_cmd->add_option("--backend", backend_text, "concrete | zerone | both")
        ->check(CLI::IsMember({"concrete", "zerone", "both"}));
    check_cmd->add_flag("--zo-run", show_zo_run, "include the run of the 0/1 automaton (zerone backends)");

    std::string mode_text;
    std::int64_t bound = 0;
    unsigned threads = 0;
    auto* synth_cmd = app.add_subcommand("synth", "bounded parameter synthesis");
    add_model(synth_cmd, model);
    synth_cmd->add_option("--mode", mode_text, "reach | safe")->required()->check(CLI::IsMember({"reach", "safe"}));
    synth_cmd->add_option("--bound", bound, "largest parameter sum to try")->required()->check(CLI::NonNegativeNumber);
    synth_cmd->add_option("--backend", backend_text, "concrete | zerone | both")
        ->check(CLI::IsMember({"concrete", "zerone", "both"}));
    synth_cmd->add_option("--threads", threads, "worker threads (default: PTA_THREADS or 1)");

    std::size_t max_states = 5'000'000;
    auto* build_cmd = app.add_subcommand("build01", "build the reachable 0/1 automaton and dump it as JSON");
    add_model(build_cmd, model);
    build_cmd->add_option("--out", out_path, "JSON output file (default stdout)");
    build_cmd->add_option("--max-states", max_states, "give up beyond this many states");

    std::string minsky_file;
    auto* encode_cmd = app.add_subcommand("encode-minsky", "encode a Minsky machine as a PTA");
    encode_cmd->add_option("file", minsky_file, "Minsky machine source")->required();
    encode_cmd->add_option("--mode", mode_text, "reach | safe")->required()->check(CLI::IsMember({"reach", "safe"}));
    encode_cmd->add_option("--out", out_path, "output file (default stdout)");

    std::string what = "region";
    std::size_t max_nodes = 100'000;
    auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz export of the region graph or the 0/1 automaton");
    add_model(dot_cmd, model);
    dot_cmd->add_option("--graph", what, "region | zerone")->check(CLI::IsMember({"region", "zerone"}));
    dot_cmd->add_option("--gamma", gamma_text, "parameter valuation (region graph)");
    dot_cmd->add_option("--max-nodes", max_nodes, "truncate after this many nodes");
    dot_cmd->add_option("--out", out_path, "output file (default stdout)");

    std::string trace_file;
    auto* replay_cmd = app.add_subcommand("replay", "replay a witness trace under exact arithmetic");
    add_model(replay_cmd, model);
    replay_cmd->add_option("--trace", trace_file, "trace JSON (array, or an object with gamma and witness)")
        ->required();
    replay_cmd->add_option("--gamma", gamma_text, "parameter valuation (overrides the trace's gamma)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kAnswered : kInputError;
    }

    try {
        if (*validate_cmd) {
            Network net = parse_network(read_file(model.file));
            Pta a = model.load();
            Json j;
            j["automata"] = net.automata.size();
            j["clocks"] = a.clocks;
            j["params"] = a.params;
            j["locations"] = a.locations.size();
            j["transitions"] = a.transitions.size();
            Json pclocks = Json::array();
            for (ClockId c : parametric_clocks(a)) pclocks.push_back(a.clocks[c]);
            j["parametric_clocks"] = pclocks;
            Json acc = Json::array();
            for (const auto& l : a.locations) {
                if (l.accepting) acc.push_back(l.name);
            }
            j["accepting"] = acc;
            j["max_constant"] = max_constant(a);
            out << j.dump(2) << "\n";
            return kAnswered;
        }
        if (*product_cmd) {
            write_output(out_path, to_text(model.load()), out);
            return kAnswered;
        }
        if (*check_cmd) {
            Pta a = model.load();
            ParamValuation gamma = parse_gamma(gamma_text);
            Checker checker(a, parse_backend(backend_text));
            CheckResult r = checker.check(gamma);
            Json j = check_to_json(a, gamma, r);
            j["backend"] = backend_text;
            if (show_zo_run && r.zo_run) j["zo_run"] = zo_run_to_json(*r.zo_graph, *r.zo_run);
            out << j.dump(2) << "\n";
            return kAnswered;
        }
        if (*synth_cmd) {
            SynthesisQuery q;
            q.automaton = model.load();
            q.mode = parse_mode(mode_text);
            q.bound = bound;
            q.backend = parse_backend(backend_text);
            q.threads = threads;
            SynthesisResult r = solve(q);
            Json j = synthesis_to_json(q.automaton, r);
            j["backend"] = backend_text;
            out << j.dump(2) << "\n";
            return r.found ? kAnswered : kNotFound;
        }
        if (*build_cmd) {
            Pta a = model.load();
            FractionalPta f = add_fractional_clock(normalize(a));
            ZeroOneTA zo = build_01(f, max_states);
            Json j = zero_one_to_json(zo);
            Json stats = j["stats"];
            if (out_path.empty() || out_path == "-") {
                out << j.dump(2) << "\n";
            } else {
                write_output(out_path, j.dump(2) + "\n", out);
                out << stats.dump(2) << "\n";
            }
            return kAnswered;
        }
        if (*encode_cmd) {
            MinskyMachine m = parse_minsky(read_file(minsky_file));
            Pta a = parse_mode(mode_text) == Mode::Reach ? encode_reach(m) : encode_safe(m);
            write_output(out_path, to_text(a), out);
            return kAnswered;
        }
        if (*dot_cmd) {
            Pta a = model.load();
            std::string dot;
            if (what == "region") {
                dot = to_dot(explore_region_graph(a, parse_gamma(gamma_text), max_nodes), a);
            } else {
                dot = to_dot(build_01(add_fractional_clock(normalize(a)), max_nodes));
            }
            write_output(out_path, dot, out);
            return kAnswered;
        }
        if (*replay_cmd) {
            Pta a = model.load();
            Json trace = Json::parse(read_file(trace_file));
            ParamValuation gamma;
            if (trace.is_object() && trace.contains("gamma") && !trace["gamma"].is_null()) {
                gamma = gamma_from_json(trace["gamma"]);
            }
            if (!gamma_text.empty()) gamma = parse_gamma(gamma_text);
            TimedRun run = trace_from_json(trace);
            auto values = resolve_params(a, gamma);
            auto configs = replay_trace(a, values, initial_configuration(a, values), run);
            const Configuration& last = configs.back();
            Json j;
            j["replayed"] = true;
            j["steps"] = run.steps.size();
            j["location"] = a.locations[last.location].name;
            j["accepting"] = a.locations[last.location].accepting;
            Json nu = Json::object();
            for (ClockId c = 0; c < a.clocks.size(); ++c) nu[a.clocks[c]] = to_string(last.nu[c]);
            j["valuation"] = nu;
            out << j.dump(2) << "\n";
            return kAnswered;
        }
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace pta
