// Command-line front end: parse, validate, discharge obligations, explore.
//
// Exit codes:
//   0  success (all obligations valid / no violations / formatted)
//   1  a counterexample or an invariant violation was found
//   2  unsupported construct, universe too large, or invalid input/config

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ebadt/ebadt.hpp"

namespace {

using nlohmann::json;
using namespace ebadt;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("io.cannot-read", "cannot read file '" + path + "'", {});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool valid_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha((unsigned char)s[0]) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum((unsigned char)c) || c == '_')) return false;
    return !reserved_words().count(s);
}

struct Options {
    std::string file;
    std::vector<std::string> with_files;
    std::vector<std::string> sees;
    std::vector<std::string> set_args;
    std::vector<std::string> po_filter;
    std::string bind_file;
    std::string machine_name;
    std::string int_range;
    std::size_t depth = 6;
    std::size_t power_limit = 0;   // 0 = keep default
    std::uint64_t enum_limit = 0;  // 0 = keep default
    std::size_t state_limit = 0;   // 0 = keep default
    unsigned jobs = 1;
    bool enumerable = false;
    bool json_out = false;

    UniverseConfig universe() const {
        UniverseConfig cfg;
        if (!int_range.empty()) {
            auto dots = int_range.find("..", 1);
            bool ok = dots != std::string::npos;
            if (ok) {
                try {
                    std::size_t used = 0;
                    std::string lo = int_range.substr(0, dots);
                    std::string hi = int_range.substr(dots + 2);
                    cfg.int_min = std::stoll(lo, &used);
                    ok = used == lo.size();
                    if (ok) {
                        cfg.int_max = std::stoll(hi, &used);
                        ok = used == hi.size();
                    }
                } catch (const std::exception&) {
                    ok = false;
                }
            }
            if (!ok || cfg.int_min > cfg.int_max)
                fail("config.invalid-int-range",
                     "--int expects 'lo..hi' with lo <= hi, e.g. --int -3..5; got '" +
                         int_range + "'",
                     {});
        }
        for (const auto& arg : set_args) {
            auto eq = arg.find('=');
            if (eq == std::string::npos || eq == 0)
                fail("config.invalid-set",
                     "--set expects NAME=<size> or NAME={a,b,c}; got '" + arg + "'", {});
            std::string name = arg.substr(0, eq);
            std::string val = arg.substr(eq + 1);
            if (!valid_ident(name))
                fail("config.invalid-set",
                     "'" + name + "' is not a valid carrier set name", {});
            CarrierSpec spec;
            if (!val.empty() && val.front() == '{') {
                if (val.back() != '}')
                    fail("config.invalid-set",
                         "--set " + name + "={...} is missing the closing brace", {});
                std::string inner = val.substr(1, val.size() - 2);
                std::string atom;
                std::istringstream parts(inner);
                while (std::getline(parts, atom, ',')) {
                    while (!atom.empty() && std::isspace((unsigned char)atom.front()))
                        atom.erase(atom.begin());
                    while (!atom.empty() && std::isspace((unsigned char)atom.back()))
                        atom.pop_back();
                    if (!valid_ident(atom))
                        fail("config.invalid-set",
                             "'" + atom + "' is not a valid atom name in --set " + arg, {});
                    spec.atom_names.push_back(atom);
                }
                if (spec.atom_names.empty())
                    fail("config.invalid-set",
                         "--set " + name + "={} needs at least one atom name", {});
                spec.size = (std::int64_t)spec.atom_names.size();
            } else {
                try {
                    std::size_t used = 0;
                    spec.size = std::stoll(val, &used);
                    if (used != val.size() || spec.size <= 0)
                        throw std::invalid_argument("size");
                } catch (const std::exception&) {
                    fail("config.invalid-set",
                         "--set " + name + "=<size> needs a positive integer; got '" +
                             val + "'",
                         {});
                }
            }
            cfg.carriers[name] = std::move(spec);
        }
        if (power_limit) cfg.power_limit = power_limit;
        if (enum_limit) cfg.enum_limit = enum_limit;
        if (state_limit) cfg.state_limit = state_limit;
        cfg.jobs = jobs == 0 ? 1 : jobs;
        return cfg;
    }

    std::set<std::string> ambient(const UniverseConfig& cfg) const {
        std::set<std::string> out;
        for (const auto& [carrier, spec] : cfg.carriers)
            for (const auto& a : spec.atom_names) out.insert(a);
        return out;
    }
};

// Load the main file plus every --with file into one library.
ModelFile load_all(const Options& opt, const std::set<std::string>& ambient,
                   Library& lib) {
    ModelFile main_file = parse_model(read_file(opt.file), opt.file, ambient);
    lib.add(main_file);
    for (const auto& f : opt.with_files)
        lib.add(parse_model(read_file(f), f, ambient));
    return main_file;
}

std::vector<ProofObligation> filter_pos(std::vector<ProofObligation> pos,
                                        const std::vector<std::string>& wanted) {
    if (wanted.empty()) return pos;
    std::vector<ProofObligation> out;
    for (auto& po : pos)
        for (const auto& w : wanted)
            if (po.label == w) {
                out.push_back(std::move(po));
                break;
            }
    if (out.empty()) {
        std::string all;
        for (const auto& po : pos) all += (all.empty() ? "" : ", ") + po.label;
        fail("cli.unknown-obligation",
             "no obligation matches --po; available: " + all, {});
    }
    return out;
}

json witness_json(const Bindings& w) {
    json arr = json::array();
    for (const auto& [name, value] : w)
        arr.push_back(json{{"name", name}, {"value", to_string(value)}});
    return arr;
}

json results_json(const std::vector<CheckResult>& results,
                  const std::map<std::string, Value>& root_env,
                  const UniverseConfig& cfg) {
    json arr = json::array();
    for (const auto& r : results) {
        json j;
        j["label"] = r.label;
        j["verdict"] = to_string(r.verdict);
        j["examined"] = r.examined;
        j["elapsed_ms"] = r.elapsed_ms;
        if (!r.note.empty()) j["note"] = r.note;
        if (r.verdict == Verdict::Counterexample) {
            j["witness"] = witness_json(r.witness);
            j["replay"] = replay_witness(r, root_env, cfg);
        }
        arr.push_back(std::move(j));
    }
    return json{{"obligations", std::move(arr)}};
}

void print_results(const std::vector<CheckResult>& results,
                   const std::map<std::string, Value>& root_env,
                   const UniverseConfig& cfg, bool json_out) {
    if (json_out) {
        std::cout << results_json(results, root_env, cfg).dump(2) << "\n";
        return;
    }
    std::cout << render_results(results);
    for (const auto& r : results)
        if (r.verdict == Verdict::Counterexample)
            std::cout << "replay " << r.label << ": "
                      << (replay_witness(r, root_env, cfg) ? "confirmed" : "FAILED")
                      << "\n";
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int run_check_context(const Options& opt) {
    UniverseConfig cfg = opt.universe();
    std::set<std::string> ambient = opt.ambient(cfg);
    Library lib;
    ModelFile mf = load_all(opt, ambient, lib);
    if (mf.contexts.empty())
        fail("cli.no-context", "'" + opt.file + "' declares no context", {});
    for (const auto& c : mf.contexts) {
        check_context_wf(c, lib, ambient);
        std::cout << "context " << c.name << ": well-formed ("
                  << c.axioms.size() << " axiom" << (c.axioms.size() == 1 ? "" : "s");
        if (!c.theorems.empty())
            std::cout << ", " << c.theorems.size() << " theorem"
                      << (c.theorems.size() == 1 ? "" : "s");
        std::cout << ")\n";
    }
    return 0;
}

int run_instantiate(const Options& opt) {
    UniverseConfig cfg = opt.universe();
    std::set<std::string> ambient = opt.ambient(cfg);
    Library lib;
    for (const auto& f : opt.with_files)
        lib.add(parse_model(read_file(f), f, ambient));
    BindingDef binding = parse_binding(read_file(opt.file), opt.file);
    check_context_wf(lib.context(binding.abstract_context, binding.span), lib, ambient);
    check_context_wf(lib.context(binding.concrete_context, binding.span), lib, ambient);
    check_binding_wf(binding, lib, ambient);

    FlatContext abstract_ctx =
        flatten_contexts({binding.abstract_context}, lib, binding.span);
    FlatContext concrete_ctx =
        flatten_contexts({binding.concrete_context}, lib, binding.span);
    std::vector<ProofObligation> pos =
        filter_pos(instantiation_obligations(abstract_ctx, concrete_ctx, binding),
                   opt.po_filter);

    std::set<std::string> carriers(concrete_ctx.sets.begin(), concrete_ctx.sets.end());
    std::map<std::string, Value> root = build_root_env(pos, carriers, {}, cfg);
    std::vector<CheckResult> results = check_obligations(pos, root, cfg);
    print_results(results, root, cfg, opt.json_out);
    return exit_code_for(results);
}

MachineDef select_machine(const ModelFile& mf, const Options& opt, const Library& lib) {
    if (!opt.machine_name.empty()) return lib.machine(opt.machine_name);
    if (mf.machines.empty())
        fail("cli.no-machine", "'" + opt.file + "' declares no machine", {});
    return mf.machines.front();
}

MachineDef prepare_machine(const Options& opt, const std::set<std::string>& ambient,
                           Library& lib) {
    ModelFile mf = load_all(opt, ambient, lib);
    MachineDef m = select_machine(mf, opt, lib);
    if (!opt.bind_file.empty()) {
        BindingDef binding = parse_binding(read_file(opt.bind_file), opt.bind_file);
        check_binding_wf(binding, lib, ambient);
        m = machine_instantiate(m, binding);
    }
    if (!opt.sees.empty()) m.sees = opt.sees;
    check_machine_wf(m, lib, ambient);
    return m;
}

int run_check_machine(const Options& opt) {
    UniverseConfig cfg = opt.universe();
    std::set<std::string> ambient = opt.ambient(cfg);
    Library lib;
    MachineDef m = prepare_machine(opt, ambient, lib);

    std::vector<ProofObligation> pos = machine_obligations(m, lib);
    if (opt.enumerable) {
        std::set<std::string> vars(m.variables.begin(), m.variables.end());
        for (auto& po : pos) po = prune_hypotheses(po, vars);
    }
    pos = filter_pos(std::move(pos), opt.po_filter);

    FlatContext flat = flatten_contexts(m.sees, lib, m.span);
    std::set<std::string> carriers(flat.sets.begin(), flat.sets.end());
    std::map<std::string, Value> root = build_root_env(pos, carriers, {}, cfg);
    std::vector<CheckResult> results = check_obligations(pos, root, cfg);
    print_results(results, root, cfg, opt.json_out);
    return exit_code_for(results);
}

int run_explore(const Options& opt) {
    UniverseConfig cfg = opt.universe();
    std::set<std::string> ambient = opt.ambient(cfg);
    Library lib;
    MachineDef m = prepare_machine(opt, ambient, lib);

    FlatContext flat = flatten_contexts(m.sees, lib, m.span);
    std::map<std::string, Value> constants = resolve_constants(flat, {}, cfg);
    ExploreResult res = explore(m, constants, opt.depth, cfg);

    if (opt.json_out) {
        json j;
        j["states"] = res.states.size();
        j["transitions"] = res.transitions;
        j["out_of_universe_states"] = res.out_of_universe_states;
        j["depth_bounded"] = res.depth_bounded;
        j["state_limited"] = res.state_limited;
        json viols = json::array();
        for (const auto& v : res.violations) {
            json vj;
            vj["state"] = v.state;
            vj["invariant"] = v.invariant;
            vj["state_values"] = render_state(res.states[v.state]);
            std::vector<TraceStep> steps = trace_to(res, v.state);
            json trace = json::array();
            for (const auto& s : steps)
                trace.push_back(json{{"event", s.event}, {"params", witness_json(s.params)}});
            vj["trace"] = std::move(trace);
            vj["replay"] = replay_trace(m, constants, steps, v.invariant, cfg);
            viols.push_back(std::move(vj));
        }
        j["violations"] = std::move(viols);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << render_explore(res);
        for (const auto& v : res.violations) {
            std::vector<TraceStep> steps = trace_to(res, v.state);
            std::cout << "replay " << v.invariant << " at state " << v.state << ": "
                      << (replay_trace(m, constants, steps, v.invariant, cfg)
                              ? "confirmed"
                              : "FAILED")
                      << "\n";
        }
    }
    return exit_code_for(res);
}

int run_fmt(const Options& opt) {
    std::string text = read_file(opt.file);
    bool binding = opt.file.size() > 4 &&
                   opt.file.compare(opt.file.size() - 4, 4, ".ebb") == 0;
    if (binding)
        std::cout << to_string(parse_binding(text, opt.file));
    else
        std::cout << to_string(parse_model(text, opt.file));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded validation of generic instantiations and machines"};
    app.require_subcommand(1);
    Options opt;

    auto add_universe = [&](CLI::App* cmd) {
        cmd->add_option("--int", opt.int_range,
                        "integer universe as lo..hi (default -3..5)");
        cmd->add_option("--set", opt.set_args,
                        "carrier set size NAME=k, or named atoms NAME={a,b,c} "
                        "(repeatable)");
        cmd->add_option("--power-limit", opt.power_limit,
                        "largest base set POW/function-space enumeration accepts");
        cmd->add_option("--enum-limit", opt.enum_limit,
                        "give up after this many candidate bindings");
        cmd->add_flag("--json", opt.json_out, "machine-readable output");
    };
    auto add_with = [&](CLI::App* cmd) {
        cmd->add_option("--with", opt.with_files,
                        "additional model files to load (repeatable)");
    };
    auto add_machine_opts = [&](CLI::App* cmd) {
        cmd->add_option("--machine", opt.machine_name,
                        "machine to use when the file declares several");
        cmd->add_option("--bind", opt.bind_file,
                        "instantiate the machine through this binding file first");
        cmd->add_option("--sees", opt.sees,
                        "replace the machine's sees list (repeatable)");
    };

    CLI::App* cc = app.add_subcommand("check-context",
                                      "validate the contexts declared in a file");
    cc->add_option("file", opt.file, "model file (.ebm)")->required();
    add_with(cc);
    add_universe(cc);

    CLI::App* inst = app.add_subcommand(
        "instantiate", "discharge the soundness obligations of a binding");
    inst->add_option("file", opt.file, "binding file (.ebb)")->required();
    add_with(inst);
    add_universe(inst);
    inst->add_option("--po", opt.po_filter, "check only these obligations (repeatable)");
    inst->add_option("--jobs", opt.jobs, "check obligations in parallel");

    CLI::App* cm = app.add_subcommand(
        "check-machine", "discharge the invariant obligations of a machine");
    cm->add_option("file", opt.file, "model file (.ebm)")->required();
    add_with(cm);
    add_machine_opts(cm);
    add_universe(cm);
    cm->add_option("--po", opt.po_filter, "check only these obligations (repeatable)");
    cm->add_option("--jobs", opt.jobs, "check obligations in parallel");
    cm->add_flag("--enumerable", opt.enumerable,
                 "bounded model search: prune each obligation to its relevant "
                 "hypotheses and enumerate the constants they type");

    CLI::App* ex = app.add_subcommand("explore",
                                      "breadth-first search of a machine's states");
    ex->add_option("file", opt.file, "model file (.ebm)")->required();
    add_with(ex);
    add_machine_opts(ex);
    add_universe(ex);
    ex->add_option("--depth", opt.depth, "transition depth to explore (default 6)");
    ex->add_option("--state-limit", opt.state_limit, "stop after this many states");

    CLI::App* fmt = app.add_subcommand("fmt", "parse a file and reprint it");
    fmt->add_option("file", opt.file, "model (.ebm) or binding (.ebb) file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cc->parsed()) return run_check_context(opt);
        if (inst->parsed()) return run_instantiate(opt);
        if (cm->parsed()) return run_check_machine(opt);
        if (ex->parsed()) return run_explore(opt);
        if (fmt->parsed()) return run_fmt(opt);
    } catch (const DiagnosticError& e) {
        std::cerr << to_string(e.diagnostic) << "\n";
        return 2;
    } catch (const EvalError& e) {
        std::cerr << "error: " << to_string(e.kind) << ": " << e.message << "\n";
        return 2;
    }
    return 2;
}
