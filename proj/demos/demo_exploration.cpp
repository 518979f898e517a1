// Demo: bounded exploration of a machine.
//
// The corpus models trains occupying sections of a rail network.  The machine
// keeps a partial map from train identifiers to trains; events create a
// train, extend its head along a network connection, and retract its rear.
// Two safety invariants matter: trains never overlap (collision_free) and
// every train follows existing connections (no_derailment).
//
// This program resolves the concrete constants from their definitional
// axioms, explores the reachable states breadth-first on a three-section
// linear topology, and checks every invariant in every state.  It then runs
// the same exploration on a broken variant whose `enter` event forgets to
// check that the target section is free, and prints the violating trace.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ebadt/ebadt.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string corpus(const std::string& name) {
    return std::string(EBADT_CORPUS_DIR) + "/" + name;
}

int explore_machine(const std::string& machine_file, const char* headline,
                    std::size_t depth) {
    using namespace ebadt;

    // Three named sections in a line, two train identifiers, track positions
    // (room to extend a head twice).  Atom names must be ambient while parsing so A, B, C resolve.
    UniverseConfig cfg;
    cfg.int_min = -1;
    cfg.int_max = 3;
    cfg.carriers["SECTION"].atom_names = {"A", "B", "C"};
    cfg.carriers["SECTION"].size = 3;
    cfg.carriers["TRAIN_ID"].size = 2;
    std::set<std::string> ambient = {"A", "B", "C"};

    Library lib;
    for (const char* f :
         {"train_abstract.ebm", "train_concrete.ebm", "topology_linear3.ebm"})
        lib.add(parse_model(read_file(corpus(f)), f, ambient));
    lib.add(parse_model(read_file(corpus(machine_file)), machine_file, ambient));

    // Swap the machine onto the concrete context so the constants (TRAIN,
    // head, add_head, ...) are fully determined by definitional axioms.
    MachineDef m = lib.machine("train_machine");
    m.sees = {"train_concrete", "topology_linear3"};
    check_machine_wf(m, lib, ambient);

    FlatContext flat = flatten_contexts(m.sees, lib);
    auto constants = resolve_constants(flat, {}, cfg);
    std::cout << "== " << headline << " ==\n";
    std::cout << "resolved " << constants.size()
              << " constants from the definitional axioms; |TRAIN| = "
              << constants.at("TRAIN").elements().size() << "\n";

    ExploreResult res = explore(m, constants, depth, cfg);
    std::cout << render_explore(res);

    // Show how a state is reached: print the trace to the last (deepest)
    // discovered state.
    if (res.violations.empty() && !res.states.empty()) {
        std::size_t last = res.states.size() - 1;
        std::cout << "one deepest state, reached by:\n"
                  << render_trace(trace_to(res, last)) << "  state: "
                  << render_state(res.states[last]) << "\n";
    }
    for (std::size_t i = 0; i < res.violations.size() && i < 3; ++i) {
        const Violation& v = res.violations[i];
        bool ok = replay_trace(m, constants, trace_to(res, v.state), v.invariant, cfg);
        std::cout << "  replay of the " << v.invariant << " violation at state "
                  << v.state << ": " << (ok ? "confirmed" : "FAILED") << "\n";
    }
    std::cout << "\n";
    return exit_code_for(res);
}

}  // namespace

int main() {
    try {
        int ok = explore_machine("train_machine.ebm",
                                 "train machine on a 3-section line", 6);
        int bad = explore_machine(
            "train_machine_bug.ebm",
            "the same machine with the occupancy guard removed", 6);
        return (ok == 0 && bad == 1) ? 0 : 1;
    } catch (const ebadt::DiagnosticError& e) {
        std::cerr << to_string(e.diagnostic) << "\n";
        return 2;
    } catch (const ebadt::EvalError& e) {
        std::cerr << "error: " << to_string(e.kind) << ": " << e.message << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
