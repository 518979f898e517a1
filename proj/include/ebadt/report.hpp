#pragma once

// Plain-text rendering of check and exploration results.

#include <sstream>
#include <string>
#include <vector>

#include "ebadt/explore.hpp"
#include "ebadt/obligations.hpp"

namespace ebadt {

inline std::string to_string(const Bindings& b) {
    std::string out;
    for (const auto& [name, value] : b) {
        if (!out.empty()) out += ", ";
        out += name + " = " + to_string(value);
    }
    return out;
}

inline std::string render_result(const CheckResult& r) {
    std::ostringstream out;
    out << r.label << ": " << to_string(r.verdict);
    out << "  [examined " << r.examined << ", " << (std::int64_t)r.elapsed_ms << " ms]";
    if (r.verdict == Verdict::Counterexample) {
        out << "\n    counterexample: " << to_string(r.witness);
    }
    if (!r.note.empty()) out << "\n    note: " << r.note;
    return out.str();
}

inline std::string render_results(const std::vector<CheckResult>& results) {
    std::size_t valid = 0, cex = 0, unsupported = 0, too_large = 0;
    std::ostringstream out;
    for (const auto& r : results) {
        out << render_result(r) << "\n";
        switch (r.verdict) {
            case Verdict::ValidWithinBounds: ++valid; break;
            case Verdict::Counterexample: ++cex; break;
            case Verdict::Unsupported: ++unsupported; break;
            case Verdict::UniverseTooLarge: ++too_large; break;
        }
    }
    out << results.size() << " obligation" << (results.size() == 1 ? "" : "s") << ": "
        << valid << " valid-within-bounds, " << cex << " counterexample"
        << (cex == 1 ? "" : "s");
    if (unsupported) out << ", " << unsupported << " unsupported";
    if (too_large) out << ", " << too_large << " universe-too-large";
    out << "\n";
    return out.str();
}

inline std::string render_trace(const std::vector<TraceStep>& steps) {
    std::ostringstream out;
    std::size_t n = 0;
    for (const auto& s : steps) {
        out << "      " << ++n << ". " << s.event;
        if (!s.params.empty()) out << "  (" << to_string(s.params) << ")";
        out << "\n";
    }
    return out.str();
}

inline std::string render_state(const MachineState& s) {
    std::string out;
    for (const auto& [name, value] : s) {
        if (!out.empty()) out += ", ";
        out += name + " = " + to_string(value);
    }
    return out;
}

inline std::string render_explore(const ExploreResult& res) {
    std::ostringstream out;
    out << res.states.size() << " state" << (res.states.size() == 1 ? "" : "s")
        << ", " << res.transitions << " transition"
        << (res.transitions == 1 ? "" : "s") << ", " << res.violations.size()
        << " violation" << (res.violations.size() == 1 ? "" : "s");
    if (res.state_limited)
        out << " (gave up at the state limit: incomplete)";
    else if (res.depth_bounded)
        out << " (complete up to the depth bound)";
    out << "\n";
    if (res.out_of_universe_states)
        out << "  note: " << res.out_of_universe_states << " state"
            << (res.out_of_universe_states == 1 ? " holds" : "s hold")
            << " values outside the bounded universe; invariant claims there are"
               " partially vacuous\n";
    constexpr std::size_t max_rendered = 10;
    for (std::size_t i = 0; i < res.violations.size() && i < max_rendered; ++i) {
        const Violation& v = res.violations[i];
        out << "  violation of " << v.invariant << " at state " << v.state << ": "
            << render_state(res.states[v.state]) << "\n";
        std::vector<TraceStep> steps = trace_to(res, v.state);
        if (steps.empty())
            out << "      (initial state)\n";
        else
            out << render_trace(steps);
    }
    if (res.violations.size() > max_rendered)
        out << "  ... and " << (res.violations.size() - max_rendered)
            << " further violations\n";
    return out.str();
}

// Exit-code policy shared by the command-line tool and the test suite:
//   0 every obligation valid / no violations
//   1 some counterexample or invariant violation
//   2 unsupported construct, universe too large, or invalid input
inline int exit_code_for(const std::vector<CheckResult>& results) {
    bool cex = false, other = false;
    for (const auto& r : results) {
        if (r.verdict == Verdict::Counterexample) cex = true;
        if (r.verdict == Verdict::Unsupported || r.verdict == Verdict::UniverseTooLarge)
            other = true;
    }
    if (cex) return 1;
    if (other) return 2;
    return 0;
}

inline int exit_code_for(const ExploreResult& res) {
    if (!res.violations.empty()) return 1;
    if (res.state_limited) return 2;  // the no-violation claim is incomplete
    return 0;
}

}  // namespace ebadt
