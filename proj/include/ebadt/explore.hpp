#pragma once

// Bounded state-space exploration of a machine.
//
// States are total assignments of the machine variables to values.  The
// search is a deterministic breadth-first traversal from the initial state:
// events are tried in declaration order, parameter assignments are produced
// by the same plan engine that drives obligation checking, and every reached
// state is deduplicated by value.  Invariants are evaluated at every state —
// including states that already violate one, which are still expanded — and
// each violation carries a replayable trace back to the initial state.

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ebadt/ast.hpp"
#include "ebadt/interp.hpp"
#include "ebadt/model.hpp"
#include "ebadt/wellformed.hpp"

namespace ebadt {

using MachineState = std::map<std::string, Value>;

struct TraceStep {
    std::string event;
    Bindings params;  // parameter assignment, declaration order
};

struct Violation {
    std::size_t state = 0;  // index into ExploreResult::states
    std::string invariant;
};

struct ExploreResult {
    std::vector<MachineState> states;  // BFS discovery order; 0 is initial
    std::vector<std::int64_t> parent;  // -1 for the initial state
    std::vector<TraceStep> incoming;   // the step that produced each state
    std::vector<std::size_t> depth;
    std::vector<Violation> violations;
    std::uint64_t transitions = 0;   // event firings, duplicates included
    // States holding a value outside the bounded universe (e.g. an integer
    // beyond the configured range).  Invariant instances touching such values
    // are vacuous, so verdicts about these states are weaker.
    std::uint64_t out_of_universe_states = 0;
    bool depth_bounded = false;      // some frontier state sat at the depth bound
    bool state_limited = false;      // gave up at the state limit: incomplete
};

namespace explore_detail {

// Evaluate every action of `ev` in the pre-state environment and produce the
// post-state.  `v(i) := e` mirrors the evaluation of `v <+ {i |-> e}`.
inline MachineState apply_actions(const EventDef& ev, const MachineState& pre,
                                  const Env& env, const EvalCtx& ctx) {
    MachineState post = pre;
    for (const auto& a : ev.actions) {
        Value rhs = eval_expr(*a.value, env, ctx);
        if (!a.index) {
            post[a.target] = std::move(rhs);
            continue;
        }
        Value idx = eval_expr(*a.index, env, ctx);
        const Value* old = env.lookup(a.target);
        if (!old || !old->is_set())
            throw EvalError{EvalErrorKind::TypeConfusion,
                            "point update of '" + a.target + "' requires a set of pairs",
                            {}};
        std::vector<Value> pairs;
        pairs.reserve(old->elements().size() + 1);
        for (const auto& p : old->elements()) {
            if (!p.is_pair())
                throw EvalError{EvalErrorKind::TypeConfusion,
                                "point update of '" + a.target + "' over non-pairs", {}};
            if (p.first() != idx) pairs.push_back(p);
        }
        pairs.push_back(Value::pair(std::move(idx), std::move(rhs)));
        post[a.target] = Value::set(std::move(pairs));
    }
    return post;
}

inline Bindings state_bindings(const MachineState& s) {
    Bindings b;
    b.reserve(s.size());
    for (const auto& [name, value] : s) b.emplace_back(name, value);
    return b;
}

}  // namespace explore_detail

// Compute the initial state: init actions evaluated over constants only.
inline MachineState initial_state(const MachineDef& m,
                                  const std::map<std::string, Value>& constants,
                                  const UniverseConfig& cfg) {
    if (!m.init)
        throw EvalError{EvalErrorKind::Unresolved,
                        "machine '" + m.name + "' has no init event", {}};
    EvalCtx ctx{&cfg, nullptr};
    Bindings none;
    Env env{&constants, &none};
    return explore_detail::apply_actions(*m.init, MachineState{}, env, ctx);
}

// Breadth-first exploration up to `max_depth` transitions from the initial
// state (and at most cfg.state_limit distinct states).
inline ExploreResult explore(const MachineDef& m,
                             const std::map<std::string, Value>& constants,
                             std::size_t max_depth, const UniverseConfig& cfg) {
    ExploreResult res;
    EnumBudget budget{0, cfg.enum_limit};
    EvalCtx ctx{&cfg, &budget};

    std::map<MachineState, std::size_t> seen;
    auto check_invariants = [&](const MachineState& s, std::size_t idx) {
        for (const auto& [name, value] : s) {
            if (!in_universe(value, cfg)) {
                ++res.out_of_universe_states;
                break;
            }
        }
        Bindings locals = explore_detail::state_bindings(s);
        Env env{&constants, &locals};
        for (const auto& inv : m.invariants) {
            try {
                if (!eval_pred(*inv.pred, env, ctx))
                    res.violations.push_back(Violation{idx, inv.label});
            } catch (const EvalError& err) {
                if (!is_ghost_error(err, cfg)) throw;
                // Out-of-universe application: the invariant makes no claim here.
            }
        }
    };

    MachineState init = initial_state(m, constants, cfg);
    res.states.push_back(init);
    res.parent.push_back(-1);
    res.incoming.push_back(TraceStep{"init", {}});
    res.depth.push_back(0);
    seen.emplace(std::move(init), 0);
    check_invariants(res.states[0], 0);

    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        if (res.depth[cur] >= max_depth) {
            res.depth_bounded = true;  // not expanded past the requested depth
            continue;
        }

        for (const auto& ev : m.events) {
            // Enumerate parameter assignments satisfying the guards.  The
            // machine state sits below the parameters in the local stack.
            Bindings locals = explore_detail::state_bindings(res.states[cur]);
            std::size_t base = locals.size();
            Env env{&constants, &locals};

            std::vector<PredPtr> guards;
            for (const auto& g : ev.guards) flatten_conj(g.pred, guards);
            std::set<std::string> targets(ev.params.begin(), ev.params.end());
            Plan plan = build_plan(guards, targets);

            enumerate_plan(plan, env, ctx, [&]() -> bool {
                ++res.transitions;
                MachineState post =
                    explore_detail::apply_actions(ev, res.states[cur], env, ctx);
                auto [it, inserted] = seen.emplace(std::move(post), res.states.size());
                if (inserted) {
                    if (res.states.size() >= cfg.state_limit) {
                        res.state_limited = true;
                        seen.erase(it);
                        return false;  // stop enumerating this event
                    }
                    std::size_t idx = res.states.size();
                    res.states.push_back(it->first);
                    res.parent.push_back((std::int64_t)cur);
                    Bindings params(locals.begin() + (std::ptrdiff_t)base, locals.end());
                    res.incoming.push_back(TraceStep{ev.name, std::move(params)});
                    res.depth.push_back(res.depth[cur] + 1);
                    check_invariants(it->first, idx);
                    queue.push_back(idx);
                }
                return true;
            });
            if (res.state_limited) return res;
        }
    }
    return res;
}

// The event steps leading from the initial state to `state` (state 0 gives
// an empty trace).
inline std::vector<TraceStep> trace_to(const ExploreResult& res, std::size_t state) {
    std::vector<TraceStep> steps;
    for (std::int64_t i = (std::int64_t)state; res.parent[(std::size_t)i] >= 0;
         i = res.parent[(std::size_t)i])
        steps.push_back(res.incoming[(std::size_t)i]);
    std::vector<TraceStep> forward(steps.rbegin(), steps.rend());
    return forward;
}

// Re-execute a trace from the initial state: every step's guards must hold
// under the recorded parameters, and after the final step the named invariant
// must evaluate to false.  Returns false on any mismatch.
inline bool replay_trace(const MachineDef& m,
                         const std::map<std::string, Value>& constants,
                         const std::vector<TraceStep>& steps,
                         const std::string& violated_invariant,
                         const UniverseConfig& cfg) {
    EvalCtx ctx{&cfg, nullptr};
    MachineState state;
    try {
        state = initial_state(m, constants, cfg);
        for (const auto& step : steps) {
            const EventDef* ev = nullptr;
            for (const auto& e : m.events)
                if (e.name == step.event) { ev = &e; break; }
            if (!ev) return false;
            if (step.params.size() != ev->params.size()) return false;
            Bindings locals = explore_detail::state_bindings(state);
            for (const auto& b : step.params) locals.push_back(b);
            Env env{&constants, &locals};
            for (const auto& g : ev->guards)
                if (!eval_filter(*g.pred, env, ctx)) return false;
            state = explore_detail::apply_actions(*ev, state, env, ctx);
        }
        Bindings locals = explore_detail::state_bindings(state);
        Env env{&constants, &locals};
        const Labeled* inv = nullptr;
        for (const auto& i : m.invariants)
            if (i.label == violated_invariant) { inv = &i; break; }
        if (!inv) return false;
        try {
            return !eval_pred(*inv->pred, env, ctx);
        } catch (const EvalError&) {
            return false;  // ghost or hard error: not a definite violation
        }
    } catch (const EvalError&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Constant resolution for exploration: the axioms of the seen contexts must
// determine every constant uniquely (the definitional workflow).
// ---------------------------------------------------------------------------

inline std::map<std::string, Value> resolve_constants(const FlatContext& flat,
                                                      const std::map<std::string, Value>& fixed,
                                                      const UniverseConfig& cfg) {
    std::map<std::string, Value> env = fixed;
    // Named atoms are globally visible.
    for (const auto& [carrier, spec] : cfg.carriers)
        for (std::int64_t i = 0;
             i < (std::int64_t)spec.atom_names.size() && i < spec.size; ++i)
            env.emplace(spec.atom_names[(std::size_t)i],
                        Value::of_atom(Atom{carrier, (std::int32_t)i,
                                            spec.atom_names[(std::size_t)i]}));
    // Every configured carrier set materializes up front (machine invariants
    // and guards may reference carriers no axiom mentions); a carrier without
    // a configured size is only an error if an axiom needs it.
    std::set<std::string> mentioned;
    for (const auto& ax : flat.axioms)
        for (const auto& f : free_idents(*ax.pred)) mentioned.insert(f);
    for (const auto& s : flat.sets) {
        if (env.count(s)) continue;
        if (cfg.carriers.count(s) || mentioned.count(s))
            env.emplace(s, carrier_atoms(s, cfg));
    }

    std::set<std::string> targets;
    for (const auto& c : flat.constants)
        if (!env.count(c)) targets.insert(c);
    if (targets.empty()) return env;

    std::vector<PredPtr> conjuncts;
    for (const auto& ax : flat.axioms) flatten_conj(ax.pred, conjuncts);
    Plan plan = build_plan(conjuncts, targets);

    EnumBudget budget{0, cfg.enum_limit};
    EvalCtx ctx{&cfg, &budget};
    Bindings locals;
    Env plan_env{&env, &locals};
    std::vector<Bindings> solutions;
    enumerate_plan(plan, plan_env, ctx, [&]() -> bool {
        solutions.push_back(locals);
        return solutions.size() < 2;
    });
    if (solutions.empty())
        throw EvalError{EvalErrorKind::Unresolved,
                        "the axioms are unsatisfiable within the configured bounds; "
                        "no constant assignment exists",
                        {}};
    if (solutions.size() > 1)
        throw EvalError{EvalErrorKind::Unresolved,
                        "the axioms do not determine the constants uniquely; "
                        "exploration requires definitional axioms",
                        {}};
    for (auto& [name, value] : solutions[0]) env[name] = std::move(value);
    return env;
}

}  // namespace ebadt
