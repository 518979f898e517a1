#pragma once

// Proof obligations and their bounded exhaustive discharge.
//
// Instantiation soundness: for a binding of abstract context A by concrete
// context C, every axiom (and theorem) P of A yields an obligation
//     INST/<label>:   axioms(C)  |-  P[sets := types, constants := exprs]
//
// Machine invariant preservation, for a machine seeing its contexts:
//     INIT/<inv>:          axioms |-  I[v := init(v)]
//     INV/<event>/<inv>:   axioms, invariants, guards |-  I[v := S(v)]
//
// An obligation is checked by enumerating every assignment of its
// *unresolved* identifiers (those without a value in the root environment)
// that satisfies the hypotheses, and evaluating the goal under each.  In the
// definitional workflow the concrete constants are pinned by definitional
// axioms, so there is exactly one assignment; in the enumerable workflow the
// constants range over their typing axioms and the search is a bounded
// model search.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "ebadt/ast.hpp"
#include "ebadt/instantiate.hpp"
#include "ebadt/interp.hpp"
#include "ebadt/model.hpp"
#include "ebadt/subst.hpp"
#include "ebadt/wellformed.hpp"

namespace ebadt {

enum class HypClass : std::uint8_t { Axiom, Invariant, Guard };

struct Hypothesis {
    std::string label;
    PredPtr pred;
    HypClass cls = HypClass::Axiom;
};

struct ProofObligation {
    std::string label;    // "INST/axm0_3", "INIT/trains_type", "INV/enter/collision_free"
    std::string origin;   // "axiom" | "theorem" | "invariant"
    std::vector<Hypothesis> hypotheses;
    PredPtr goal;
    std::string checked_invariant;  // machine obligations: the invariant label
    std::string event;              // INV obligations: the event name
};

enum class Verdict : std::uint8_t {
    ValidWithinBounds,
    Counterexample,
    Unsupported,
    UniverseTooLarge,
};

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::ValidWithinBounds: return "valid-within-bounds";
        case Verdict::Counterexample: return "counterexample";
        case Verdict::Unsupported: return "unsupported";
        case Verdict::UniverseTooLarge: return "universe-too-large";
    }
    return "?";
}

struct CheckResult {
    std::string label;
    Verdict verdict = Verdict::Unsupported;
    Bindings witness;                    // counterexample assignment, binding order
    std::uint64_t examined = 0;          // candidate bindings inspected
    double elapsed_ms = 0.0;
    std::string note;                    // failure reason / extra information
    std::vector<Hypothesis> hypotheses;  // exactly what was assumed (for replay)
    PredPtr goal;
};

// ---------------------------------------------------------------------------
// Obligation generation
// ---------------------------------------------------------------------------

inline std::vector<ProofObligation> instantiation_obligations(const FlatContext& abstract_ctx,
                                                              const FlatContext& concrete_ctx,
                                                              const BindingDef& binding) {
    Substitution sigma = binding_substitution(binding);
    std::vector<Hypothesis> hyps;
    for (const auto& ax : concrete_ctx.axioms)
        hyps.push_back(Hypothesis{ax.label, ax.pred, HypClass::Axiom});

    std::vector<ProofObligation> out;
    auto add = [&](const Labeled& item, const char* origin) {
        ProofObligation po;
        po.label = "INST/" + item.label;
        po.origin = origin;
        po.hypotheses = hyps;
        po.goal = substitute(item.pred, sigma);
        out.push_back(std::move(po));
    };
    for (const auto& ax : abstract_ctx.axioms) add(ax, "axiom");
    for (const auto& th : abstract_ctx.theorems) add(th, "theorem");
    return out;
}

namespace obligations_detail {

inline Substitution event_substitution(const EventDef& ev) {
    Substitution sigma;
    for (const auto& a : ev.actions) {
        if (a.index) {
            // v(i) := e  desugars to  v := v <+ {i |-> e}
            sigma[a.target] = mk::binary(
                BinOp::Override, mk::ident(a.target, a.span),
                mk::set_ext({mk::maplet(a.index, a.value, a.span)}, a.span), a.span);
        } else {
            sigma[a.target] = a.value;
        }
    }
    return sigma;
}

}  // namespace obligations_detail

inline std::vector<ProofObligation> machine_obligations(const MachineDef& m,
                                                        const Library& lib) {
    FlatContext flat = flatten_contexts(m.sees, lib, m.span);
    std::vector<Hypothesis> axiom_hyps;
    for (const auto& ax : flat.axioms)
        axiom_hyps.push_back(Hypothesis{ax.label, ax.pred, HypClass::Axiom});

    std::vector<ProofObligation> out;

    if (m.init) {
        Substitution init_sigma = obligations_detail::event_substitution(*m.init);
        for (const auto& inv : m.invariants) {
            ProofObligation po;
            po.label = "INIT/" + inv.label;
            po.origin = "invariant";
            po.checked_invariant = inv.label;
            po.hypotheses = axiom_hyps;
            po.goal = substitute(inv.pred, init_sigma);
            out.push_back(std::move(po));
        }
    }

    for (const auto& ev : m.events) {
        Substitution sigma = obligations_detail::event_substitution(ev);
        std::vector<Hypothesis> hyps = axiom_hyps;
        for (const auto& inv : m.invariants)
            hyps.push_back(Hypothesis{inv.label, inv.pred, HypClass::Invariant});
        for (const auto& g : ev.guards)
            hyps.push_back(Hypothesis{g.label, g.pred, HypClass::Guard});
        for (const auto& inv : m.invariants) {
            ProofObligation po;
            po.label = "INV/" + ev.name + "/" + inv.label;
            po.origin = "invariant";
            po.checked_invariant = inv.label;
            po.event = ev.name;
            po.hypotheses = hyps;
            po.goal = substitute(inv.pred, sigma);
            out.push_back(std::move(po));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hypothesis relevance pruning (enumerable workflow)
// ---------------------------------------------------------------------------

namespace obligations_detail {

// The name an axiom defines or types, when it has a defining shape:
//   c = E,  E = c,  c : T,  c <: T,  c : A cls B,  dom(c) = E,  E = dom(c)
inline const std::string* defined_name(const Pred& p) {
    auto ident_of = [](const ExprPtr& e) -> const std::string* {
        if (e->kind == ExprKind::Ident) return &e->name;
        if (e->kind == ExprKind::Unary && e->un_op == UnOp::Dom &&
            e->left->kind == ExprKind::Ident)
            return &e->left->name;
        return nullptr;
    };
    switch (p.kind) {
        case PredKind::Equal: {
            if (const std::string* n = ident_of(p.e1)) return n;
            return ident_of(p.e2);
        }
        case PredKind::Member:
        case PredKind::Subset:
        case PredKind::FunClassP:
            if (p.e1->kind == ExprKind::Ident) return &p.e1->name;
            return nullptr;
        default: return nullptr;
    }
}

// True for state-typing invariants: a membership / subset / function-class
// atom whose left-hand side is a variable (or maplet of variables).
inline bool is_typing_invariant(const Pred& p, const std::set<std::string>& variables) {
    if (p.kind != PredKind::Member && p.kind != PredKind::Subset &&
        p.kind != PredKind::FunClassP)
        return false;
    std::vector<std::string> leaves;
    if (!interp_detail::maplet_leaves(*p.e1, leaves)) return false;
    for (const auto& l : leaves)
        if (!variables.count(l)) return false;
    return true;
}

}  // namespace obligations_detail

// Restrict an obligation's hypotheses to those relevant to its goal, for the
// enumerable workflow:
//   * guards are kept;
//   * invariants are kept when they type a variable or are the checked one;
//   * an axiom is kept when all its identifiers are already needed, or when
//     it defines/types/pins a needed name (a fixpoint, since kept axioms can
//     need further names).
// A "valid" verdict for the pruned obligation implies the full one (fewer
// hypotheses prove a stronger statement); a counterexample is reported, and
// replayable, against exactly the pruned hypothesis list.
inline ProofObligation prune_hypotheses(const ProofObligation& po,
                                        const std::set<std::string>& variables) {
    using obligations_detail::defined_name;
    using obligations_detail::is_typing_invariant;

    ProofObligation out = po;
    out.hypotheses.clear();

    std::set<std::string> needed = free_idents(*po.goal);
    std::vector<const Hypothesis*> axioms;
    for (const auto& h : po.hypotheses) {
        switch (h.cls) {
            case HypClass::Guard:
                out.hypotheses.push_back(h);
                for (const auto& f : free_idents(*h.pred)) needed.insert(f);
                break;
            case HypClass::Invariant:
                if (h.label == po.checked_invariant ||
                    is_typing_invariant(*h.pred, variables)) {
                    out.hypotheses.push_back(h);
                    for (const auto& f : free_idents(*h.pred)) needed.insert(f);
                }
                break;
            case HypClass::Axiom:
                axioms.push_back(&h);
                break;
        }
    }

    std::vector<bool> kept(axioms.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < axioms.size(); ++i) {
            if (kept[i]) continue;
            const Pred& p = *axioms[i]->pred;
            std::set<std::string> free = free_idents(p);
            bool keep = true;
            for (const auto& f : free)
                if (!needed.count(f)) { keep = false; break; }
            if (!keep) {
                const std::string* def = defined_name(p);
                keep = def != nullptr && needed.count(*def) != 0;
            }
            if (keep) {
                kept[i] = true;
                changed = true;
                for (const auto& f : free) needed.insert(f);
            }
        }
    }

    // Rebuild in the original order: axioms first, then the kept invariants
    // and guards already collected.
    std::vector<Hypothesis> ordered;
    for (std::size_t i = 0; i < axioms.size(); ++i)
        if (kept[i]) ordered.push_back(*axioms[i]);
    for (const auto& h : out.hypotheses) ordered.push_back(h);
    out.hypotheses = std::move(ordered);
    return out;
}

// ---------------------------------------------------------------------------
// Checking
// ---------------------------------------------------------------------------

enum class TriState : std::uint8_t { True, False, Skip };

// Evaluate a goal with the bounded-claim exemption: an application error on
// an out-of-universe value makes the instance vacuous.
inline TriState eval_goal(const Pred& goal, const Env& env, const EvalCtx& ctx) {
    try {
        return eval_pred(goal, env, ctx) ? TriState::True : TriState::False;
    } catch (const EvalError& err) {
        if (is_ghost_error(err, *ctx.cfg)) return TriState::Skip;
        throw;
    }
}

// Check one obligation.  `root_env` must resolve every constant/carrier that
// should NOT be enumerated; all remaining free identifiers become enumeration
// targets driven by the hypotheses.
inline CheckResult check_obligation(const ProofObligation& po,
                                    const std::map<std::string, Value>& root_env,
                                    const UniverseConfig& cfg) {
    CheckResult res;
    res.label = po.label;
    res.hypotheses = po.hypotheses;
    res.goal = po.goal;

    auto t0 = std::chrono::steady_clock::now();
    EnumBudget budget{0, cfg.enum_limit};
    EvalCtx ctx{&cfg, &budget};
    Bindings locals;
    Env env{&root_env, &locals};

    // Targets: free identifiers with no value in the root environment.
    std::set<std::string> targets;
    auto collect = [&](const Pred& p) {
        for (const auto& f : free_idents(p))
            if (!root_env.count(f)) targets.insert(f);
    };
    for (const auto& h : po.hypotheses) collect(*h.pred);
    collect(*po.goal);

    try {
        std::vector<PredPtr> conjuncts;
        for (const auto& h : po.hypotheses) flatten_conj(h.pred, conjuncts);
        Plan plan = build_plan(conjuncts, targets);

        bool failed = false;
        enumerate_plan(plan, env, ctx, [&]() -> bool {
            switch (eval_goal(*po.goal, env, ctx)) {
                case TriState::True:
                case TriState::Skip:
                    return true;
                case TriState::False:
                    res.witness = locals;  // snapshot of the current assignment
                    failed = true;
                    return false;
            }
            return true;
        });
        res.verdict = failed ? Verdict::Counterexample : Verdict::ValidWithinBounds;
    } catch (const EvalError& err) {
        res.verdict = (err.kind == EvalErrorKind::UniverseTooLarge ||
                       err.kind == EvalErrorKind::EnumLimit)
                          ? Verdict::UniverseTooLarge
                          : Verdict::Unsupported;
        res.note = std::string(to_string(err.kind)) + ": " + err.message;
    } catch (const DiagnosticError& err) {
        res.verdict = Verdict::Unsupported;
        res.note = err.diagnostic.code + ": " + err.diagnostic.message;
    }

    res.examined = budget.used;
    res.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

// Materialize the root environment an obligation set needs: fixed values
// first (interpretation constants), then named atoms, then any carrier set
// mentioned by an obligation.
inline std::map<std::string, Value> build_root_env(
    const std::vector<ProofObligation>& pos, const std::set<std::string>& carrier_names,
    const std::map<std::string, Value>& fixed, const UniverseConfig& cfg) {
    std::map<std::string, Value> env = fixed;
    for (const auto& [carrier, spec] : cfg.carriers) {
        for (std::int64_t i = 0;
             i < (std::int64_t)spec.atom_names.size() && i < spec.size; ++i)
            env.emplace(spec.atom_names[(std::size_t)i],
                        Value::of_atom(Atom{carrier, (std::int32_t)i,
                                            spec.atom_names[(std::size_t)i]}));
    }
    std::set<std::string> mentioned;
    for (const auto& po : pos) {
        for (const auto& h : po.hypotheses)
            for (const auto& f : free_idents(*h.pred)) mentioned.insert(f);
        for (const auto& f : free_idents(*po.goal)) mentioned.insert(f);
    }
    for (const auto& name : mentioned) {
        if (env.count(name)) continue;
        if (carrier_names.count(name)) env.emplace(name, carrier_atoms(name, cfg));
    }
    return env;
}

// Check a list of obligations, optionally in parallel (each obligation is
// independent).  Results keep the input order.
inline std::vector<CheckResult> check_obligations(
    const std::vector<ProofObligation>& pos, const std::map<std::string, Value>& root_env,
    const UniverseConfig& cfg) {
    std::vector<CheckResult> results(pos.size());
    unsigned jobs = cfg.jobs == 0 ? 1 : cfg.jobs;
    if (jobs <= 1 || pos.size() <= 1) {
        for (std::size_t i = 0; i < pos.size(); ++i)
            results[i] = check_obligation(pos[i], root_env, cfg);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= pos.size()) return;
            results[i] = check_obligation(pos[i], root_env, cfg);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs && t < pos.size(); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

// ---------------------------------------------------------------------------
// Witness replay: a counterexample must make every hypothesis true and the
// goal false under the reported assignment.
// ---------------------------------------------------------------------------

inline bool replay_witness(const CheckResult& res,
                           const std::map<std::string, Value>& root_env,
                           const UniverseConfig& cfg) {
    if (res.verdict != Verdict::Counterexample || !res.goal) return false;
    EvalCtx ctx{&cfg, nullptr};
    Bindings locals = res.witness;
    Env env{&root_env, &locals};
    try {
        for (const auto& h : res.hypotheses)
            if (!eval_filter(*h.pred, env, ctx)) return false;
        return eval_goal(*res.goal, env, ctx) == TriState::False;
    } catch (const EvalError&) {
        return false;
    }
}

}  // namespace ebadt
