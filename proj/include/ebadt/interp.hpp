#pragma once

// Bounded evaluation.
//
// Values live in a finite universe: integers are enumerated over
// [int_min, int_max], carrier sets over a configured number of atoms.
// Arithmetic is exact (no wrap-around), so evaluation can produce values
// whose integer leaves fall outside the configured range; such values are
// called *out-of-universe* ("ghost") values.  Claims are relativized to the
// universe:
//
//   * function-class checks (f : A --> B and friends) skip pairs containing
//     an out-of-universe component when checking inclusion in A ** B and
//     injectivity; every pair still counts for functionality and domain
//     coverage;
//   * a quantifier / comprehension instance whose evaluation fails with a
//     function application to an out-of-universe argument is skipped (it
//     contributes "true" to a universal, "false" to an existential, and no
//     element to a comprehension);
//   * an application failure on an in-universe argument propagates and makes
//     the surrounding check "unsupported".
//
// Quantified predicates are evaluated by enumeration.  `! xs . A => B`
// requires every bound variable to be produced by a generator atom in A:
// a membership whose left-hand side is a (possibly nested) maplet of
// identifiers, a function-class typing, or a definitional equation.  The
// same binder-plan machinery drives `# xs . P`, comprehensions, and the
// obligation checker.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ebadt/ast.hpp"
#include "ebadt/printer.hpp"
#include "ebadt/value.hpp"

namespace ebadt {

// ---------------------------------------------------------------------------
// Universe configuration
// ---------------------------------------------------------------------------

struct CarrierSpec {
    std::int64_t size = 0;
    std::vector<std::string> atom_names;  // optional display names (--set S={A,B,C})
};

struct UniverseConfig {
    std::int64_t int_min = -3;
    std::int64_t int_max = 5;
    std::map<std::string, CarrierSpec> carriers;
    // Largest base set POW / function-space / relation-space enumeration accepts.
    std::size_t power_limit = 20;
    // Maximum candidate bindings examined by one check before giving up.
    std::uint64_t enum_limit = 50'000'000;
    // Maximum states the explorer visits.
    std::size_t state_limit = 100'000;
    unsigned jobs = 1;
};

// ---------------------------------------------------------------------------
// Evaluation errors
// ---------------------------------------------------------------------------

enum class EvalErrorKind {
    AppOutsideDomain,   // f(x) where x is not in dom(f); carries x
    AppNotFunction,     // f(x) where f maps x to several values / has non-pairs
    TypeConfusion,      // operator applied to a value of the wrong kind
    UniverseTooLarge,   // enumeration would exceed power_limit
    EnumLimit,          // enumeration exceeded enum_limit bindings
    UnsupportedQuantifier,  // no generator for a bound variable
    Unresolved,         // identifier has no value
    CyclicDefinition,   // definitional axioms form a cycle
};

struct EvalError {
    EvalErrorKind kind;
    std::string message;
    Value offending;  // AppOutsideDomain: the argument applied outside the domain
};

inline const char* to_string(EvalErrorKind k) {
    switch (k) {
        case EvalErrorKind::AppOutsideDomain: return "application-outside-domain";
        case EvalErrorKind::AppNotFunction: return "application-not-a-function";
        case EvalErrorKind::TypeConfusion: return "type-confusion";
        case EvalErrorKind::UniverseTooLarge: return "universe-too-large";
        case EvalErrorKind::EnumLimit: return "enumeration-limit";
        case EvalErrorKind::UnsupportedQuantifier: return "unsupported-quantifier";
        case EvalErrorKind::Unresolved: return "unresolved-identifier";
        case EvalErrorKind::CyclicDefinition: return "cyclic-definition";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Environments: a shared root map plus a stack of local bindings.
// ---------------------------------------------------------------------------

using Bindings = std::vector<std::pair<std::string, Value>>;

struct Env {
    const std::map<std::string, Value>* root = nullptr;
    Bindings* locals = nullptr;

    const Value* lookup(const std::string& name) const {
        if (locals) {
            for (auto it = locals->rbegin(); it != locals->rend(); ++it)
                if (it->first == name) return &it->second;
        }
        if (root) {
            auto it = root->find(name);
            if (it != root->end()) return &it->second;
        }
        return nullptr;
    }
};

// Enumeration budget shared across one check.
struct EnumBudget {
    std::uint64_t used = 0;
    std::uint64_t limit = 0;  // 0 = unlimited
    void tick(std::uint64_t n = 1) {
        used += n;
        if (limit != 0 && used > limit)
            throw EvalError{EvalErrorKind::EnumLimit,
                            "gave up after examining " + std::to_string(used) +
                                " candidate bindings (limit " + std::to_string(limit) + ")",
                            {}};
    }
};

struct EvalCtx {
    const UniverseConfig* cfg;
    EnumBudget* budget = nullptr;  // optional
    void tick(std::uint64_t n = 1) const { if (budget) budget->tick(n); }
};

// ---------------------------------------------------------------------------
// The universe membership test for the bounded-claim semantics
// ---------------------------------------------------------------------------

inline bool in_universe(const Value& v, const UniverseConfig& cfg) {
    if (v.is_int()) return v.as_int() >= cfg.int_min && v.as_int() <= cfg.int_max;
    if (v.is_pair()) return in_universe(v.first(), cfg) && in_universe(v.second(), cfg);
    if (v.is_set()) {
        for (const auto& e : v.elements())
            if (!in_universe(e, cfg)) return false;
        return true;
    }
    return true;  // bools and atoms are always in the universe
}

// True when `err` is an application error whose offending argument lies
// outside the universe — the exemption the bounded-claim semantics grants.
inline bool is_ghost_error(const EvalError& err, const UniverseConfig& cfg) {
    return err.kind == EvalErrorKind::AppOutsideDomain && err.offending.valid() &&
           !in_universe(err.offending, cfg);
}

// ---------------------------------------------------------------------------
// Carrier materialization
// ---------------------------------------------------------------------------

inline Value carrier_atoms(const std::string& name, const UniverseConfig& cfg) {
    auto it = cfg.carriers.find(name);
    if (it == cfg.carriers.end())
        throw EvalError{EvalErrorKind::Unresolved,
                        "carrier set '" + name +
                            "' has no configured size; pass --set " + name +
                            "=<k> or --set " + name + "={a,b,c}",
                        {}};
    const CarrierSpec& spec = it->second;
    std::vector<Value> atoms;
    atoms.reserve((std::size_t)spec.size);
    for (std::int64_t i = 0; i < spec.size; ++i) {
        std::string display = i < (std::int64_t)spec.atom_names.size()
                                  ? spec.atom_names[(std::size_t)i]
                                  : name + "!" + std::to_string(i);
        atoms.push_back(Value::of_atom(Atom{name, (std::int32_t)i, std::move(display)}));
    }
    return Value::set(std::move(atoms));
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

Value eval_expr(const Expr& e, const Env& env, const EvalCtx& ctx);
bool eval_pred(const Pred& p, const Env& env, const EvalCtx& ctx);

namespace interp_detail {

[[noreturn]] inline void type_confusion(const std::string& what, const Expr& e) {
    throw EvalError{EvalErrorKind::TypeConfusion,
                    what + " in '" + to_string(e) + "'", {}};
}

inline const std::vector<Value>& need_set(const Value& v, const std::string& what,
                                          const Expr& e) {
    if (!v.is_set()) type_confusion(what + " requires a set operand", e);
    return v.elements();
}

inline Value eval_builtin(BuiltinSet b, const EvalCtx& ctx) {
    const auto& cfg = *ctx.cfg;
    switch (b) {
        case BuiltinSet::Bool:
            return Value::set({Value::of_bool(false), Value::of_bool(true)});
        case BuiltinSet::Int:
        case BuiltinSet::Nat: {
            std::int64_t lo = b == BuiltinSet::Nat ? std::max<std::int64_t>(0, cfg.int_min)
                                                   : cfg.int_min;
            std::int64_t hi = cfg.int_max;
            std::vector<Value> out;
            for (std::int64_t i = lo; i <= hi; ++i) out.push_back(Value::of_int(i));
            return Value::set_sorted(std::move(out));
        }
    }
    return Value::empty_set();
}

inline Value eval_interval(std::int64_t lo, std::int64_t hi, const EvalCtx& ctx) {
    if (lo > hi) return Value::empty_set();
    if (hi - lo + 1 > 1'000'000)
        throw EvalError{EvalErrorKind::UniverseTooLarge,
                        "interval " + std::to_string(lo) + " .. " + std::to_string(hi) +
                            " is too large to materialize",
                        {}};
    ctx.tick((std::uint64_t)(hi - lo + 1));
    std::vector<Value> out;
    out.reserve((std::size_t)(hi - lo + 1));
    for (std::int64_t i = lo; i <= hi; ++i) out.push_back(Value::of_int(i));
    return Value::set_sorted(std::move(out));
}

inline Value eval_pow(const Value& base, const EvalCtx& ctx, const Expr& site) {
    const auto& elems = base.elements();
    if (elems.size() > ctx.cfg->power_limit)
        throw EvalError{EvalErrorKind::UniverseTooLarge,
                        "POW over " + std::to_string(elems.size()) +
                            " elements exceeds the " + std::to_string(ctx.cfg->power_limit) +
                            "-element bound in '" + to_string(site) + "'",
                        {}};
    std::size_t n = elems.size();
    std::vector<Value> subsets;
    subsets.reserve((std::size_t)1 << n);
    ctx.tick((std::uint64_t)1 << n);
    for (std::uint64_t mask = 0; mask < ((std::uint64_t)1 << n); ++mask) {
        std::vector<Value> members;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & ((std::uint64_t)1 << i)) members.push_back(elems[i]);
        subsets.push_back(Value::set_sorted(std::move(members)));
    }
    return Value::set(std::move(subsets));
}

// Enumerate a function-space expression into an explicit set of functions.
Value eval_fun_space(const Expr& e, const Env& env, const EvalCtx& ctx);

}  // namespace interp_detail

// The ghost-aware function-class membership check.
inline bool check_fun_class(const Value& f, const Value& domain, const Value& codomain,
                            FunClass cls, const EvalCtx& ctx) {
    const UniverseConfig& cfg = *ctx.cfg;
    if (!f.is_set()) return false;  // not even a relation
    const auto& pairs = f.elements();

    for (const auto& p : pairs)
        if (!p.is_pair()) return false;

    // Functionality (over all pairs, ghosts included): canonical order groups
    // equal firsts adjacently.
    if (cls != FunClass::Relation) {
        for (std::size_t i = 1; i < pairs.size(); ++i)
            if (pairs[i].first() == pairs[i - 1].first()) return false;
    }

    // Inclusion in domain ** codomain, restricted to in-universe pairs.
    const auto& dom_elems = domain.elements();
    const auto& cod_elems = codomain.elements();
    for (const auto& p : pairs) {
        if (!in_universe(p, cfg)) continue;
        if (!set_contains(dom_elems, p.first())) return false;
        if (!set_contains(cod_elems, p.second())) return false;
    }

    if (cls == FunClass::Partial) {
        // dom(f) within the universe must stay inside `domain`.
        for (const auto& p : pairs) {
            if (!in_universe(p.first(), cfg)) continue;
            if (!set_contains(dom_elems, p.first())) return false;
        }
    }

    if (cls == FunClass::Total || cls == FunClass::TotalInjective) {
        // Every element of `domain` must be mapped; ghost-imaged pairs still
        // witness coverage of their (in-universe) argument.
        for (const auto& d : dom_elems) {
            bool covered = false;
            for (const auto& p : pairs)
                if (p.first() == d) { covered = true; break; }
            if (!covered) return false;
        }
    }

    if (cls == FunClass::TotalInjective) {
        // Injectivity over pairs whose image is in the universe.
        std::vector<Value> images;
        for (const auto& p : pairs) {
            if (!in_universe(p.second(), cfg)) continue;
            images.push_back(p.second());
        }
        std::sort(images.begin(), images.end());
        for (std::size_t i = 1; i < images.size(); ++i)
            if (images[i] == images[i - 1]) return false;
    }

    return true;
}

// ---------------------------------------------------------------------------
// Binder plans
// ---------------------------------------------------------------------------

// Flatten a conjunction into its conjunct list.
inline void flatten_conj(const PredPtr& p, std::vector<PredPtr>& out) {
    if (p->kind == PredKind::And) {
        flatten_conj(p->p1, out);
        flatten_conj(p->p2, out);
    } else {
        out.push_back(p);
    }
}

struct PlanStep {
    enum class Kind { Member, FunSpace, Def } kind;

    // Member: iterate `source`, destructuring each element against `pattern`
    // (left-associated maplet leaves).  A leaf that names an unbound target
    // binds it; any other leaf is an equality constraint.
    std::vector<std::string> pattern;
    std::vector<bool> leaf_binds;  // parallel to pattern
    ExprPtr source;

    // FunSpace: enumerate candidate function values for `var`.
    std::string var;
    FunClass cls = FunClass::Total;
    ExprPtr dom, cod;
    ExprPtr pinned_dom;  // non-null: enumerate total maps over this set instead

    // Def: bind `var` to the value of `def`.
    ExprPtr def;

    // Conjuncts that become checkable once this step has bound its variables.
    std::vector<PredPtr> filters;
};

struct Plan {
    std::vector<PredPtr> pre_filters;  // checkable before any step
    std::vector<PlanStep> steps;
};

namespace interp_detail {

inline bool contains_unbound(const std::set<std::string>& free,
                             const std::set<std::string>& unbound) {
    for (const auto& n : free)
        if (unbound.count(n)) return true;
    return false;
}

// Collect the maplet-leaf identifiers of `e` left-to-right; false when some
// leaf is not an identifier.
inline bool maplet_leaves(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == ExprKind::Maplet)
        return maplet_leaves(*e.left, out) && maplet_leaves(*e.right, out);
    if (e.kind == ExprKind::Ident) {
        out.push_back(e.name);
        return true;
    }
    return false;
}

}  // namespace interp_detail

// Build an enumeration plan that produces every assignment of `targets`
// satisfying `conjuncts` (with the bounded-claim exemptions).  Throws
// UnsupportedQuantifier when some target has no generator.
inline Plan build_plan(const std::vector<PredPtr>& conjuncts,
                       const std::set<std::string>& targets) {
    using interp_detail::contains_unbound;
    Plan plan;
    std::set<std::string> unbound = targets;
    std::vector<bool> used(conjuncts.size(), false);
    std::vector<bool> filtered(conjuncts.size(), false);

    // Conjuncts whose identifiers are already free of targets filter up front.
    auto place_filters = [&](std::vector<PredPtr>& sink) {
        for (std::size_t i = 0; i < conjuncts.size(); ++i) {
            if (used[i] || filtered[i]) continue;
            if (!contains_unbound(free_idents(*conjuncts[i]), unbound)) {
                sink.push_back(conjuncts[i]);
                filtered[i] = true;
            }
        }
    };
    place_filters(plan.pre_filters);

    // Generator preference within one pass: a definitional equation binds a
    // single value (cheapest), memberships iterate one set, function-space
    // enumeration is the most expensive and goes innermost-last.
    enum class Gen { Def, Member, FunSpace };

    while (!unbound.empty()) {
        bool progress = false;
        for (Gen prefer : {Gen::Def, Gen::Member, Gen::FunSpace}) {
        if (progress) break;
        for (std::size_t i = 0; i < conjuncts.size() && !progress; ++i) {
            if (used[i] || filtered[i]) continue;
            const Pred& c = *conjuncts[i];

            // Membership generator: `pattern : source`.
            if (prefer == Gen::Member && c.kind == PredKind::Member) {
                std::vector<std::string> leaves;
                if (interp_detail::maplet_leaves(*c.e1, leaves) &&
                    !contains_unbound(free_idents(*c.e2), unbound)) {
                    std::vector<bool> binds;
                    bool any_bind = false;
                    std::set<std::string> bound_here;
                    for (const auto& leaf : leaves) {
                        bool b = unbound.count(leaf) && !bound_here.count(leaf);
                        binds.push_back(b);
                        if (b) { bound_here.insert(leaf); any_bind = true; }
                    }
                    if (any_bind) {
                        PlanStep step;
                        step.kind = PlanStep::Kind::Member;
                        step.pattern = std::move(leaves);
                        step.leaf_binds = std::move(binds);
                        step.source = c.e2;
                        plan.steps.push_back(std::move(step));
                        for (const auto& n : bound_here) unbound.erase(n);
                        used[i] = true;
                        progress = true;
                    }
                }
            }

            // Function-space generator: `v : D cls C` with v an unbound target.
            if (prefer == Gen::FunSpace && !progress && c.kind == PredKind::FunClassP &&
                c.e1->kind == ExprKind::Ident && unbound.count(c.e1->name) &&
                !contains_unbound(free_idents(*c.e2), unbound) &&
                !contains_unbound(free_idents(*c.e3), unbound)) {
                PlanStep step;
                step.kind = PlanStep::Kind::FunSpace;
                step.var = c.e1->name;
                step.cls = c.fun_class;
                step.dom = c.e2;
                step.cod = c.e3;
                // Domain pin: a conjunct `dom(v) = E` (either side) fixes the
                // set of arguments, shrinking the candidate space to total
                // maps over E.  The typing conjunct is kept as a filter.
                for (std::size_t j = 0; j < conjuncts.size(); ++j) {
                    if (used[j] || filtered[j] || j == i) continue;
                    const Pred& d = *conjuncts[j];
                    if (d.kind != PredKind::Equal) continue;
                    const ExprPtr* dom_side = nullptr;
                    const ExprPtr* val_side = nullptr;
                    if (d.e1->kind == ExprKind::Unary && d.e1->un_op == UnOp::Dom &&
                        d.e1->left->kind == ExprKind::Ident && d.e1->left->name == step.var) {
                        dom_side = &d.e1; val_side = &d.e2;
                    } else if (d.e2->kind == ExprKind::Unary && d.e2->un_op == UnOp::Dom &&
                               d.e2->left->kind == ExprKind::Ident &&
                               d.e2->left->name == step.var) {
                        dom_side = &d.e2; val_side = &d.e1;
                    }
                    if (!dom_side) continue;
                    if (contains_unbound(free_idents(**val_side), unbound)) continue;
                    step.pinned_dom = *val_side;
                    used[j] = true;  // satisfied by construction
                    break;
                }
                bool pinned = step.pinned_dom != nullptr;
                plan.steps.push_back(std::move(step));
                unbound.erase(c.e1->name);
                if (pinned) {
                    // Enumerating total maps over the pinned domain
                    // over-approximates the typing conjunct; keep it as a filter.
                    plan.steps.back().filters.push_back(conjuncts[i]);
                }
                used[i] = true;
                progress = true;
            }

            // Definitional generator: `v = E` with v an unbound target.
            if (prefer == Gen::Def && !progress && c.kind == PredKind::Equal) {
                const ExprPtr* var_side = nullptr;
                const ExprPtr* val_side = nullptr;
                if (c.e1->kind == ExprKind::Ident && unbound.count(c.e1->name)) {
                    var_side = &c.e1; val_side = &c.e2;
                } else if (c.e2->kind == ExprKind::Ident && unbound.count(c.e2->name)) {
                    var_side = &c.e2; val_side = &c.e1;
                }
                if (var_side && !contains_unbound(free_idents(**val_side), unbound)) {
                    PlanStep step;
                    step.kind = PlanStep::Kind::Def;
                    step.var = (*var_side)->name;
                    step.def = *val_side;
                    plan.steps.push_back(std::move(step));
                    unbound.erase((*var_side)->name);
                    used[i] = true;
                    progress = true;
                }
            }
        }

        }

        if (!progress) {
            // Distinguish a definitional cycle (every stuck name sits on the
            // identifier side of some unused equation) from a missing generator.
            bool all_def_shaped = true;
            for (const auto& var : unbound) {
                bool has_def = false;
                for (std::size_t i = 0; i < conjuncts.size() && !has_def; ++i) {
                    if (used[i] || filtered[i]) continue;
                    const Pred& c = *conjuncts[i];
                    if (c.kind == PredKind::Equal &&
                        ((c.e1->kind == ExprKind::Ident && c.e1->name == var) ||
                         (c.e2->kind == ExprKind::Ident && c.e2->name == var)))
                        has_def = true;
                }
                if (!has_def) { all_def_shaped = false; break; }
            }
            std::string names;
            for (const auto& var : unbound) names += (names.empty() ? "'" : ", '") + var + "'";
            if (all_def_shaped)
                throw EvalError{EvalErrorKind::CyclicDefinition,
                                "the definitions of " + names + " form a cycle", {}};
            throw EvalError{EvalErrorKind::UnsupportedQuantifier,
                            "cannot enumerate bound variable " + names +
                                ": no membership, function-class or definitional atom "
                                "determines it",
                            {}};
        }
        if (!plan.steps.empty()) place_filters(plan.steps.back().filters);
    }

    // Anything left over (conjuncts mentioning no target at stage 0 were
    // already placed; the rest attach to the last step).
    std::vector<PredPtr>& sink = plan.steps.empty() ? plan.pre_filters
                                                    : plan.steps.back().filters;
    for (std::size_t i = 0; i < conjuncts.size(); ++i)
        if (!used[i] && !filtered[i]) sink.push_back(conjuncts[i]);

    return plan;
}

// ---------------------------------------------------------------------------
// Plan execution
// ---------------------------------------------------------------------------

// A hypothesis filter is true, false, or fails with an application error on
// an out-of-universe value — which excludes the candidate binding.
inline bool eval_filter(const Pred& p, const Env& env, const EvalCtx& ctx) {
    try {
        return eval_pred(p, env, ctx);
    } catch (const EvalError& err) {
        if (is_ghost_error(err, *ctx.cfg)) return false;
        throw;
    }
}

namespace interp_detail {

// Destructure `v` against `n` left-associated maplet leaves, collecting leaf
// values left-to-right.  Returns false when the pair shape does not match.
inline bool destructure(const Value& v, std::size_t n, std::vector<Value>& out) {
    if (n == 1) {
        out.push_back(v);
        return true;
    }
    if (!v.is_pair()) return false;
    if (!destructure(v.first(), n - 1, out)) return false;
    out.push_back(v.second());
    return true;
}

// Enumerate candidate functions as sets of pairs over dom_elems ** cod_elems.
// `emit` returns false to abort enumeration early.
inline bool enumerate_function_space(const std::vector<Value>& dom_elems,
                                     const std::vector<Value>& cod_elems, FunClass cls,
                                     bool pinned, const EvalCtx& ctx,
                                     const std::function<bool(Value)>& emit) {
    // The odometer classes below materialize nothing (candidates stream one
    // at a time and the enumeration budget bounds their count), so only the
    // relation class — whose bitmask ranges over all dom ** cod cells — is
    // subject to the power limit.
    std::size_t n = dom_elems.size();
    if (pinned) cls = FunClass::Total;  // total maps over the pinned domain

    if (cls == FunClass::Relation) {
        const std::size_t limit = std::min<std::size_t>(ctx.cfg->power_limit, 62);
        std::size_t cells = n * cod_elems.size();
        if (n != 0 && (cells / n != cod_elems.size() || cells > limit))
            throw EvalError{EvalErrorKind::UniverseTooLarge,
                            "relation-space enumeration over " +
                                std::to_string(dom_elems.size()) + " ** " +
                                std::to_string(cod_elems.size()) +
                                " pairs exceeds the " + std::to_string(limit) +
                                "-cell bound",
                            {}};
        for (std::uint64_t mask = 0; mask < ((std::uint64_t)1 << cells); ++mask) {
            ctx.tick();
            std::vector<Value> pairs;
            std::size_t bit = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < cod_elems.size(); ++j, ++bit)
                    if (mask & ((std::uint64_t)1 << bit))
                        pairs.push_back(Value::pair(dom_elems[i], cod_elems[j]));
            if (!emit(Value::set(std::move(pairs)))) return false;
        }
        return true;
    }

    // Odometer over per-argument choices.  Total: each digit picks a codomain
    // element.  Partial: one extra "absent" choice per digit.  Total
    // injective: digits must be pairwise distinct.
    std::size_t base = cod_elems.size() + (cls == FunClass::Partial ? 1 : 0);
    if (n == 0) {
        ctx.tick();
        return emit(Value::empty_set());
    }
    // Empty codomain with a non-empty domain: no total maps exist (partial
    // classes have base 1 and emit the empty function below).
    if (base == 0) return true;

    std::vector<std::size_t> digit(n, 0);
    for (;;) {
        bool ok = true;
        if (cls == FunClass::TotalInjective) {
            for (std::size_t i = 0; i < n && ok; ++i)
                for (std::size_t j = i + 1; j < n && ok; ++j)
                    if (digit[i] == digit[j]) ok = false;
        }
        if (ok) {
            ctx.tick();
            std::vector<Value> pairs;
            pairs.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (cls == FunClass::Partial && digit[i] == cod_elems.size()) continue;
                pairs.push_back(Value::pair(dom_elems[i], cod_elems[digit[i]]));
            }
            if (!emit(Value::set(std::move(pairs)))) return false;
        } else {
            ctx.tick();
        }
        std::size_t k = 0;
        while (k < n) {
            if (++digit[k] < base) break;
            digit[k] = 0;
            ++k;
        }
        if (k == n) return true;
    }
}

}  // namespace interp_detail

// Run `plan`, invoking `leaf` for every assignment of the targets that
// satisfies all conjuncts.  `leaf` returns false to stop the search; the
// function returns false iff the search was stopped.
inline bool enumerate_plan(const Plan& plan, const Env& env, const EvalCtx& ctx,
                           const std::function<bool()>& leaf) {
    for (const auto& f : plan.pre_filters)
        if (!eval_filter(*f, env, ctx)) return true;  // no solutions at all

    std::function<bool(std::size_t)> run = [&](std::size_t step_idx) -> bool {
        if (step_idx == plan.steps.size()) {
            ctx.tick();
            return leaf();
        }
        const PlanStep& step = plan.steps[step_idx];

        auto with_filters = [&]() -> bool {
            for (const auto& f : step.filters)
                if (!eval_filter(*f, env, ctx)) return true;  // prune this branch
            return run(step_idx + 1);
        };

        switch (step.kind) {
            case PlanStep::Kind::Def: {
                Value v = eval_expr(*step.def, env, ctx);
                env.locals->emplace_back(step.var, std::move(v));
                bool cont = with_filters();
                env.locals->pop_back();
                return cont;
            }
            case PlanStep::Kind::Member: {
                Value source = eval_expr(*step.source, env, ctx);
                if (!source.is_set())
                    throw EvalError{EvalErrorKind::TypeConfusion,
                                    "membership generator requires a set, got '" +
                                        to_string(source) + "'",
                                    {}};
                for (const Value& elem : source.elements()) {
                    ctx.tick();
                    std::vector<Value> leaves;
                    if (!interp_detail::destructure(elem, step.pattern.size(), leaves))
                        continue;
                    std::size_t pushed = 0;
                    bool match = true;
                    for (std::size_t i = 0; i < leaves.size() && match; ++i) {
                        if (step.leaf_binds[i]) {
                            env.locals->emplace_back(step.pattern[i], leaves[i]);
                            ++pushed;
                        } else {
                            const Value* existing = env.lookup(step.pattern[i]);
                            if (!existing)
                                throw EvalError{EvalErrorKind::Unresolved,
                                                "identifier '" + step.pattern[i] +
                                                    "' has no value",
                                                {}};
                            if (*existing != leaves[i]) match = false;
                        }
                    }
                    bool cont = match ? with_filters() : true;
                    for (std::size_t i = 0; i < pushed; ++i) env.locals->pop_back();
                    if (!cont) return false;
                }
                return true;
            }
            case PlanStep::Kind::FunSpace: {
                const ExprPtr& dom_expr = step.pinned_dom ? step.pinned_dom : step.dom;
                Value dom_val = eval_expr(*dom_expr, env, ctx);
                Value cod_val = eval_expr(*step.cod, env, ctx);
                if (!dom_val.is_set() || !cod_val.is_set())
                    throw EvalError{EvalErrorKind::TypeConfusion,
                                    "function-space generator for '" + step.var +
                                        "' requires set domain and codomain",
                                    {}};
                bool finished = interp_detail::enumerate_function_space(
                    dom_val.elements(), cod_val.elements(), step.cls,
                    step.pinned_dom != nullptr, ctx, [&](Value f) -> bool {
                        env.locals->emplace_back(step.var, std::move(f));
                        bool cont = with_filters();
                        env.locals->pop_back();
                        return cont;
                    });
                return finished;
            }
        }
        return true;
    };
    return run(0);
}

// ---------------------------------------------------------------------------
// eval_expr / eval_pred
// ---------------------------------------------------------------------------

namespace interp_detail {

inline Value eval_fun_space(const Expr& e, const Env& env, const EvalCtx& ctx) {
    Value dom_val = eval_expr(*e.left, env, ctx);
    Value cod_val = eval_expr(*e.right, env, ctx);
    if (!dom_val.is_set() || !cod_val.is_set())
        type_confusion("function space requires set domain and codomain", e);
    std::vector<Value> out;
    enumerate_function_space(dom_val.elements(), cod_val.elements(), e.fun_class,
                             /*pinned=*/false, ctx, [&](Value f) {
                                 out.push_back(std::move(f));
                                 return true;
                             });
    return Value::set(std::move(out));
}

}  // namespace interp_detail

inline Value eval_expr(const Expr& e, const Env& env, const EvalCtx& ctx) {
    using namespace interp_detail;
    switch (e.kind) {
        case ExprKind::IntLit: return Value::of_int(e.int_value);
        case ExprKind::BoolLit: return Value::of_bool(e.bool_value);
        case ExprKind::Builtin: return eval_builtin(e.builtin, ctx);
        case ExprKind::Ident: {
            if (const Value* v = env.lookup(e.name)) return *v;
            throw EvalError{EvalErrorKind::Unresolved,
                            "identifier '" + e.name + "' has no value", {}};
        }
        case ExprKind::Maplet:
            return Value::pair(eval_expr(*e.left, env, ctx), eval_expr(*e.right, env, ctx));
        case ExprKind::SetExt: {
            std::vector<Value> elems;
            elems.reserve(e.elements.size());
            for (const auto& el : e.elements) elems.push_back(eval_expr(*el, env, ctx));
            return Value::set(std::move(elems));
        }
        case ExprKind::Interval: {
            Value lo = eval_expr(*e.left, env, ctx);
            Value hi = eval_expr(*e.right, env, ctx);
            if (!lo.is_int() || !hi.is_int())
                type_confusion("interval bounds must be integers", e);
            return eval_interval(lo.as_int(), hi.as_int(), ctx);
        }
        case ExprKind::Unary: {
            Value v = eval_expr(*e.left, env, ctx);
            switch (e.un_op) {
                case UnOp::Pow: {
                    need_set(v, "POW", e);
                    return eval_pow(v, ctx, e);
                }
                case UnOp::Dom: {
                    const auto& elems = need_set(v, "dom", e);
                    std::vector<Value> firsts;
                    firsts.reserve(elems.size());
                    for (const auto& p : elems) {
                        if (!p.is_pair()) type_confusion("dom over a set with non-pairs", e);
                        firsts.push_back(p.first());
                    }
                    return Value::set(std::move(firsts));
                }
                case UnOp::Ran: {
                    const auto& elems = need_set(v, "ran", e);
                    std::vector<Value> seconds;
                    seconds.reserve(elems.size());
                    for (const auto& p : elems) {
                        if (!p.is_pair()) type_confusion("ran over a set with non-pairs", e);
                        seconds.push_back(p.second());
                    }
                    return Value::set(std::move(seconds));
                }
            }
            return Value::empty_set();
        }
        case ExprKind::Binary: {
            if (e.bin_op == BinOp::Plus || e.bin_op == BinOp::Minus) {
                Value a = eval_expr(*e.left, env, ctx);
                Value b = eval_expr(*e.right, env, ctx);
                if (!a.is_int() || !b.is_int())
                    type_confusion("arithmetic requires integer operands", e);
                return Value::of_int(e.bin_op == BinOp::Plus ? a.as_int() + b.as_int()
                                                             : a.as_int() - b.as_int());
            }
            Value a = eval_expr(*e.left, env, ctx);
            Value b = eval_expr(*e.right, env, ctx);
            switch (e.bin_op) {
                case BinOp::Union:
                    need_set(a, "union", e); need_set(b, "union", e);
                    return set_union(a, b);
                case BinOp::Inter:
                    need_set(a, "intersection", e); need_set(b, "intersection", e);
                    return set_inter(a, b);
                case BinOp::Diff:
                    need_set(a, "difference", e); need_set(b, "difference", e);
                    return set_diff(a, b);
                case BinOp::Cross: {
                    const auto& xs = need_set(a, "product", e);
                    const auto& ys = need_set(b, "product", e);
                    ctx.tick((std::uint64_t)xs.size() * (ys.empty() ? 1 : ys.size()));
                    std::vector<Value> pairs;
                    pairs.reserve(xs.size() * ys.size());
                    for (const auto& x : xs)
                        for (const auto& y : ys) pairs.push_back(Value::pair(x, y));
                    return Value::set_sorted(std::move(pairs));
                }
                case BinOp::Override: {
                    const auto& f = need_set(a, "override", e);
                    const auto& g = need_set(b, "override", e);
                    std::vector<Value> g_firsts;
                    g_firsts.reserve(g.size());
                    for (const auto& p : g) {
                        if (!p.is_pair()) type_confusion("override over non-pairs", e);
                        g_firsts.push_back(p.first());
                    }
                    Value g_dom = Value::set(std::move(g_firsts));
                    std::vector<Value> out(g.begin(), g.end());
                    for (const auto& p : f) {
                        if (!p.is_pair()) type_confusion("override over non-pairs", e);
                        if (!set_contains(g_dom.elements(), p.first())) out.push_back(p);
                    }
                    return Value::set(std::move(out));
                }
                case BinOp::DomSub: {
                    const auto& s = need_set(a, "domain subtraction", e);
                    const auto& f = need_set(b, "domain subtraction", e);
                    std::vector<Value> out;
                    for (const auto& p : f) {
                        if (!p.is_pair()) type_confusion("domain subtraction over non-pairs", e);
                        if (!set_contains(s, p.first())) out.push_back(p);
                    }
                    return Value::set_sorted(std::move(out));
                }
                case BinOp::Image: {
                    const auto& f = need_set(a, "image", e);
                    const auto& s = need_set(b, "image", e);
                    std::vector<Value> out;
                    for (const auto& p : f) {
                        if (!p.is_pair()) type_confusion("image over non-pairs", e);
                        if (set_contains(s, p.first())) out.push_back(p.second());
                    }
                    return Value::set(std::move(out));
                }
                default: break;
            }
            return Value::empty_set();
        }
        case ExprKind::Apply: {
            Value f = eval_expr(*e.left, env, ctx);
            Value x = eval_expr(*e.right, env, ctx);
            if (!f.is_set())
                throw EvalError{EvalErrorKind::AppNotFunction,
                                "'" + to_string(*e.left) + "' is not a set of pairs", {}};
            const Value* found = nullptr;
            for (const auto& p : f.elements()) {
                if (!p.is_pair())
                    throw EvalError{EvalErrorKind::AppNotFunction,
                                    "'" + to_string(*e.left) + "' contains a non-pair", {}};
                if (p.first() == x) {
                    if (found && *found != p.second())
                        throw EvalError{EvalErrorKind::AppNotFunction,
                                        "'" + to_string(*e.left) + "' maps '" +
                                            to_string(x) + "' to several values",
                                        {}};
                    found = &p.second();
                }
            }
            if (!found)
                throw EvalError{EvalErrorKind::AppOutsideDomain,
                                "'" + to_string(*e.left) + "' applied outside its domain to '" +
                                    to_string(x) + "'",
                                x};
            return *found;
        }
        case ExprKind::FunSpace: return interp_detail::eval_fun_space(e, env, ctx);
        case ExprKind::Comprehension: {
            std::vector<PredPtr> conjuncts;
            flatten_conj(e.constraint, conjuncts);
            std::set<std::string> targets(e.binders.begin(), e.binders.end());
            Plan plan = build_plan(conjuncts, targets);
            std::vector<Value> out;
            enumerate_plan(plan, env, ctx, [&]() -> bool {
                try {
                    out.push_back(eval_expr(*e.left, env, ctx));
                } catch (const EvalError& err) {
                    if (!is_ghost_error(err, *ctx.cfg)) throw;
                    // Out-of-universe instance: contributes no element.
                }
                return true;
            });
            return Value::set(std::move(out));
        }
    }
    return Value::empty_set();
}

inline bool eval_pred(const Pred& p, const Env& env, const EvalCtx& ctx) {
    switch (p.kind) {
        case PredKind::Truth: return true;
        case PredKind::Falsity: return false;
        case PredKind::Equal:
            return eval_expr(*p.e1, env, ctx) == eval_expr(*p.e2, env, ctx);
        case PredKind::NotEqual:
            return eval_expr(*p.e1, env, ctx) != eval_expr(*p.e2, env, ctx);
        case PredKind::Member:
        case PredKind::NotMember: {
            Value x = eval_expr(*p.e1, env, ctx);
            Value s = eval_expr(*p.e2, env, ctx);
            if (!s.is_set())
                throw EvalError{EvalErrorKind::TypeConfusion,
                                "membership requires a set on the right of ':' in '" +
                                    to_string(p) + "'",
                                {}};
            bool in = set_contains(s.elements(), x);
            return p.kind == PredKind::Member ? in : !in;
        }
        case PredKind::Subset: {
            Value a = eval_expr(*p.e1, env, ctx);
            Value b = eval_expr(*p.e2, env, ctx);
            if (!a.is_set() || !b.is_set())
                throw EvalError{EvalErrorKind::TypeConfusion,
                                "subset requires set operands in '" + to_string(p) + "'",
                                {}};
            return set_subset(a, b);
        }
        case PredKind::Less:
        case PredKind::LessEq: {
            Value a = eval_expr(*p.e1, env, ctx);
            Value b = eval_expr(*p.e2, env, ctx);
            if (!a.is_int() || !b.is_int())
                throw EvalError{EvalErrorKind::TypeConfusion,
                                "comparison requires integer operands in '" + to_string(p) +
                                    "'",
                                {}};
            return p.kind == PredKind::Less ? a.as_int() < b.as_int()
                                            : a.as_int() <= b.as_int();
        }
        case PredKind::FunClassP: {
            Value f = eval_expr(*p.e1, env, ctx);
            Value d = eval_expr(*p.e2, env, ctx);
            Value c = eval_expr(*p.e3, env, ctx);
            if (!d.is_set() || !c.is_set())
                throw EvalError{EvalErrorKind::TypeConfusion,
                                "function-class membership requires set domain and "
                                "codomain in '" + to_string(p) + "'",
                                {}};
            return check_fun_class(f, d, c, p.fun_class, ctx);
        }
        case PredKind::And:
            return eval_pred(*p.p1, env, ctx) && eval_pred(*p.p2, env, ctx);
        case PredKind::Or:
            return eval_pred(*p.p1, env, ctx) || eval_pred(*p.p2, env, ctx);
        case PredKind::Implies:
            return !eval_pred(*p.p1, env, ctx) || eval_pred(*p.p2, env, ctx);
        case PredKind::Not: return !eval_pred(*p.p1, env, ctx);
        case PredKind::ForAll: {
            if (p.p1->kind != PredKind::Implies)
                throw EvalError{EvalErrorKind::UnsupportedQuantifier,
                                "universal quantification must have the form "
                                "'! xs . A => B' so the bound variables can be "
                                "enumerated from A",
                                {}};
            std::vector<PredPtr> conjuncts;
            flatten_conj(p.p1->p1, conjuncts);
            std::set<std::string> targets(p.binders.begin(), p.binders.end());
            Plan plan = build_plan(conjuncts, targets);
            bool holds = true;
            enumerate_plan(plan, env, ctx, [&]() -> bool {
                try {
                    if (!eval_pred(*p.p1->p2, env, ctx)) {
                        holds = false;
                        return false;  // counterexample instance: stop
                    }
                } catch (const EvalError& err) {
                    if (!is_ghost_error(err, *ctx.cfg)) throw;
                    // Out-of-universe instance: vacuously true.
                }
                return true;
            });
            return holds;
        }
        case PredKind::Exists: {
            std::vector<PredPtr> conjuncts;
            flatten_conj(p.p1, conjuncts);
            std::set<std::string> targets(p.binders.begin(), p.binders.end());
            Plan plan = build_plan(conjuncts, targets);
            bool found = false;
            enumerate_plan(plan, env, ctx, [&]() -> bool {
                found = true;
                return false;  // witness found: stop
            });
            return found;
        }
    }
    return false;
}

}  // namespace ebadt
