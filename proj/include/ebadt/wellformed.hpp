#pragma once

// Name resolution and well-formedness.
//
// A Library collects the parsed contexts and machines of all loaded files.
// Contexts are flattened through their `extends` closure (and machines
// through `sees`); carrier sets with the same name in different flattened
// contexts denote the same carrier and merge, while a constant declared
// twice is an error.  Well-formedness additionally checks label uniqueness
// and that every free identifier resolves to a declared name or a
// caller-supplied ambient identifier (e.g. named carrier atoms).

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ebadt/ast.hpp"
#include "ebadt/model.hpp"
#include "ebadt/span.hpp"

namespace ebadt {

struct Library {
    std::map<std::string, ContextDef> contexts;
    std::map<std::string, MachineDef> machines;

    void add(const ModelFile& file) {
        for (const auto& c : file.contexts) {
            if (contexts.count(c.name))
                fail("wf.duplicate-context", "context '" + c.name + "' is defined twice",
                     c.span);
            if (machines.count(c.name))
                fail("wf.duplicate-context",
                     "'" + c.name + "' is defined both as a machine and a context", c.span);
            contexts.emplace(c.name, c);
        }
        for (const auto& m : file.machines) {
            if (machines.count(m.name))
                fail("wf.duplicate-machine", "machine '" + m.name + "' is defined twice",
                     m.span);
            if (contexts.count(m.name))
                fail("wf.duplicate-machine",
                     "'" + m.name + "' is defined both as a machine and a context", m.span);
            machines.emplace(m.name, m);
        }
    }

    const ContextDef& context(const std::string& name, SourceSpan where = {}) const {
        auto it = contexts.find(name);
        if (it == contexts.end())
            fail("wf.unknown-context", "context '" + name + "' is not defined", where);
        return it->second;
    }
    const MachineDef& machine(const std::string& name, SourceSpan where = {}) const {
        auto it = machines.find(name);
        if (it == machines.end())
            fail("wf.unknown-machine", "machine '" + name + "' is not defined", where);
        return it->second;
    }
};

// The `extends` closure of a set of root contexts, dependencies first, each
// context once, in deterministic order.
inline std::vector<std::string> context_closure(const std::vector<std::string>& roots,
                                                const Library& lib,
                                                SourceSpan where = {}) {
    std::vector<std::string> order;
    std::set<std::string> done;
    std::set<std::string> visiting;
    std::function<void(const std::string&)> visit = [&](const std::string& name) {
        if (done.count(name)) return;
        if (visiting.count(name))
            fail("wf.extends-cycle", "context '" + name + "' extends itself (via a cycle)",
                 where);
        visiting.insert(name);
        const ContextDef& c = lib.context(name, where);
        for (const auto& parent : c.extends) visit(parent);
        visiting.erase(name);
        done.insert(name);
        order.push_back(name);
    };
    for (const auto& r : roots) visit(r);
    return order;
}

// A context (or a machine's `sees` list) flattened through `extends`.
struct FlatContext {
    std::vector<std::string> sets;        // deduplicated, declaration order
    std::vector<std::string> constants;
    std::vector<Labeled> axioms;          // dependencies first
    std::vector<Labeled> theorems;
    std::vector<std::string> closure;     // contributing context names

    std::set<std::string> declared_names() const {
        std::set<std::string> out(sets.begin(), sets.end());
        out.insert(constants.begin(), constants.end());
        return out;
    }
};

inline FlatContext flatten_contexts(const std::vector<std::string>& roots, const Library& lib,
                                    SourceSpan where = {}) {
    FlatContext flat;
    flat.closure = context_closure(roots, lib, where);
    std::set<std::string> seen_sets;
    std::set<std::string> seen_constants;
    for (const auto& name : flat.closure) {
        const ContextDef& c = lib.context(name, where);
        for (const auto& s : c.sets) {
            if (seen_constants.count(s))
                fail("wf.duplicate-constant",
                     "'" + s + "' is declared both as a constant and a carrier set", c.span);
            if (seen_sets.insert(s).second) flat.sets.push_back(s);
            // A carrier set of the same name in another context merges.
        }
        for (const auto& k : c.constants) {
            if (seen_sets.count(k))
                fail("wf.duplicate-constant",
                     "'" + k + "' is declared both as a constant and a carrier set", c.span);
            if (!seen_constants.insert(k).second)
                fail("wf.duplicate-constant",
                     "constant '" + k + "' is declared in several contexts", c.span);
            flat.constants.push_back(k);
        }
        for (const auto& a : c.axioms) flat.axioms.push_back(a);
        for (const auto& t : c.theorems) flat.theorems.push_back(t);
    }
    return flat;
}

namespace wf_detail {

inline void check_labels_unique(const std::vector<Labeled>& items, const std::string& what) {
    std::set<std::string> seen;
    for (const auto& it : items)
        if (!seen.insert(it.label).second)
            fail("wf.duplicate-label", what + " label '" + it.label + "' is used twice",
                 it.span);
}

inline void check_resolved(const Pred& p, const std::set<std::string>& known,
                           const std::string& where_desc, SourceSpan span) {
    for (const auto& f : free_idents(p))
        if (!known.count(f))
            fail("wf.unknown-identifier",
                 "identifier '" + f + "' in " + where_desc + " is not declared", span);
}

}  // namespace wf_detail

// Checks one context against the library (its extends closure must exist).
// `ambient` holds extra known identifiers, e.g. atom names injected by --set.
inline void check_context_wf(const ContextDef& ctx, const Library& lib,
                             const std::set<std::string>& ambient = {}) {
    FlatContext flat = flatten_contexts({ctx.name}, lib, ctx.span);
    wf_detail::check_labels_unique(flat.axioms, "axiom");
    wf_detail::check_labels_unique(flat.theorems, "theorem");
    std::set<std::string> known = flat.declared_names();
    known.insert(ambient.begin(), ambient.end());
    for (const auto& a : ctx.axioms)
        wf_detail::check_resolved(*a.pred, known, "axiom '" + a.label + "'", a.span);
    for (const auto& t : ctx.theorems)
        wf_detail::check_resolved(*t.pred, known, "theorem '" + t.label + "'", t.span);
}

// Checks a machine: sees resolution, name disjointness, labels, assignment
// targets, and identifier resolution in invariants, guards and actions.
inline void check_machine_wf(const MachineDef& m, const Library& lib,
                             const std::set<std::string>& ambient = {}) {
    FlatContext flat = flatten_contexts(m.sees, lib, m.span);
    std::set<std::string> ctx_names = flat.declared_names();

    std::set<std::string> vars;
    for (const auto& v : m.variables) {
        if (!vars.insert(v).second)
            fail("wf.duplicate-variable", "variable '" + v + "' is declared twice", m.span);
        if (ctx_names.count(v))
            fail("wf.duplicate-variable",
                 "variable '" + v + "' clashes with a name of a seen context", m.span);
    }

    wf_detail::check_labels_unique(m.invariants, "invariant");

    std::set<std::string> known = ctx_names;
    known.insert(vars.begin(), vars.end());
    known.insert(ambient.begin(), ambient.end());

    for (const auto& inv : m.invariants)
        wf_detail::check_resolved(*inv.pred, known, "invariant '" + inv.label + "'",
                                  inv.span);

    if (!m.init.has_value())
        fail("wf.missing-init", "machine '" + m.name + "' has no 'init' event", m.span);

    std::set<std::string> event_names;
    auto check_event = [&](const EventDef& ev) {
        if (!event_names.insert(ev.name).second)
            fail("wf.duplicate-event", "event '" + ev.name + "' is declared twice", ev.span);
        std::set<std::string> params;
        for (const auto& p : ev.params) {
            if (!params.insert(p).second)
                fail("wf.duplicate-parameter",
                     "parameter '" + p + "' of event '" + ev.name + "' is declared twice",
                     ev.span);
            if (known.count(p))
                fail("wf.duplicate-parameter",
                     "parameter '" + p + "' of event '" + ev.name +
                         "' clashes with a declared name",
                     ev.span);
        }
        std::set<std::string> local = known;
        local.insert(params.begin(), params.end());
        wf_detail::check_labels_unique(ev.guards, "guard");
        for (const auto& g : ev.guards)
            wf_detail::check_resolved(*g.pred, local,
                                      "guard '" + g.label + "' of event '" + ev.name + "'",
                                      g.span);
        std::set<std::string> assigned;
        for (const auto& a : ev.actions) {
            if (!vars.count(a.target))
                fail("wf.assign-unknown-variable",
                     "event '" + ev.name + "' assigns to '" + a.target +
                         "', which is not a variable",
                     a.span);
            if (!assigned.insert(a.target).second)
                fail("wf.conflicting-assignments",
                     "event '" + ev.name + "' assigns to '" + a.target + "' twice",
                     a.span);
            std::set<std::string> expr_free;
            std::set<std::string> bound;
            if (a.index) free_idents(*a.index, bound, expr_free);
            free_idents(*a.value, bound, expr_free);
            for (const auto& f : expr_free)
                if (!local.count(f))
                    fail("wf.unknown-identifier",
                         "identifier '" + f + "' in an action of event '" + ev.name +
                             "' is not declared",
                         a.span);
        }
    };
    check_event(*m.init);
    for (const auto& ev : m.events) check_event(ev);

    // init must assign every variable so the initial state is fully defined.
    std::set<std::string> init_assigned;
    for (const auto& a : m.init->actions) init_assigned.insert(a.target);
    for (const auto& v : m.variables)
        if (!init_assigned.count(v))
            fail("wf.missing-init",
                 "the 'init' event does not assign variable '" + v + "'", m.init->span);
    for (const auto& a : m.init->actions)
        if (a.index)
            fail("wf.missing-init",
                 "the 'init' event must assign whole variables, not single points",
                 a.span);
}

// Checks a binding against the library: both contexts exist, every abstract
// carrier set and constant is bound exactly once, nothing else is bound, the
// type expressions only mention concrete carriers, and constant expressions
// only mention concrete names (or ambient identifiers).
inline void check_binding_wf(const BindingDef& b, const Library& lib,
                             const std::set<std::string>& ambient = {}) {
    FlatContext abs = flatten_contexts({b.abstract_context}, lib, b.span);
    FlatContext con = flatten_contexts({b.concrete_context}, lib, b.span);

    std::set<std::string> abs_sets(abs.sets.begin(), abs.sets.end());
    std::set<std::string> abs_consts(abs.constants.begin(), abs.constants.end());
    std::set<std::string> con_sets(con.sets.begin(), con.sets.end());
    std::set<std::string> con_consts(con.constants.begin(), con.constants.end());

    std::set<std::string> bound_sets;
    for (const auto& s : b.sets) {
        if (!abs_sets.count(s.abstract_name))
            fail("bind.unknown-name",
                 "'" + s.abstract_name + "' is not a carrier set of context '" +
                     b.abstract_context + "'",
                 s.span);
        if (!bound_sets.insert(s.abstract_name).second)
            fail("bind.duplicate-binding",
                 "carrier set '" + s.abstract_name + "' is bound twice", s.span);
        // Every carrier mentioned in the type must be a concrete carrier set.
        std::set<std::string> mentioned;
        collect_carriers(*s.type, mentioned);
        for (const auto& c : mentioned) {
            if (con_sets.count(c)) continue;
            if (con_consts.count(c))
                fail("bind.set-not-type-expression",
                     "carrier set '" + s.abstract_name + "' is bound to '" + c +
                         "', which is a constant of context '" + b.concrete_context +
                         "', not a type expression; carrier sets can only be "
                         "instantiated by type expressions",
                     s.span);
            fail("bind.set-not-type-expression",
                 "carrier set '" + s.abstract_name + "' is bound to a type mentioning '" +
                     c + "', which is not a carrier set of context '" + b.concrete_context +
                     "'",
                 s.span);
        }
    }
    std::set<std::string> bound_consts;
    std::set<std::string> con_known = con_sets;
    con_known.insert(con_consts.begin(), con_consts.end());
    con_known.insert(ambient.begin(), ambient.end());
    for (const auto& c : b.consts) {
        if (!abs_consts.count(c.abstract_name))
            fail("bind.unknown-name",
                 "'" + c.abstract_name + "' is not a constant of context '" +
                     b.abstract_context + "'",
                 c.span);
        if (!bound_consts.insert(c.abstract_name).second)
            fail("bind.duplicate-binding",
                 "constant '" + c.abstract_name + "' is bound twice", c.span);
        std::set<std::string> bound;
        std::set<std::string> free;
        free_idents(*c.expr, bound, free);
        for (const auto& f : free)
            if (!con_known.count(f))
                fail("bind.unknown-identifier",
                     "identifier '" + f + "' in the binding of '" + c.abstract_name +
                         "' is not declared in context '" + b.concrete_context + "'",
                     c.span);
    }
    for (const auto& s : abs.sets)
        if (!bound_sets.count(s))
            fail("bind.missing-binding",
                 "carrier set '" + s + "' of context '" + b.abstract_context +
                     "' has no 'set' binding",
                 b.span);
    for (const auto& k : abs.constants)
        if (!bound_consts.count(k))
            fail("bind.missing-binding",
                 "constant '" + k + "' of context '" + b.abstract_context +
                     "' has no 'const' binding",
                 b.span);
}

}  // namespace ebadt
