#pragma once

// Generic instantiation: turning a binding (abstract carrier sets bound to
// type expressions, abstract constants bound to concrete expressions) into a
// substitution, and rewriting a machine that sees the abstract context so it
// sees the concrete one instead.

#include <string>

#include "ebadt/ast.hpp"
#include "ebadt/model.hpp"
#include "ebadt/subst.hpp"
#include "ebadt/wellformed.hpp"

namespace ebadt {

// A type expression as an evaluable set expression: INT and BOOL become the
// builtin sets, carriers become identifiers, POW and ** their operators.
inline ExprPtr type_to_expr(const TypeExpr& t) {
    switch (t.kind) {
        case TypeKind::Int: return mk::builtin(BuiltinSet::Int, t.span);
        case TypeKind::Bool: return mk::builtin(BuiltinSet::Bool, t.span);
        case TypeKind::Carrier: return mk::ident(t.carrier, t.span);
        case TypeKind::Power: return mk::unary(UnOp::Pow, type_to_expr(*t.left), t.span);
        case TypeKind::Product:
            return mk::binary(BinOp::Cross, type_to_expr(*t.left), type_to_expr(*t.right),
                              t.span);
    }
    return mk::empty_set(t.span);
}

// The substitution E,F of a binding: abstract carrier names map to their type
// expressions, abstract constants to their concrete expressions.
inline Substitution binding_substitution(const BindingDef& b) {
    Substitution sigma;
    for (const auto& s : b.sets) sigma[s.abstract_name] = type_to_expr(*s.type);
    for (const auto& c : b.consts) sigma[c.abstract_name] = c.expr;
    return sigma;
}

// Rewrites a machine seeing the abstract context into one seeing the concrete
// context: every invariant, guard and action expression is pushed through the
// binding substitution, and the `sees` entry for the abstract context is
// replaced by the concrete one (other seen contexts are kept).
inline MachineDef machine_instantiate(const MachineDef& m, const BindingDef& b) {
    Substitution sigma = binding_substitution(b);
    // Machine-local names shadow context names; they are never rewritten.
    for (const auto& v : m.variables) sigma.erase(v);

    MachineDef out = m;
    out.sees.clear();
    bool saw_abstract = false;
    for (const auto& s : m.sees) {
        if (s == b.abstract_context) {
            out.sees.push_back(b.concrete_context);
            saw_abstract = true;
        } else {
            out.sees.push_back(s);
        }
    }
    if (!saw_abstract)
        fail("inst.machine-does-not-see",
             "machine '" + m.name + "' does not see context '" + b.abstract_context + "'",
             m.span);

    for (auto& inv : out.invariants) inv.pred = substitute(inv.pred, sigma);
    auto rewrite_event = [&sigma](EventDef& ev) {
        Substitution local = sigma;
        for (const auto& p : ev.params) local.erase(p);
        for (auto& g : ev.guards) g.pred = substitute(g.pred, local);
        for (auto& a : ev.actions) {
            if (a.index) a.index = substitute(a.index, local);
            a.value = substitute(a.value, local);
        }
    };
    if (out.init) rewrite_event(*out.init);
    for (auto& ev : out.events) rewrite_event(ev);
    return out;
}

}  // namespace ebadt
