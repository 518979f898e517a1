#pragma once

// Capture-avoiding simultaneous substitution of identifiers by expressions,
// for expressions and predicates.  Binders that would capture a free
// identifier of a substituted expression are renamed (x -> x_1, x_2, ...).

#include <map>
#include <set>
#include <string>

#include "ebadt/ast.hpp"

namespace ebadt {

using Substitution = std::map<std::string, ExprPtr>;

ExprPtr substitute(const ExprPtr& e, const Substitution& sigma);
PredPtr substitute(const PredPtr& p, const Substitution& sigma);

namespace subst_detail {

// Names that must not be captured: free identifiers of every replacement
// expression that can fire inside this scope.
inline std::set<std::string> danger_set(const Substitution& sigma) {
    std::set<std::string> out;
    for (const auto& [name, repl] : sigma) {
        (void)name;
        for (const auto& f : free_idents(*repl)) out.insert(f);
    }
    return out;
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!taken.count(candidate)) return candidate;
    }
}

// Adjust `sigma` for a binder list: bound names drop out of the substitution;
// bound names that collide with free identifiers of the replacements are
// renamed and the renaming enters the substitution.
struct ScopeAdjust {
    Substitution sigma;
    std::vector<std::string> binders;
};

inline ScopeAdjust enter_scope(const std::vector<std::string>& binders,
                               const Substitution& sigma,
                               const std::set<std::string>& scope_free) {
    ScopeAdjust out;
    out.binders = binders;
    out.sigma = sigma;
    for (const auto& b : binders) out.sigma.erase(b);

    // Anything substituted inside this scope must not have its free names
    // captured by a binder; rename colliding binders.
    std::set<std::string> danger = danger_set(out.sigma);
    std::set<std::string> taken = danger;
    for (const auto& f : scope_free) taken.insert(f);
    for (auto& b : out.binders) taken.insert(b);

    for (auto& b : out.binders) {
        if (!danger.count(b)) continue;
        std::string renamed = fresh_name(b, taken);
        taken.insert(renamed);
        out.sigma[b] = mk::ident(renamed);
        b = renamed;
    }
    return out;
}

}  // namespace subst_detail

inline ExprPtr substitute(const ExprPtr& e, const Substitution& sigma) {
    if (sigma.empty()) return e;
    switch (e->kind) {
        case ExprKind::IntLit:
        case ExprKind::BoolLit:
        case ExprKind::Builtin:
            return e;
        case ExprKind::Ident: {
            auto it = sigma.find(e->name);
            return it != sigma.end() ? it->second : e;
        }
        case ExprKind::SetExt: {
            std::vector<ExprPtr> elems;
            elems.reserve(e->elements.size());
            bool changed = false;
            for (const auto& el : e->elements) {
                ExprPtr n = substitute(el, sigma);
                changed = changed || n != el;
                elems.push_back(std::move(n));
            }
            if (!changed) return e;
            return mk::set_ext(std::move(elems), e->span);
        }
        case ExprKind::Comprehension: {
            std::set<std::string> scope_free = free_idents(*e);
            auto scope = subst_detail::enter_scope(e->binders, sigma, scope_free);
            if (scope.sigma.empty() && scope.binders == e->binders) return e;
            PredPtr constraint = substitute(e->constraint, scope.sigma);
            ExprPtr body = substitute(e->left, scope.sigma);
            if (constraint == e->constraint && body == e->left && scope.binders == e->binders)
                return e;
            return mk::comprehension(scope.binders, std::move(constraint), std::move(body),
                                     e->span);
        }
        default: {
            ExprPtr l = e->left ? substitute(e->left, sigma) : nullptr;
            ExprPtr r = e->right ? substitute(e->right, sigma) : nullptr;
            if (l == e->left && r == e->right) return e;
            Expr out = *e;
            out.left = std::move(l);
            out.right = std::move(r);
            return std::make_shared<Expr>(std::move(out));
        }
    }
}

inline PredPtr substitute(const PredPtr& p, const Substitution& sigma) {
    if (sigma.empty()) return p;
    switch (p->kind) {
        case PredKind::Truth:
        case PredKind::Falsity:
            return p;
        case PredKind::ForAll:
        case PredKind::Exists: {
            std::set<std::string> scope_free = free_idents(*p);
            auto scope = subst_detail::enter_scope(p->binders, sigma, scope_free);
            if (scope.sigma.empty() && scope.binders == p->binders) return p;
            PredPtr body = substitute(p->p1, scope.sigma);
            if (body == p->p1 && scope.binders == p->binders) return p;
            return p->kind == PredKind::ForAll
                       ? mk::forall(scope.binders, std::move(body), p->span)
                       : mk::exists(scope.binders, std::move(body), p->span);
        }
        default: {
            ExprPtr e1 = p->e1 ? substitute(p->e1, sigma) : nullptr;
            ExprPtr e2 = p->e2 ? substitute(p->e2, sigma) : nullptr;
            ExprPtr e3 = p->e3 ? substitute(p->e3, sigma) : nullptr;
            PredPtr p1 = p->p1 ? substitute(p->p1, sigma) : nullptr;
            PredPtr p2 = p->p2 ? substitute(p->p2, sigma) : nullptr;
            if (e1 == p->e1 && e2 == p->e2 && e3 == p->e3 && p1 == p->p1 && p2 == p->p2)
                return p;
            Pred out = *p;
            out.e1 = std::move(e1);
            out.e2 = std::move(e2);
            out.e3 = std::move(e3);
            out.p1 = std::move(p1);
            out.p2 = std::move(p2);
            return std::make_shared<Pred>(std::move(out));
        }
    }
}

}  // namespace ebadt
