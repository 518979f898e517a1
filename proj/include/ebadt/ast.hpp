#pragma once

// Abstract syntax for the modelling notation: type expressions, set/value
// expressions, and predicates.  Nodes are immutable and shared by
// shared_ptr<const>; structural equality and ordering ignore source spans.

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ebadt/span.hpp"

namespace ebadt {

// ---------------------------------------------------------------------------
// Type expressions: the closed grammar of carrier types used by generic
// instantiation (`set NAME := <type-expr>`) and by universe construction.
//   T ::= INT | BOOL | <carrier-name> | POW(T) | T ** T
// ---------------------------------------------------------------------------

struct TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

enum class TypeKind : std::uint8_t { Int, Bool, Carrier, Power, Product };

struct TypeExpr {
    TypeKind kind;
    std::string carrier;  // Carrier only
    TypePtr left;         // Power: element type; Product: left component
    TypePtr right;        // Product: right component
    SourceSpan span;
};

inline TypePtr type_int() { return std::make_shared<TypeExpr>(TypeExpr{TypeKind::Int, {}, {}, {}, {}}); }
inline TypePtr type_bool() { return std::make_shared<TypeExpr>(TypeExpr{TypeKind::Bool, {}, {}, {}, {}}); }
inline TypePtr type_carrier(std::string name, SourceSpan sp = {}) {
    return std::make_shared<TypeExpr>(TypeExpr{TypeKind::Carrier, std::move(name), {}, {}, sp});
}
inline TypePtr type_power(TypePtr elem, SourceSpan sp = {}) {
    return std::make_shared<TypeExpr>(TypeExpr{TypeKind::Power, {}, std::move(elem), {}, sp});
}
inline TypePtr type_product(TypePtr a, TypePtr b, SourceSpan sp = {}) {
    return std::make_shared<TypeExpr>(TypeExpr{TypeKind::Product, {}, std::move(a), std::move(b), sp});
}

inline int compare(const TypeExpr& a, const TypeExpr& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    switch (a.kind) {
        case TypeKind::Int:
        case TypeKind::Bool: return 0;
        case TypeKind::Carrier: return a.carrier.compare(b.carrier);
        case TypeKind::Power: return compare(*a.left, *b.left);
        case TypeKind::Product: {
            int c = compare(*a.left, *b.left);
            return c != 0 ? c : compare(*a.right, *b.right);
        }
    }
    return 0;
}
inline bool equal(const TypeExpr& a, const TypeExpr& b) { return compare(a, b) == 0; }

// Carrier names mentioned anywhere in a type expression.
inline void collect_carriers(const TypeExpr& t, std::set<std::string>& out) {
    switch (t.kind) {
        case TypeKind::Carrier: out.insert(t.carrier); break;
        case TypeKind::Power: collect_carriers(*t.left, out); break;
        case TypeKind::Product:
            collect_carriers(*t.left, out);
            collect_carriers(*t.right, out);
            break;
        default: break;
    }
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

struct Expr;
struct Pred;
using ExprPtr = std::shared_ptr<const Expr>;
using PredPtr = std::shared_ptr<const Pred>;

enum class ExprKind : std::uint8_t {
    IntLit,         // 42, -3
    BoolLit,        // TRUE / FALSE
    Ident,          // x, STACK, push
    Maplet,         // a |-> b           (ordered pair; left-associative)
    SetExt,         // {e1, ..., en}     ({} when empty)
    Comprehension,  // {x, y . P | E}    (binders, constraint, body)
    Interval,       // a .. b
    Binary,         // union/inter/diff/cross/override/domsub/image/plus/minus
    Unary,          // POW(e), dom(e), ran(e)
    Apply,          // f(e)
    Builtin,        // INT, NAT, BOOL
    FunSpace,       // A --> B, A +-> B, A >-> B, A <-> B  (set-valued)
};

enum class BinOp : std::uint8_t {
    Union, Inter, Diff, Cross, Override, DomSub, Image, Plus, Minus,
};

enum class UnOp : std::uint8_t { Pow, Dom, Ran };

enum class BuiltinSet : std::uint8_t { Int, Nat, Bool };

enum class FunClass : std::uint8_t { Total, Partial, TotalInjective, Relation };

struct Expr {
    ExprKind kind;
    // IntLit
    std::int64_t int_value = 0;
    // BoolLit
    bool bool_value = false;
    // Ident
    std::string name;
    // Binary / Unary / FunSpace / Apply / Maplet / Interval
    BinOp bin_op = BinOp::Union;
    UnOp un_op = UnOp::Pow;
    BuiltinSet builtin = BuiltinSet::Int;
    FunClass fun_class = FunClass::Total;
    ExprPtr left;   // also: Apply function, Maplet left, Interval lo, Comprehension body
    ExprPtr right;  // also: Apply argument, Maplet right, Interval hi
    // SetExt
    std::vector<ExprPtr> elements;
    // Comprehension
    std::vector<std::string> binders;
    PredPtr constraint;  // Comprehension only
    SourceSpan span;
};

enum class PredKind : std::uint8_t {
    Equal, NotEqual, Member, NotMember, Subset, Less, LessEq,
    FunClassP,  // e : A --> B and friends, checked without enumerating the space
    And, Or, Implies, Not, ForAll, Exists, Truth, Falsity,
};

struct Pred {
    PredKind kind;
    ExprPtr e1;  // Equal/NotEqual/Member/NotMember/Subset/Less/LessEq: lhs; FunClassP: element
    ExprPtr e2;  //   ...: rhs; FunClassP: domain
    ExprPtr e3;  // FunClassP: codomain
    FunClass fun_class = FunClass::Total;  // FunClassP
    PredPtr p1;  // And/Or/Implies: left; Not/ForAll/Exists: body
    PredPtr p2;  // And/Or/Implies: right
    std::vector<std::string> binders;  // ForAll/Exists
    SourceSpan span;
};

// ---------------------------------------------------------------------------
// Constructors (span defaulted; tests and rewriters build trees with these)
// ---------------------------------------------------------------------------

namespace mk {

inline ExprPtr int_lit(std::int64_t v, SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::IntLit; e.int_value = v; e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}
inline ExprPtr bool_lit(bool v, SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::BoolLit; e.bool_value = v; e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}
inline ExprPtr ident(std::string n, SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::Ident; e.name = std::move(n); e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}
inline ExprPtr maplet(ExprPtr a, ExprPtr b, SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::Maplet; e.left = std::move(a); e.right = std::move(b); e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}
inline ExprPtr set_ext(std::vector<ExprPtr> elems, SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::SetExt; e.elements = std::move(elems); e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}
inline ExprPtr empty_set(SourceSpan sp = {}) { return set_ext({}, sp); }
inline ExprPtr comprehension(std::vector<std::string> binders, PredPtr constraint, ExprPtr body,
                             SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::Comprehension; e.binders = std::move(binders);
    e.constraint = std::move(constraint); e.left = std::move(body); e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}
inline ExprPtr interval(ExprPtr lo, ExprPtr hi, SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::Interval; e.left = std::move(lo); e.right = std::move(hi); e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}
inline ExprPtr binary(BinOp op, ExprPtr a, ExprPtr b, SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::Binary; e.bin_op = op; e.left = std::move(a); e.right = std::move(b);
    e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}
inline ExprPtr unary(UnOp op, ExprPtr a, SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::Unary; e.un_op = op; e.left = std::move(a); e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}
inline ExprPtr apply(ExprPtr f, ExprPtr arg, SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::Apply; e.left = std::move(f); e.right = std::move(arg); e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}
inline ExprPtr builtin(BuiltinSet b, SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::Builtin; e.builtin = b; e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}
inline ExprPtr fun_space(FunClass cls, ExprPtr dom, ExprPtr cod, SourceSpan sp = {}) {
    Expr e{}; e.kind = ExprKind::FunSpace; e.fun_class = cls; e.left = std::move(dom);
    e.right = std::move(cod); e.span = sp;
    return std::make_shared<Expr>(std::move(e));
}

inline PredPtr cmp(PredKind k, ExprPtr a, ExprPtr b, SourceSpan sp = {}) {
    Pred p{}; p.kind = k; p.e1 = std::move(a); p.e2 = std::move(b); p.span = sp;
    return std::make_shared<Pred>(std::move(p));
}
inline PredPtr equal(ExprPtr a, ExprPtr b, SourceSpan sp = {}) { return cmp(PredKind::Equal, std::move(a), std::move(b), sp); }
inline PredPtr not_equal(ExprPtr a, ExprPtr b, SourceSpan sp = {}) { return cmp(PredKind::NotEqual, std::move(a), std::move(b), sp); }
inline PredPtr member(ExprPtr a, ExprPtr b, SourceSpan sp = {}) { return cmp(PredKind::Member, std::move(a), std::move(b), sp); }
inline PredPtr not_member(ExprPtr a, ExprPtr b, SourceSpan sp = {}) { return cmp(PredKind::NotMember, std::move(a), std::move(b), sp); }
inline PredPtr subset(ExprPtr a, ExprPtr b, SourceSpan sp = {}) { return cmp(PredKind::Subset, std::move(a), std::move(b), sp); }
inline PredPtr less(ExprPtr a, ExprPtr b, SourceSpan sp = {}) { return cmp(PredKind::Less, std::move(a), std::move(b), sp); }
inline PredPtr less_eq(ExprPtr a, ExprPtr b, SourceSpan sp = {}) { return cmp(PredKind::LessEq, std::move(a), std::move(b), sp); }
inline PredPtr fun_class_p(FunClass cls, ExprPtr elem, ExprPtr dom, ExprPtr cod, SourceSpan sp = {}) {
    Pred p{}; p.kind = PredKind::FunClassP; p.fun_class = cls; p.e1 = std::move(elem);
    p.e2 = std::move(dom); p.e3 = std::move(cod); p.span = sp;
    return std::make_shared<Pred>(std::move(p));
}
inline PredPtr conj(PredPtr a, PredPtr b, SourceSpan sp = {}) {
    Pred p{}; p.kind = PredKind::And; p.p1 = std::move(a); p.p2 = std::move(b); p.span = sp;
    return std::make_shared<Pred>(std::move(p));
}
inline PredPtr disj(PredPtr a, PredPtr b, SourceSpan sp = {}) {
    Pred p{}; p.kind = PredKind::Or; p.p1 = std::move(a); p.p2 = std::move(b); p.span = sp;
    return std::make_shared<Pred>(std::move(p));
}
inline PredPtr implies(PredPtr a, PredPtr b, SourceSpan sp = {}) {
    Pred p{}; p.kind = PredKind::Implies; p.p1 = std::move(a); p.p2 = std::move(b); p.span = sp;
    return std::make_shared<Pred>(std::move(p));
}
inline PredPtr neg(PredPtr a, SourceSpan sp = {}) {
    Pred p{}; p.kind = PredKind::Not; p.p1 = std::move(a); p.span = sp;
    return std::make_shared<Pred>(std::move(p));
}
inline PredPtr forall(std::vector<std::string> binders, PredPtr body, SourceSpan sp = {}) {
    Pred p{}; p.kind = PredKind::ForAll; p.binders = std::move(binders); p.p1 = std::move(body);
    p.span = sp;
    return std::make_shared<Pred>(std::move(p));
}
inline PredPtr exists(std::vector<std::string> binders, PredPtr body, SourceSpan sp = {}) {
    Pred p{}; p.kind = PredKind::Exists; p.binders = std::move(binders); p.p1 = std::move(body);
    p.span = sp;
    return std::make_shared<Pred>(std::move(p));
}
inline PredPtr truth(SourceSpan sp = {}) {
    Pred p{}; p.kind = PredKind::Truth; p.span = sp;
    return std::make_shared<Pred>(std::move(p));
}
inline PredPtr falsity(SourceSpan sp = {}) {
    Pred p{}; p.kind = PredKind::Falsity; p.span = sp;
    return std::make_shared<Pred>(std::move(p));
}

}  // namespace mk

// ---------------------------------------------------------------------------
// Structural comparison (spans excluded) — total order so trees can key maps.
// ---------------------------------------------------------------------------

int compare(const Expr& a, const Expr& b);
int compare(const Pred& a, const Pred& b);

namespace detail {
inline int cmp3(std::int64_t a, std::int64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }
inline int cmp_ptr_expr(const ExprPtr& a, const ExprPtr& b) {
    if (!a && !b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    return compare(*a, *b);
}
inline int cmp_ptr_pred(const PredPtr& a, const PredPtr& b) {
    if (!a && !b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    return compare(*a, *b);
}
inline int cmp_names(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = a[i].compare(b[i]);
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}
}  // namespace detail

inline int compare(const Expr& a, const Expr& b) {
    using detail::cmp3;
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    switch (a.kind) {
        case ExprKind::IntLit: return cmp3(a.int_value, b.int_value);
        case ExprKind::BoolLit: return cmp3(a.bool_value ? 1 : 0, b.bool_value ? 1 : 0);
        case ExprKind::Ident: {
            int c = a.name.compare(b.name);
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        case ExprKind::Builtin: return cmp3((int)a.builtin, (int)b.builtin);
        case ExprKind::Maplet:
        case ExprKind::Interval:
        case ExprKind::Apply: {
            int c = detail::cmp_ptr_expr(a.left, b.left);
            return c != 0 ? c : detail::cmp_ptr_expr(a.right, b.right);
        }
        case ExprKind::Binary: {
            if (a.bin_op != b.bin_op) return a.bin_op < b.bin_op ? -1 : 1;
            int c = detail::cmp_ptr_expr(a.left, b.left);
            return c != 0 ? c : detail::cmp_ptr_expr(a.right, b.right);
        }
        case ExprKind::Unary: {
            if (a.un_op != b.un_op) return a.un_op < b.un_op ? -1 : 1;
            return detail::cmp_ptr_expr(a.left, b.left);
        }
        case ExprKind::FunSpace: {
            if (a.fun_class != b.fun_class) return a.fun_class < b.fun_class ? -1 : 1;
            int c = detail::cmp_ptr_expr(a.left, b.left);
            return c != 0 ? c : detail::cmp_ptr_expr(a.right, b.right);
        }
        case ExprKind::SetExt: {
            if (a.elements.size() != b.elements.size())
                return a.elements.size() < b.elements.size() ? -1 : 1;
            for (std::size_t i = 0; i < a.elements.size(); ++i) {
                int c = detail::cmp_ptr_expr(a.elements[i], b.elements[i]);
                if (c != 0) return c;
            }
            return 0;
        }
        case ExprKind::Comprehension: {
            int c = detail::cmp_names(a.binders, b.binders);
            if (c != 0) return c;
            c = detail::cmp_ptr_pred(a.constraint, b.constraint);
            if (c != 0) return c;
            return detail::cmp_ptr_expr(a.left, b.left);
        }
    }
    return 0;
}

inline int compare(const Pred& a, const Pred& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    switch (a.kind) {
        case PredKind::Truth:
        case PredKind::Falsity: return 0;
        case PredKind::Equal:
        case PredKind::NotEqual:
        case PredKind::Member:
        case PredKind::NotMember:
        case PredKind::Subset:
        case PredKind::Less:
        case PredKind::LessEq: {
            int c = detail::cmp_ptr_expr(a.e1, b.e1);
            return c != 0 ? c : detail::cmp_ptr_expr(a.e2, b.e2);
        }
        case PredKind::FunClassP: {
            if (a.fun_class != b.fun_class) return a.fun_class < b.fun_class ? -1 : 1;
            int c = detail::cmp_ptr_expr(a.e1, b.e1);
            if (c != 0) return c;
            c = detail::cmp_ptr_expr(a.e2, b.e2);
            return c != 0 ? c : detail::cmp_ptr_expr(a.e3, b.e3);
        }
        case PredKind::And:
        case PredKind::Or:
        case PredKind::Implies: {
            int c = detail::cmp_ptr_pred(a.p1, b.p1);
            return c != 0 ? c : detail::cmp_ptr_pred(a.p2, b.p2);
        }
        case PredKind::Not: return detail::cmp_ptr_pred(a.p1, b.p1);
        case PredKind::ForAll:
        case PredKind::Exists: {
            int c = detail::cmp_names(a.binders, b.binders);
            return c != 0 ? c : detail::cmp_ptr_pred(a.p1, b.p1);
        }
    }
    return 0;
}

inline bool equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
inline bool equal(const Pred& a, const Pred& b) { return compare(a, b) == 0; }

// ---------------------------------------------------------------------------
// Free identifiers.  Binders shadow; Comprehension binders scope over both the
// constraint and the body.
// ---------------------------------------------------------------------------

void free_idents(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out);
void free_idents(const Pred& p, std::set<std::string>& bound, std::set<std::string>& out);

inline void free_idents(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (e.kind) {
        case ExprKind::IntLit:
        case ExprKind::BoolLit:
        case ExprKind::Builtin: return;
        case ExprKind::Ident:
            if (!bound.count(e.name)) out.insert(e.name);
            return;
        case ExprKind::SetExt:
            for (const auto& el : e.elements) free_idents(*el, bound, out);
            return;
        case ExprKind::Comprehension: {
            std::vector<std::string> added;
            for (const auto& bnd : e.binders)
                if (bound.insert(bnd).second) added.push_back(bnd);
            if (e.constraint) free_idents(*e.constraint, bound, out);
            if (e.left) free_idents(*e.left, bound, out);
            for (const auto& bnd : added) bound.erase(bnd);
            return;
        }
        default:
            if (e.left) free_idents(*e.left, bound, out);
            if (e.right) free_idents(*e.right, bound, out);
            return;
    }
}

inline void free_idents(const Pred& p, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (p.kind) {
        case PredKind::Truth:
        case PredKind::Falsity: return;
        case PredKind::ForAll:
        case PredKind::Exists: {
            std::vector<std::string> added;
            for (const auto& bnd : p.binders)
                if (bound.insert(bnd).second) added.push_back(bnd);
            if (p.p1) free_idents(*p.p1, bound, out);
            for (const auto& bnd : added) bound.erase(bnd);
            return;
        }
        default:
            if (p.e1) free_idents(*p.e1, bound, out);
            if (p.e2) free_idents(*p.e2, bound, out);
            if (p.e3) free_idents(*p.e3, bound, out);
            if (p.p1) free_idents(*p.p1, bound, out);
            if (p.p2) free_idents(*p.p2, bound, out);
            return;
    }
}

inline std::set<std::string> free_idents(const Expr& e) {
    std::set<std::string> bound, out;
    free_idents(e, bound, out);
    return out;
}
inline std::set<std::string> free_idents(const Pred& p) {
    std::set<std::string> bound, out;
    free_idents(p, bound, out);
    return out;
}

}  // namespace ebadt
