#pragma once

// Recursive-descent parser for the modelling notation.
//
// Expression precedence, loosest to tightest (level numbers used by the
// printer as well):
//   0  function-space arrows  -->  +->  >->  <->   (right-associative)
//   1  \/  \  <+  <<|                              (left-associative)
//   2  /\                                          (left-associative)
//   3  ..                                          (non-associative)
//   4  +  -                                        (left-associative)
//   5  **                                          (left-associative)
//   6  |->                                         (left-associative)
//   7  application f(e) and image f[S]             (postfix)
//   8  atoms: literals, identifiers, {...}, (...), POW/dom/ran
//
// Predicate precedence, loosest to tightest:
//   =>  (right)   or   &   not   atoms
// Quantifier bodies (`!x,y. P`, `#x. P`) extend as far right as possible.
//
// `{x, y . P | E}` is a comprehension with explicit binders.  `{E | P}` is a
// comprehension whose binders are the free identifiers of E that are not
// lexically visible (declared earlier in the same file or bound by an
// enclosing binder), in first-occurrence order.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ebadt/ast.hpp"
#include "ebadt/lexer.hpp"
#include "ebadt/model.hpp"

namespace ebadt {

inline const std::set<std::string>& reserved_words() {
    static const std::set<std::string> words = {
        "context", "machine", "sets", "constants", "axioms", "theorems",
        "extends", "sees", "variables", "invariants", "events", "any",
        "where", "then", "end", "instantiate", "with", "set", "const",
        "or", "not", "POW", "dom", "ran", "INT", "NAT", "BOOL",
        "TRUE", "FALSE", "btrue", "bfalse",
    };
    return words;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::set<std::string> ambient = {})
        : toks_(std::move(tokens)), visible_(std::move(ambient)) {}

    ModelFile parse_model_file() {
        ModelFile out;
        while (!at(Tok::EndOfFile)) {
            if (at_kw("context")) {
                out.contexts.push_back(parse_context());
            } else if (at_kw("machine")) {
                out.machines.push_back(parse_machine());
            } else {
                fail("parse.expected-declaration",
                     "expected 'context' or 'machine', found " + describe(cur()), cur().span);
            }
        }
        return out;
    }

    BindingDef parse_binding_file() {
        BindingDef b;
        b.span = cur().span;
        expect_kw("instantiate");
        b.abstract_context = ident("abstract context name");
        expect_kw("with");
        b.concrete_context = ident("concrete context name");
        while (!at(Tok::EndOfFile)) {
            if (at_kw("set")) {
                SourceSpan sp = cur().span;
                next();
                std::string name = ident("carrier set name");
                expect(Tok::Becomes);
                TypePtr ty = parse_set_rhs_as_type();
                b.sets.push_back(SetBinding{std::move(name), std::move(ty), sp});
            } else if (at_kw("const")) {
                SourceSpan sp = cur().span;
                next();
                std::string name = ident("constant name");
                expect(Tok::Becomes);
                ExprPtr e = parse_expr();
                b.consts.push_back(ConstBinding{std::move(name), std::move(e), sp});
            } else {
                fail("parse.expected-binding-line",
                     "expected 'set' or 'const', found " + describe(cur()), cur().span);
            }
        }
        return b;
    }

    // Entry points for fragments (tests, CLI argument parsing).
    ExprPtr parse_expr_eof() {
        ExprPtr e = parse_expr();
        expect(Tok::EndOfFile);
        return e;
    }
    PredPtr parse_pred_eof() {
        PredPtr p = parse_pred();
        expect(Tok::EndOfFile);
        return p;
    }
    TypePtr parse_type_eof() {
        TypePtr t = parse_type();
        expect(Tok::EndOfFile);
        return t;
    }

private:
    std::vector<Token> toks_;
    std::size_t idx_ = 0;
    std::set<std::string> visible_;           // names declared so far in this file
    std::vector<std::string> binder_stack_;   // enclosing quantifier/comprehension binders

    // ---- token plumbing -------------------------------------------------

    const Token& cur() const { return toks_[idx_]; }
    const Token& peek(std::size_t k = 1) const {
        return toks_[std::min(idx_ + k, toks_.size() - 1)];
    }
    void next() { if (idx_ + 1 < toks_.size()) ++idx_; }
    bool at(Tok k) const { return cur().kind == k; }
    bool at_kw(std::string_view w) const { return at(Tok::Ident) && cur().text == w; }
    bool at_plain_ident() const {
        return at(Tok::Ident) && !reserved_words().count(cur().text);
    }

    std::string describe(const Token& t) const {
        if (t.kind == Tok::Ident) return "'" + t.text + "'";
        if (t.kind == Tok::IntLit) return "'" + t.text + "'";
        return tok_name(t.kind);
    }

    void expect(Tok k) {
        if (!at(k))
            fail("parse.expected-token",
                 std::string("expected ") + tok_name(k) + ", found " + describe(cur()),
                 cur().span);
        next();
    }
    void expect_kw(std::string_view w) {
        if (!at_kw(w))
            fail("parse.expected-token",
                 "expected '" + std::string(w) + "', found " + describe(cur()), cur().span);
        next();
    }
    std::string ident(std::string_view what) {
        if (!at(Tok::Ident))
            fail("parse.expected-identifier",
                 "expected " + std::string(what) + ", found " + describe(cur()), cur().span);
        if (reserved_words().count(cur().text))
            fail("parse.reserved-word",
                 "'" + cur().text + "' is a reserved word and cannot be used as " +
                     std::string(what),
                 cur().span);
        std::string name = cur().text;
        next();
        return name;
    }

    struct BinderScope {
        Parser* p;
        std::size_t n;
        BinderScope(Parser* parser, const std::vector<std::string>& binders)
            : p(parser), n(binders.size()) {
            for (const auto& b : binders) p->binder_stack_.push_back(b);
        }
        ~BinderScope() {
            p->binder_stack_.resize(p->binder_stack_.size() - n);
        }
    };

    bool lexically_visible(const std::string& name) const {
        if (visible_.count(name)) return true;
        for (const auto& b : binder_stack_)
            if (b == name) return true;
        return false;
    }

    // ---- declarations ----------------------------------------------------

    std::vector<std::string> ident_list(std::string_view what) {
        std::vector<std::string> names;
        names.push_back(ident(what));
        while (at(Tok::Comma)) {
            next();
            names.push_back(ident(what));
        }
        return names;
    }

    bool at_labeled_pred() const {
        return at_plain_ident() && peek().kind == Tok::Colon;
    }

    std::vector<Labeled> labeled_pred_list() {
        std::vector<Labeled> out;
        while (at_labeled_pred()) {
            Labeled item;
            item.span = cur().span;
            item.label = ident("label");
            expect(Tok::Colon);
            item.pred = parse_pred();
            out.push_back(std::move(item));
        }
        if (out.empty())
            fail("parse.expected-labeled-predicate",
                 "expected at least one 'label : predicate' item, found " + describe(cur()),
                 cur().span);
        return out;
    }

    ContextDef parse_context() {
        ContextDef ctx;
        ctx.span = cur().span;
        expect_kw("context");
        ctx.name = ident("context name");
        while (!at_kw("end")) {
            if (at_kw("extends")) {
                next();
                ctx.extends = ident_list("context name");
            } else if (at_kw("sets")) {
                next();
                ctx.sets = ident_list("carrier set name");
                for (const auto& s : ctx.sets) visible_.insert(s);
            } else if (at_kw("constants")) {
                next();
                ctx.constants = ident_list("constant name");
                for (const auto& c : ctx.constants) visible_.insert(c);
            } else if (at_kw("axioms")) {
                next();
                ctx.axioms = labeled_pred_list();
            } else if (at_kw("theorems")) {
                next();
                ctx.theorems = labeled_pred_list();
            } else {
                fail("parse.expected-section",
                     "expected 'extends', 'sets', 'constants', 'axioms', 'theorems' or "
                     "'end', found " + describe(cur()),
                     cur().span);
            }
        }
        expect_kw("end");
        return ctx;
    }

    MachineDef parse_machine() {
        MachineDef m;
        m.span = cur().span;
        expect_kw("machine");
        m.name = ident("machine name");
        while (!at_kw("end")) {
            if (at_kw("sees")) {
                next();
                m.sees = ident_list("context name");
            } else if (at_kw("variables")) {
                next();
                m.variables = ident_list("variable name");
                for (const auto& v : m.variables) visible_.insert(v);
            } else if (at_kw("invariants")) {
                next();
                m.invariants = labeled_pred_list();
            } else if (at_kw("events")) {
                next();
                while (!at_kw("end")) parse_event(m);
                // the machine's own `end` is consumed by the loop condition below
                break;
            } else {
                fail("parse.expected-section",
                     "expected 'sees', 'variables', 'invariants', 'events' or 'end', "
                     "found " + describe(cur()),
                     cur().span);
            }
        }
        expect_kw("end");
        return m;
    }

    void parse_event(MachineDef& m) {
        EventDef ev;
        ev.span = cur().span;
        ev.name = ident("event name");
        if (at_kw("any")) {
            next();
            ev.params = ident_list("event parameter");
        }
        BinderScope params_scope(this, ev.params);
        if (at_kw("where")) {
            next();
            ev.guards = labeled_pred_list();
        }
        expect_kw("then");
        while (!at_kw("end")) ev.actions.push_back(parse_action());
        expect_kw("end");

        if (ev.name == "init") {
            if (!ev.params.empty() || !ev.guards.empty())
                fail("parse.init-constrained",
                     "the 'init' event cannot have parameters or guards", ev.span);
            if (m.init.has_value())
                fail("parse.duplicate-init", "machine already has an 'init' event", ev.span);
            m.init = std::move(ev);
        } else {
            m.events.push_back(std::move(ev));
        }
    }

    Assignment parse_action() {
        Assignment a;
        a.span = cur().span;
        a.target = ident("assignment target");
        if (at(Tok::LParen)) {
            next();
            a.index = parse_expr();
            expect(Tok::RParen);
        }
        expect(Tok::Becomes);
        a.value = parse_expr();
        return a;
    }

    // ---- types -----------------------------------------------------------

    TypePtr parse_type() {
        TypePtr t = parse_type_atom();
        while (at(Tok::Cross)) {
            SourceSpan sp = cur().span;
            next();
            t = type_product(t, parse_type_atom(), sp);
        }
        return t;
    }

    TypePtr parse_type_atom() {
        SourceSpan sp = cur().span;
        if (at_kw("INT")) { next(); return type_int(); }
        if (at_kw("BOOL")) { next(); return type_bool(); }
        if (at_kw("POW")) {
            next();
            expect(Tok::LParen);
            TypePtr inner = parse_type();
            expect(Tok::RParen);
            return type_power(std::move(inner), sp);
        }
        if (at(Tok::LParen)) {
            next();
            TypePtr inner = parse_type();
            expect(Tok::RParen);
            return inner;
        }
        if (at_plain_ident()) {
            std::string name = cur().text;
            next();
            return type_carrier(std::move(name), sp);
        }
        fail("parse.expected-type",
             "expected a type expression (INT, BOOL, POW(T), T ** T, or a carrier set "
             "name), found " + describe(cur()),
             sp);
    }

    // In a binding, `set N := RHS` requires RHS to be a closed type expression.
    TypePtr parse_set_rhs_as_type() {
        SourceSpan sp = cur().span;
        try {
            TypePtr t = parse_type();
            // The whole right-hand side must be consumed by the type grammar.
            if (!at(Tok::EndOfFile) && !at_kw("set") && !at_kw("const"))
                fail("bind.set-not-type-expression",
                     "the right-hand side of 'set' must be a type expression built "
                     "from INT, BOOL, concrete carrier sets, POW(T) and T ** T; "
                     "found " + describe(cur()) + " after the type",
                     cur().span);
            return t;
        } catch (const DiagnosticError& e) {
            SourceSpan where = e.diagnostic.span.file.empty() ? sp : e.diagnostic.span;
            fail("bind.set-not-type-expression",
                 "the right-hand side of 'set' must be a type expression built from "
                 "INT, BOOL, concrete carrier sets, POW(T) and T ** T",
                 where);
        }
    }

    // ---- predicates --------------------------------------------------------

    PredPtr parse_pred() { return parse_implies(); }

    PredPtr parse_implies() {
        PredPtr a = parse_or();
        if (at(Tok::ImpliesTok)) {
            SourceSpan sp = cur().span;
            next();
            return mk::implies(std::move(a), parse_implies(), sp);  // right-assoc
        }
        return a;
    }

    PredPtr parse_or() {
        PredPtr a = parse_and();
        while (at_kw("or")) {
            SourceSpan sp = cur().span;
            next();
            a = mk::disj(std::move(a), parse_and(), sp);
        }
        return a;
    }

    PredPtr parse_and() {
        PredPtr a = parse_not();
        while (at(Tok::Conj)) {
            SourceSpan sp = cur().span;
            next();
            a = mk::conj(std::move(a), parse_not(), sp);
        }
        return a;
    }

    PredPtr parse_not() {
        if (at_kw("not")) {
            SourceSpan sp = cur().span;
            next();
            return mk::neg(parse_not(), sp);
        }
        return parse_pred_atom();
    }

    PredPtr parse_pred_atom() {
        SourceSpan sp = cur().span;
        if (at_kw("btrue")) { next(); return mk::truth(sp); }
        if (at_kw("bfalse")) { next(); return mk::falsity(sp); }
        if (at(Tok::Bang) || at(Tok::Hash)) {
            bool universal = at(Tok::Bang);
            next();
            std::vector<std::string> binders = ident_list("bound variable");
            expect(Tok::Dot);
            BinderScope scope(this, binders);
            PredPtr body = parse_pred();
            return universal ? mk::forall(std::move(binders), std::move(body), sp)
                             : mk::exists(std::move(binders), std::move(body), sp);
        }
        if (at(Tok::LParen)) {
            // Backtrack between a parenthesized predicate and a relational atom
            // whose left-hand expression is parenthesized.
            std::size_t save = idx_;
            next();
            try {
                PredPtr inner = parse_pred();
                expect(Tok::RParen);
                return inner;
            } catch (const DiagnosticError&) {
                idx_ = save;
            }
        }
        return parse_relational();
    }

    PredPtr parse_relational() {
        SourceSpan sp = cur().span;
        ExprPtr lhs = parse_expr();
        if (at(Tok::EqualSign)) { next(); return mk::equal(std::move(lhs), parse_expr(), sp); }
        if (at(Tok::NotEqual)) { next(); return mk::not_equal(std::move(lhs), parse_expr(), sp); }
        if (at(Tok::Subset)) { next(); return mk::subset(std::move(lhs), parse_expr(), sp); }
        if (at(Tok::Less)) { next(); return mk::less(std::move(lhs), parse_expr(), sp); }
        if (at(Tok::LessEq)) { next(); return mk::less_eq(std::move(lhs), parse_expr(), sp); }
        if (at(Tok::Colon) || at(Tok::NotMember)) {
            bool positive = at(Tok::Colon);
            next();
            ExprPtr rhs = parse_expr();
            // Membership in a function space is the function-class predicate.
            if (rhs->kind == ExprKind::FunSpace) {
                PredPtr fc = mk::fun_class_p(rhs->fun_class, std::move(lhs), rhs->left,
                                             rhs->right, sp);
                return positive ? fc : mk::neg(std::move(fc), sp);
            }
            return positive ? mk::member(std::move(lhs), std::move(rhs), sp)
                            : mk::not_member(std::move(lhs), std::move(rhs), sp);
        }
        fail("parse.expected-relation",
             "expected a relational operator (=, /=, :, /:, <:, <, <=) after the "
             "expression, found " + describe(cur()),
             cur().span);
    }

    // ---- expressions -------------------------------------------------------

    ExprPtr parse_expr() { return parse_arrows(); }

    ExprPtr parse_arrows() {  // level 0, right-assoc
        ExprPtr a = parse_union_like();
        FunClass cls;
        if (at(Tok::TotalFun)) cls = FunClass::Total;
        else if (at(Tok::PartialFun)) cls = FunClass::Partial;
        else if (at(Tok::TotalInj)) cls = FunClass::TotalInjective;
        else if (at(Tok::Relation)) cls = FunClass::Relation;
        else return a;
        SourceSpan sp = cur().span;
        next();
        return mk::fun_space(cls, std::move(a), parse_arrows(), sp);
    }

    ExprPtr parse_union_like() {  // level 1, left-assoc
        ExprPtr a = parse_inter();
        for (;;) {
            BinOp op;
            if (at(Tok::Union)) op = BinOp::Union;
            else if (at(Tok::Diff)) op = BinOp::Diff;
            else if (at(Tok::Override)) op = BinOp::Override;
            else if (at(Tok::DomSub)) op = BinOp::DomSub;
            else return a;
            SourceSpan sp = cur().span;
            next();
            a = mk::binary(op, std::move(a), parse_inter(), sp);
        }
    }

    ExprPtr parse_inter() {  // level 2, left-assoc
        ExprPtr a = parse_interval_level();
        while (at(Tok::Inter)) {
            SourceSpan sp = cur().span;
            next();
            a = mk::binary(BinOp::Inter, std::move(a), parse_interval_level(), sp);
        }
        return a;
    }

    ExprPtr parse_interval_level() {  // level 3, non-assoc
        ExprPtr a = parse_additive();
        if (at(Tok::Interval)) {
            SourceSpan sp = cur().span;
            next();
            return mk::interval(std::move(a), parse_additive(), sp);
        }
        return a;
    }

    ExprPtr parse_additive() {  // level 4, left-assoc
        ExprPtr a = parse_cross();
        for (;;) {
            BinOp op;
            if (at(Tok::Plus)) op = BinOp::Plus;
            else if (at(Tok::MinusSign)) op = BinOp::Minus;
            else return a;
            SourceSpan sp = cur().span;
            next();
            a = mk::binary(op, std::move(a), parse_cross(), sp);
        }
    }

    ExprPtr parse_cross() {  // level 5, left-assoc
        ExprPtr a = parse_maplet();
        while (at(Tok::Cross)) {
            SourceSpan sp = cur().span;
            next();
            a = mk::binary(BinOp::Cross, std::move(a), parse_maplet(), sp);
        }
        return a;
    }

    ExprPtr parse_maplet() {  // level 6, left-assoc
        ExprPtr a = parse_postfix();
        while (at(Tok::Maplet)) {
            SourceSpan sp = cur().span;
            next();
            a = mk::maplet(std::move(a), parse_postfix(), sp);
        }
        return a;
    }

    ExprPtr parse_postfix() {  // level 7
        ExprPtr a = parse_primary();
        for (;;) {
            if (at(Tok::LParen)) {
                SourceSpan sp = cur().span;
                next();
                ExprPtr arg = parse_expr();
                expect(Tok::RParen);
                a = mk::apply(std::move(a), std::move(arg), sp);
            } else if (at(Tok::LBracket)) {
                SourceSpan sp = cur().span;
                next();
                ExprPtr arg = parse_expr();
                expect(Tok::RBracket);
                a = mk::binary(BinOp::Image, std::move(a), std::move(arg), sp);
            } else {
                return a;
            }
        }
    }

    ExprPtr parse_primary() {
        SourceSpan sp = cur().span;
        if (at(Tok::IntLit)) {
            std::int64_t v = cur().value;
            next();
            return mk::int_lit(v, sp);
        }
        if (at(Tok::MinusSign) && peek().kind == Tok::IntLit) {
            next();
            std::int64_t v = cur().value;
            next();
            return mk::int_lit(-v, sp);
        }
        if (at(Tok::LParen)) {
            next();
            ExprPtr inner = parse_expr();
            expect(Tok::RParen);
            return inner;
        }
        if (at(Tok::LBrace)) return parse_braced();
        if (at(Tok::Ident)) {
            const std::string& w = cur().text;
            if (w == "INT") { next(); return mk::builtin(BuiltinSet::Int, sp); }
            if (w == "NAT") { next(); return mk::builtin(BuiltinSet::Nat, sp); }
            if (w == "BOOL") { next(); return mk::builtin(BuiltinSet::Bool, sp); }
            if (w == "TRUE") { next(); return mk::bool_lit(true, sp); }
            if (w == "FALSE") { next(); return mk::bool_lit(false, sp); }
            if (w == "POW" || w == "dom" || w == "ran") {
                UnOp op = w == "POW" ? UnOp::Pow : (w == "dom" ? UnOp::Dom : UnOp::Ran);
                next();
                expect(Tok::LParen);
                ExprPtr inner = parse_expr();
                expect(Tok::RParen);
                return mk::unary(op, std::move(inner), sp);
            }
            if (reserved_words().count(w))
                fail("parse.reserved-word",
                     "'" + w + "' is a reserved word and cannot appear in an expression",
                     sp);
            std::string name = w;
            next();
            return mk::ident(std::move(name), sp);
        }
        fail("parse.expected-expression",
             "expected an expression, found " + describe(cur()), sp);
    }

    // `{` already current.  Distinguish {}, {x,y . P | E}, {E | P}, {e1, ..., en}.
    ExprPtr parse_braced() {
        SourceSpan sp = cur().span;
        expect(Tok::LBrace);
        if (at(Tok::RBrace)) {
            next();
            return mk::empty_set(sp);
        }

        // Explicit-binder lookahead: IDENT (',' IDENT)* '.'
        if (at_plain_ident()) {
            std::size_t k = 1;
            while (peek(k).kind == Tok::Comma && peek(k + 1).kind == Tok::Ident) k += 2;
            if (peek(k).kind == Tok::Dot) {
                std::vector<std::string> binders = ident_list("bound variable");
                expect(Tok::Dot);
                BinderScope scope(this, binders);
                PredPtr constraint = parse_pred();
                expect(Tok::Bar);
                ExprPtr body = parse_expr();
                expect(Tok::RBrace);
                return mk::comprehension(std::move(binders), std::move(constraint),
                                         std::move(body), sp);
            }
        }

        ExprPtr first = parse_expr();
        if (at(Tok::Bar)) {
            next();
            std::vector<std::string> binders = infer_binders(*first);
            BinderScope scope(this, binders);
            PredPtr constraint = parse_pred();
            expect(Tok::RBrace);
            return mk::comprehension(std::move(binders), std::move(constraint),
                                     std::move(first), sp);
        }
        std::vector<ExprPtr> elems;
        elems.push_back(std::move(first));
        while (at(Tok::Comma)) {
            next();
            elems.push_back(parse_expr());
        }
        expect(Tok::RBrace);
        return mk::set_ext(std::move(elems), sp);
    }

    // Free identifiers of E that are not lexically visible, in first-occurrence
    // order — the implicit binders of `{E | P}`.
    std::vector<std::string> infer_binders(const Expr& e) {
        std::vector<std::string> out;
        std::set<std::string> seen;
        std::vector<std::string> local_bound;
        collect_ordered_free(e, local_bound, seen, out);
        if (out.empty())
            fail("parse.no-implicit-binders",
                 "comprehension '{E | P}' binds the free identifiers of E, but every "
                 "identifier in E is already declared; use the explicit form "
                 "'{x, y . P | E}'",
                 e.span);
        return out;
    }

    void collect_ordered_free(const Expr& e, std::vector<std::string>& local_bound,
                              std::set<std::string>& seen, std::vector<std::string>& out) {
        switch (e.kind) {
            case ExprKind::IntLit:
            case ExprKind::BoolLit:
            case ExprKind::Builtin:
                return;
            case ExprKind::Ident: {
                for (const auto& b : local_bound)
                    if (b == e.name) return;
                if (lexically_visible(e.name) || seen.count(e.name)) return;
                seen.insert(e.name);
                out.push_back(e.name);
                return;
            }
            case ExprKind::SetExt:
                for (const auto& el : e.elements)
                    collect_ordered_free(*el, local_bound, seen, out);
                return;
            case ExprKind::Comprehension: {
                std::size_t base = local_bound.size();
                for (const auto& b : e.binders) local_bound.push_back(b);
                if (e.constraint) collect_ordered_free_pred(*e.constraint, local_bound, seen, out);
                if (e.left) collect_ordered_free(*e.left, local_bound, seen, out);
                local_bound.resize(base);
                return;
            }
            default:
                if (e.left) collect_ordered_free(*e.left, local_bound, seen, out);
                if (e.right) collect_ordered_free(*e.right, local_bound, seen, out);
                return;
        }
    }

    void collect_ordered_free_pred(const Pred& p, std::vector<std::string>& local_bound,
                                   std::set<std::string>& seen,
                                   std::vector<std::string>& out) {
        switch (p.kind) {
            case PredKind::Truth:
            case PredKind::Falsity:
                return;
            case PredKind::ForAll:
            case PredKind::Exists: {
                std::size_t base = local_bound.size();
                for (const auto& b : p.binders) local_bound.push_back(b);
                if (p.p1) collect_ordered_free_pred(*p.p1, local_bound, seen, out);
                local_bound.resize(base);
                return;
            }
            default:
                if (p.e1) collect_ordered_free(*p.e1, local_bound, seen, out);
                if (p.e2) collect_ordered_free(*p.e2, local_bound, seen, out);
                if (p.e3) collect_ordered_free(*p.e3, local_bound, seen, out);
                if (p.p1) collect_ordered_free_pred(*p.p1, local_bound, seen, out);
                if (p.p2) collect_ordered_free_pred(*p.p2, local_bound, seen, out);
                return;
        }
    }
};

// ---------------------------------------------------------------------------
// Convenience wrappers
// ---------------------------------------------------------------------------

inline ModelFile parse_model(std::string_view text, std::string file = "",
                             std::set<std::string> ambient = {}) {
    return Parser(lex(text, std::move(file)), std::move(ambient)).parse_model_file();
}
inline BindingDef parse_binding(std::string_view text, std::string file = "") {
    return Parser(lex(text, std::move(file))).parse_binding_file();
}
inline ExprPtr parse_expression(std::string_view text, std::set<std::string> ambient = {}) {
    return Parser(lex(text), std::move(ambient)).parse_expr_eof();
}
inline PredPtr parse_predicate(std::string_view text, std::set<std::string> ambient = {}) {
    return Parser(lex(text), std::move(ambient)).parse_pred_eof();
}
inline TypePtr parse_type(std::string_view text) {
    return Parser(lex(text)).parse_type_eof();
}

}  // namespace ebadt
