#pragma once

// Pretty-printer producing canonical ASCII notation.  Parenthesization is
// driven by the same precedence levels the parser uses, so
// parse(print(parse(text))) is structurally identical to parse(text).
// Comprehensions always print in the explicit-binder form.

#include <string>

#include "ebadt/ast.hpp"
#include "ebadt/model.hpp"

namespace ebadt {

namespace printer_detail {

// Expression precedence levels (see parser.hpp).  An operand is wrapped in
// parentheses when its own level is strictly looser than the level its
// position requires.
inline int expr_level(const Expr& e) {
    switch (e.kind) {
        case ExprKind::FunSpace: return 0;
        case ExprKind::Binary:
            switch (e.bin_op) {
                case BinOp::Union:
                case BinOp::Diff:
                case BinOp::Override:
                case BinOp::DomSub: return 1;
                case BinOp::Inter: return 2;
                case BinOp::Plus:
                case BinOp::Minus: return 4;
                case BinOp::Cross: return 5;
                case BinOp::Image: return 7;
            }
            return 8;
        case ExprKind::Interval: return 3;
        case ExprKind::Maplet: return 6;
        case ExprKind::Apply: return 7;
        case ExprKind::IntLit:
            return e.int_value < 0 ? 7 : 8;  // -3 must not absorb a following postfix
        default: return 8;
    }
}

inline const char* bin_op_text(BinOp op) {
    switch (op) {
        case BinOp::Union: return " \\/ ";
        case BinOp::Inter: return " /\\ ";
        case BinOp::Diff: return " \\ ";
        case BinOp::Cross: return " ** ";
        case BinOp::Override: return " <+ ";
        case BinOp::DomSub: return " <<| ";
        case BinOp::Plus: return " + ";
        case BinOp::Minus: return " - ";
        case BinOp::Image: return "[";  // handled specially
    }
    return "?";
}

inline const char* fun_class_text(FunClass c) {
    switch (c) {
        case FunClass::Total: return " --> ";
        case FunClass::Partial: return " +-> ";
        case FunClass::TotalInjective: return " >-> ";
        case FunClass::Relation: return " <-> ";
    }
    return "?";
}

}  // namespace printer_detail

void print_expr(const Expr& e, int min_level, std::string& out);
void print_pred(const Pred& p, int min_level, std::string& out);

inline void print_expr(const Expr& e, int min_level, std::string& out) {
    using namespace printer_detail;
    int lvl = expr_level(e);
    bool parens = lvl < min_level;
    if (parens) out += '(';
    switch (e.kind) {
        case ExprKind::IntLit: out += std::to_string(e.int_value); break;
        case ExprKind::BoolLit: out += e.bool_value ? "TRUE" : "FALSE"; break;
        case ExprKind::Ident: out += e.name; break;
        case ExprKind::Builtin:
            out += e.builtin == BuiltinSet::Int ? "INT"
                 : e.builtin == BuiltinSet::Nat ? "NAT" : "BOOL";
            break;
        case ExprKind::Maplet:
            print_expr(*e.left, 6, out);
            out += " |-> ";
            print_expr(*e.right, 7, out);
            break;
        case ExprKind::Interval:
            print_expr(*e.left, 4, out);
            out += " .. ";
            print_expr(*e.right, 4, out);
            break;
        case ExprKind::FunSpace:
            print_expr(*e.left, 1, out);
            out += fun_class_text(e.fun_class);
            print_expr(*e.right, 0, out);
            break;
        case ExprKind::Binary:
            if (e.bin_op == BinOp::Image) {
                print_expr(*e.left, 7, out);
                out += '[';
                print_expr(*e.right, 0, out);
                out += ']';
            } else {
                print_expr(*e.left, lvl, out);
                out += bin_op_text(e.bin_op);
                print_expr(*e.right, lvl + 1, out);
            }
            break;
        case ExprKind::Unary:
            out += e.un_op == UnOp::Pow ? "POW" : e.un_op == UnOp::Dom ? "dom" : "ran";
            out += '(';
            print_expr(*e.left, 0, out);
            out += ')';
            break;
        case ExprKind::Apply:
            print_expr(*e.left, 7, out);
            out += '(';
            print_expr(*e.right, 0, out);
            out += ')';
            break;
        case ExprKind::SetExt: {
            out += '{';
            bool first = true;
            for (const auto& el : e.elements) {
                if (!first) out += ", ";
                first = false;
                print_expr(*el, 0, out);
            }
            out += '}';
            break;
        }
        case ExprKind::Comprehension: {
            out += '{';
            bool first = true;
            for (const auto& b : e.binders) {
                if (!first) out += ", ";
                first = false;
                out += b;
            }
            out += " . ";
            print_pred(*e.constraint, 0, out);
            out += " | ";
            print_expr(*e.left, 0, out);
            out += '}';
            break;
        }
    }
    if (parens) out += ')';
}

namespace printer_detail {
// Predicate levels: => 0, or 1, & 2, not 3, atoms 4; quantifiers 0.
inline int pred_level(const Pred& p) {
    switch (p.kind) {
        case PredKind::Implies:
        case PredKind::ForAll:
        case PredKind::Exists: return 0;
        case PredKind::Or: return 1;
        case PredKind::And: return 2;
        case PredKind::Not: return 3;
        default: return 4;
    }
}
}  // namespace printer_detail

inline void print_pred(const Pred& p, int min_level, std::string& out) {
    using namespace printer_detail;
    int lvl = pred_level(p);
    bool parens = lvl < min_level;
    if (parens) out += '(';
    switch (p.kind) {
        case PredKind::Truth: out += "btrue"; break;
        case PredKind::Falsity: out += "bfalse"; break;
        case PredKind::Equal:
        case PredKind::NotEqual:
        case PredKind::Member:
        case PredKind::NotMember:
        case PredKind::Subset:
        case PredKind::Less:
        case PredKind::LessEq: {
            print_expr(*p.e1, 0, out);
            switch (p.kind) {
                case PredKind::Equal: out += " = "; break;
                case PredKind::NotEqual: out += " /= "; break;
                case PredKind::Member: out += " : "; break;
                case PredKind::NotMember: out += " /: "; break;
                case PredKind::Subset: out += " <: "; break;
                case PredKind::Less: out += " < "; break;
                case PredKind::LessEq: out += " <= "; break;
                default: break;
            }
            print_expr(*p.e2, 0, out);
            break;
        }
        case PredKind::FunClassP:
            print_expr(*p.e1, 0, out);
            out += " : ";
            print_expr(*p.e2, 1, out);
            out += fun_class_text(p.fun_class);
            print_expr(*p.e3, 0, out);
            break;
        case PredKind::And:
            print_pred(*p.p1, 2, out);
            out += " & ";
            print_pred(*p.p2, 3, out);
            break;
        case PredKind::Or:
            print_pred(*p.p1, 1, out);
            out += " or ";
            print_pred(*p.p2, 2, out);
            break;
        case PredKind::Implies:
            print_pred(*p.p1, 1, out);
            out += " => ";
            print_pred(*p.p2, 0, out);
            break;
        case PredKind::Not:
            out += "not ";
            print_pred(*p.p1, 4, out);
            break;
        case PredKind::ForAll:
        case PredKind::Exists: {
            out += p.kind == PredKind::ForAll ? '!' : '#';
            bool first = true;
            for (const auto& b : p.binders) {
                if (!first) out += ", ";
                first = false;
                out += b;
            }
            out += " . ";
            print_pred(*p.p1, 0, out);
            break;
        }
    }
    if (parens) out += ')';
}

inline std::string to_string(const Expr& e) {
    std::string out;
    print_expr(e, 0, out);
    return out;
}
inline std::string to_string(const Pred& p) {
    std::string out;
    print_pred(p, 0, out);
    return out;
}

inline std::string to_string(const TypeExpr& t) {
    switch (t.kind) {
        case TypeKind::Int: return "INT";
        case TypeKind::Bool: return "BOOL";
        case TypeKind::Carrier: return t.carrier;
        case TypeKind::Power: return "POW(" + to_string(*t.left) + ")";
        case TypeKind::Product: {
            // Products associate left, so only a product on the right needs parens.
            std::string l = to_string(*t.left);
            std::string r = to_string(*t.right);
            if (t.right->kind == TypeKind::Product) r = "(" + r + ")";
            return l + " ** " + r;
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Model-level printing (the `fmt` output)
// ---------------------------------------------------------------------------

namespace printer_detail {
inline void print_name_list(const std::vector<std::string>& names, std::string& out) {
    bool first = true;
    for (const auto& n : names) {
        if (!first) out += ", ";
        first = false;
        out += n;
    }
}
inline void print_labeled_list(const std::vector<Labeled>& items, std::string& out) {
    for (const auto& it : items) {
        out += "        " + it.label + " : ";
        print_pred(*it.pred, 0, out);
        out += '\n';
    }
}
}  // namespace printer_detail

inline std::string to_string(const ContextDef& c) {
    using namespace printer_detail;
    std::string out = "context " + c.name + "\n";
    if (!c.extends.empty()) {
        out += "    extends ";
        print_name_list(c.extends, out);
        out += '\n';
    }
    if (!c.sets.empty()) {
        out += "    sets ";
        print_name_list(c.sets, out);
        out += '\n';
    }
    if (!c.constants.empty()) {
        out += "    constants ";
        print_name_list(c.constants, out);
        out += '\n';
    }
    if (!c.axioms.empty()) {
        out += "    axioms\n";
        print_labeled_list(c.axioms, out);
    }
    if (!c.theorems.empty()) {
        out += "    theorems\n";
        print_labeled_list(c.theorems, out);
    }
    out += "end\n";
    return out;
}

inline std::string to_string(const EventDef& ev) {
    using namespace printer_detail;
    std::string out = "        " + ev.name + "\n";
    if (!ev.params.empty()) {
        out += "            any ";
        print_name_list(ev.params, out);
        out += '\n';
    }
    if (!ev.guards.empty()) {
        out += "            where\n";
        for (const auto& g : ev.guards) {
            out += "                " + g.label + " : ";
            print_pred(*g.pred, 0, out);
            out += '\n';
        }
    }
    out += "            then\n";
    for (const auto& a : ev.actions) {
        out += "                " + a.target;
        if (a.index) {
            out += '(';
            print_expr(*a.index, 0, out);
            out += ')';
        }
        out += " := ";
        print_expr(*a.value, 0, out);
        out += '\n';
    }
    out += "            end\n";
    return out;
}

inline std::string to_string(const MachineDef& m) {
    using namespace printer_detail;
    std::string out = "machine " + m.name + "\n";
    if (!m.sees.empty()) {
        out += "    sees ";
        print_name_list(m.sees, out);
        out += '\n';
    }
    if (!m.variables.empty()) {
        out += "    variables ";
        print_name_list(m.variables, out);
        out += '\n';
    }
    if (!m.invariants.empty()) {
        out += "    invariants\n";
        print_labeled_list(m.invariants, out);
    }
    out += "    events\n";
    if (m.init) out += to_string(*m.init);
    for (const auto& ev : m.events) out += to_string(ev);
    out += "end\n";
    return out;
}

inline std::string to_string(const ModelFile& f) {
    std::string out;
    bool first = true;
    for (const auto& c : f.contexts) {
        if (!first) out += '\n';
        first = false;
        out += to_string(c);
    }
    for (const auto& m : f.machines) {
        if (!first) out += '\n';
        first = false;
        out += to_string(m);
    }
    return out;
}

inline std::string to_string(const BindingDef& b) {
    std::string out = "instantiate " + b.abstract_context + " with " + b.concrete_context + "\n";
    for (const auto& s : b.sets)
        out += "set " + s.abstract_name + " := " + to_string(*s.type) + "\n";
    for (const auto& c : b.consts) {
        out += "const " + c.abstract_name + " := ";
        print_expr(*c.expr, 0, out);
        out += '\n';
    }
    return out;
}

}  // namespace ebadt
