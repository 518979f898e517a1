#pragma once

// Model-level structures: contexts (carrier sets, constants, axioms,
// theorems), machines (variables, invariants, events), and instantiation
// bindings mapping abstract names to concrete type-expressions / expressions.

#include <optional>
#include <string>
#include <vector>

#include "ebadt/ast.hpp"

namespace ebadt {

struct Labeled {
    std::string label;
    PredPtr pred;
    SourceSpan span;
};

struct ContextDef {
    std::string name;
    std::vector<std::string> extends;  // other context names
    std::vector<std::string> sets;     // carrier set names
    std::vector<std::string> constants;
    std::vector<Labeled> axioms;
    std::vector<Labeled> theorems;
    SourceSpan span;
};

struct Assignment {
    std::string target;                 // variable being assigned
    ExprPtr index;                      // null for `v := e`; set for `v(i) := e`
    ExprPtr value;
    SourceSpan span;
};

struct EventDef {
    std::string name;
    std::vector<std::string> params;    // `any p, q` (empty for parameterless)
    std::vector<Labeled> guards;        // `where ...` (empty for init)
    std::vector<Assignment> actions;    // `then ...`
    SourceSpan span;
};

struct MachineDef {
    std::string name;
    std::vector<std::string> sees;      // context names
    std::vector<std::string> variables;
    std::vector<Labeled> invariants;
    std::optional<EventDef> init;       // the event named `init`
    std::vector<EventDef> events;       // all non-init events
    SourceSpan span;
};

// One `set NAME := <type-expr>` or `const NAME := <expr>` line of a binding.
struct SetBinding {
    std::string abstract_name;
    TypePtr type;
    SourceSpan span;
};
struct ConstBinding {
    std::string abstract_name;
    ExprPtr expr;
    SourceSpan span;
};

// `instantiate <abstract> with <concrete>` plus the name map.
struct BindingDef {
    std::string abstract_context;
    std::string concrete_context;
    std::vector<SetBinding> sets;
    std::vector<ConstBinding> consts;
    SourceSpan span;
};

// A parsed model file: any mix of contexts and machines (bindings live in
// their own files).
struct ModelFile {
    std::vector<ContextDef> contexts;
    std::vector<MachineDef> machines;
};

}  // namespace ebadt
