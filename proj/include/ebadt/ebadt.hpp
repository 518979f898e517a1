#pragma once

// Umbrella header: the full bounded checking toolkit.
//
//   span        — source locations and diagnostics
//   ast         — types, expressions, predicates
//   model       — contexts, machines, instantiation bindings
//   lexer       — ASCII tokens
//   parser      — text to syntax trees
//   printer     — syntax trees back to text (round-trip stable)
//   value       — canonical finite values
//   interp      — bounded evaluation and the enumeration plan engine
//   subst       — capture-avoiding substitution
//   wellformed  — name resolution and structural checks
//   instantiate — applying a binding to contexts and machines
//   obligations — proof-obligation generation and exhaustive discharge
//   explore     — breadth-first state-space search
//   report      — plain-text rendering and exit-code policy

#include "ebadt/span.hpp"
#include "ebadt/ast.hpp"
#include "ebadt/model.hpp"
#include "ebadt/lexer.hpp"
#include "ebadt/parser.hpp"
#include "ebadt/printer.hpp"
#include "ebadt/value.hpp"
#include "ebadt/interp.hpp"
#include "ebadt/subst.hpp"
#include "ebadt/wellformed.hpp"
#include "ebadt/instantiate.hpp"
#include "ebadt/obligations.hpp"
#include "ebadt/explore.hpp"
#include "ebadt/report.hpp"
