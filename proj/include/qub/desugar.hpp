#ifndef QUB_DESUGAR_HPP
#define QUB_DESUGAR_HPP

#include <optional>
#include <string>
#include <vector>

#include "qub/term.hpp"

namespace qub {

// A top-level definition in core form: do-blocks, pairs and pair
// destructuring are gone, all binders are distinct, stdlib names are
// resolved to Builtin nodes.
struct CoreDef {
  std::string name;
  std::optional<Scheme> annotation;
  TermPtr body;
  Span span;
};

// Alpha-renames so no binder shadows another name anywhere in the program,
// then desugars. Do-notation lowers to the generic `bind` builtin (the
// IO/IOF choice is made later, from the type of the left operand); left-hand
// side parameters become lambdas whose flavor follows the annotation's
// arrows (separating when unannotated).
// Throws SyntaxError (DESUGAR class) and TypeError for bad annotations.
std::vector<CoreDef> desugar(const SurfaceProgram& p);

// Desugars a bare expression (no program around it); used by tests.
TermPtr desugarExpr(const TermPtr& t);

}  // namespace qub

#endif
