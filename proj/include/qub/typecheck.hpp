#ifndef QUB_TYPECHECK_HPP
#define QUB_TYPECHECK_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qub/derivation.hpp"
#include "qub/desugar.hpp"
#include "qub/sharing_context.hpp"
#include "qub/term.hpp"
#include "qub/type.hpp"

namespace qub {

// Syntax-directed checker for the declarative system: builds a full
// derivation whose conclusion is exactly (p, g, m, s), or throws TypeError.
// Structural rules are folded in: contexts are split at applications by
// free-variable ownership, contraction of unrestricted variables is implicit
// (recorded as CTR nodes), and unused variables are discharged by weakening
// where a weakening rule applies.
Derivation check(const PredicateSet& p, const SharingContext& g, const TermPtr& m,
                 const Scheme& s,
                 const std::map<std::string, Scheme>& programDefs = {});

struct CheckedDef {
  std::string name;
  Scheme scheme;
  TermPtr elaborated;  // generic bind/return resolved; runnable
  Derivation derivation;
  bool fromInference = false;
  std::optional<TypeError> error;
  bool ok() const { return !error.has_value(); }
};

// Checks a desugared program definition by definition. Annotated definitions
// are checked against their annotation; unannotated ones are routed through
// inference and the result is re-checked (the checker stays the oracle).
// Previously checked definitions are in scope as closed bindings.
std::vector<CheckedDef> checkProgram(const std::vector<CoreDef>& defs);

}  // namespace qub

#endif
