#ifndef QUB_INFER_HPP
#define QUB_INFER_HPP

#include <map>
#include <optional>
#include <string>

#include "qub/desugar.hpp"
#include "qub/sharing_context.hpp"
#include "qub/term.hpp"
#include "qub/type.hpp"
#include "qub/unify.hpp"

namespace qub {

struct FreshSupply {
  int n = 0;
  std::string freshType() { return "?t" + std::to_string(n++); }
  std::string freshCtor() { return "?f" + std::to_string(n++); }
};

// Expected-type-propagating inference over types and arrow-constructor
// variables. Throws TypeError (same codes as the checker, plus OCCURS_CHECK).
struct InferResult {
  Substitution sub;
  TypePtr type;            // substitution already applied
  PredicateSet residual;   // undischarged predicates
  SharingContext demand;   // context the term actually demanded
};

InferResult inferTerm(const SharingContext& g, const TermPtr& m,
                      TypePtr expected = nullptr,
                      const std::map<std::string, Scheme>& programDefs = {},
                      const PredicateSet& given = {});

// Quantifies variables free in t and p but not in g, renaming them to
// presentation names; residuals are simplified first. Throws
// TypeError(PREDICATE_REFUTED) when a ground residual is refuted.
Scheme generalize(const SharingContext& g, const PredicateSet& p, const TypePtr& t);

// Fresh instantiation; predicate copies are returned for discharge or
// residuation by the caller.
std::pair<TypePtr, PredicateSet> instantiate(const Scheme& s, FreshSupply& fresh);

// Whole-definition driver. Annotated definitions run inference against the
// instantiated annotation (the emitted scheme is then the annotation,
// verbatim); unannotated ones get a generalized scheme.
Scheme inferDefScheme(const CoreDef& def,
                      const std::map<std::string, Scheme>& programDefs);

}  // namespace qub

#endif
