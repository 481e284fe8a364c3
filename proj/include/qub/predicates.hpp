#ifndef QUB_PREDICATES_HPP
#define QUB_PREDICATES_HPP

#include "qub/sharing_context.hpp"
#include "qub/type.hpp"

namespace qub {

// Entailment is three-valued: `Residual` means the goal mentions type or
// constructor variables and is neither provable nor refutable from P; such
// goals are retained in inferred schemes rather than rejected.
enum class Entailment { Proved, Residual, Refuted };

Entailment entails(const PredicateSet& p, const Predicate& q);

struct EntailAllResult {
  Entailment e;
  PredicateSet residuals;          // goals left open (when e == Residual)
  std::optional<Predicate> refuted;  // first refuted goal (when e == Refuted)
};

EntailAllResult entailsAll(const PredicateSet& p, const PredicateSet& qs);

// The context-vs-constructor premise of the lambda rules, lifted pointwise:
// every type bound in g must admit at least the structural rules of the
// arrow type being introduced.
EntailAllResult contextGeq(const PredicateSet& p, const SharingContext& g,
                           const TypePtr& arrowType);

// Removes proved members and duplicates. Ground refuted members are reported
// through `refuted` (callers turn them into errors); the returned set and the
// input entail each other.
struct SimplifyResult {
  PredicateSet preds;
  std::optional<Predicate> refuted;
};
SimplifyResult simplify(const PredicateSet& p);

// Ground unrestrictedness (no hypotheses): Proved / Refuted, or Residual when
// the type mentions variables.
Entailment groundUn(const TypePtr& t);

}  // namespace qub

#endif
