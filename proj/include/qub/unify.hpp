#ifndef QUB_UNIFY_HPP
#define QUB_UNIFY_HPP

#include <map>
#include <set>
#include <string>

#include "qub/sharing_context.hpp"
#include "qub/type.hpp"

namespace qub {

// Idempotent, kind-preserving substitution over type variables and arrow
// constructor variables. Inference metavariables are names spelled "?tN" /
// "?fN"; bindings for rigid names are equally supported (instantiation).
class Substitution {
 public:
  Substitution() = default;

  TypePtr apply(const TypePtr& t) const;
  Predicate apply(const Predicate& p) const;
  PredicateSet apply(const PredicateSet& ps) const;
  Scheme apply(const Scheme& s) const;
  CtorRef apply(const CtorRef& c) const;
  SharingContext apply(const SharingContext& g) const;

  // bind var -> type, normalizing existing entries so the map stays
  // idempotent; occurs-check enforced.
  void bindType(const std::string& v, const TypePtr& t);
  void bindCtor(const std::string& v, const CtorRef& c);

  bool boundType(const std::string& v) const { return types_.count(v) != 0; }
  bool boundCtor(const std::string& v) const { return ctors_.count(v) != 0; }
  const std::map<std::string, TypePtr>& typeMap() const { return types_; }
  const std::map<std::string, CtorRef>& ctorMap() const { return ctors_; }

 private:
  std::map<std::string, TypePtr> types_;
  std::map<std::string, CtorRef> ctors_;
};

// Most general unifier extending `sub` in place. `flexible` decides which
// names may be bound: metavariables only (inference) or an explicit set
// (instantiation matching in the checker).
struct FlexSet {
  bool metasOnly = true;
  std::set<std::string> typeVars;  // additionally flexible names
  std::set<std::string> ctorVars;

  bool typeFlex(const std::string& n) const {
    return (metasOnly && isMetaName(n)) || typeVars.count(n);
  }
  bool ctorFlex(const std::string& n) const {
    return (metasOnly && isMetaName(n)) || ctorVars.count(n);
  }
};

void unify(const TypePtr& a, const TypePtr& b, Substitution& sub, const FlexSet& flex,
           Span span = {});

}  // namespace qub

#endif
