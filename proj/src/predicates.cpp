#include "qub/predicates.hpp"

namespace qub {

namespace {

Entailment combine(Entailment a, Entailment b) {
  if (a == Entailment::Refuted || b == Entailment::Refuted) return Entailment::Refuted;
  if (a == Entailment::Residual || b == Entailment::Residual) return Entailment::Residual;
  return Entailment::Proved;
}

}  // namespace

// Ground unrestrictedness table. Int, String, Unit, FilePath and Exception
// hold no resources; Either and pairs are as unrestricted as their
// components; FileHandle and in-flight IO/IOF actions are restricted. An
// arrow is unrestricted exactly when its constructor says so.
Entailment groundUn(const TypePtr& t) {
  switch (t->k) {
    case Type::K::Var:
      return Entailment::Residual;
    case Type::K::Con: {
      const std::string& n = t->name;
      if (n == "Int" || n == "String" || n == "Unit" || n == "FilePath" ||
          n == "Exception")
        return Entailment::Proved;
      if (n == "FileHandle" || n == "IO" || n == "IOF") return Entailment::Refuted;
      if (n == "Either" || n == "Pair")
        return combine(groundUn(t->args[0]), groundUn(t->args[1]));
      return Entailment::Residual;
    }
    case Type::K::Arrow:
      if (t->ctor.isVar) return Entailment::Residual;
      return t->ctor.flavor.restriction == Restriction::Unrestricted
                 ? Entailment::Proved
                 : Entailment::Refuted;
  }
  return Entailment::Residual;
}

namespace {

bool typeGround(const TypePtr& t) {
  std::set<std::string> tvs, cvs;
  freeTypeVars(t, tvs, cvs);
  return tvs.empty() && cvs.empty();
}

Entailment entailsUn(const PredicateSet& p, const TypePtr& t) {
  Entailment g = groundUn(t);
  if (g != Entailment::Residual) return g;
  if (p.contains(Predicate::un(t))) return Entailment::Proved;
  // Un of a compound may follow from hypotheses about the parts.
  if (t->k == Type::K::Con && (t->name == "Either" || t->name == "Pair")) {
    Entailment e = combine(entailsUn(p, t->args[0]), entailsUn(p, t->args[1]));
    if (e == Entailment::Proved) return e;
  }
  return typeGround(t) ? Entailment::Refuted : Entailment::Residual;
}

// tau >= tau' reads as: tau admits at least the structural rules of tau'.
// On ground types this is a rank comparison with Un as the top.
Entailment entailsGeqDepth(const PredicateSet& p, const TypePtr& lhs,
                           const TypePtr& rhs, int depth) {
  if (typeEq(lhs, rhs)) return Entailment::Proved;
  Entailment unL = entailsUn(p, lhs);
  if (unL == Entailment::Proved) return Entailment::Proved;
  Entailment unR = entailsUn(p, rhs);
  // anything admits at least the rules of a restricted type
  if (unR == Entailment::Refuted) return Entailment::Proved;
  if (unL == Entailment::Refuted && unR == Entailment::Proved) return Entailment::Refuted;
  if (p.contains(Predicate::geq(lhs, rhs))) return Entailment::Proved;
  // transitivity through hypotheses, depth-bounded to cut cycles
  if (depth > 0) {
    for (const auto& q : p.items()) {
      if (q.k != Predicate::K::Geq) continue;
      if (typeEq(q.a, lhs) && !typeEq(q.b, lhs) &&
          entailsGeqDepth(p, q.b, rhs, depth - 1) == Entailment::Proved)
        return Entailment::Proved;
    }
  }
  if (typeGround(lhs) && typeGround(rhs))
    return Entailment::Refuted;  // both ranks known, comparison failed above
  return Entailment::Residual;
}

Entailment entailsGeq(const PredicateSet& p, const TypePtr& lhs, const TypePtr& rhs) {
  return entailsGeqDepth(p, lhs, rhs, 8);
}

Entailment entailsFlavor(const PredicateSet& p, const CtorRef& c, SharingKind want) {
  if (!c.isVar)
    return c.flavor.sharing == want ? Entailment::Proved : Entailment::Refuted;
  Predicate same = want == SharingKind::Sharing ? Predicate::shFun(c) : Predicate::seFun(c);
  Predicate other = want == SharingKind::Sharing ? Predicate::seFun(c) : Predicate::shFun(c);
  if (p.contains(same)) return Entailment::Proved;
  if (p.contains(other)) return Entailment::Refuted;
  return Entailment::Residual;
}

}  // namespace

Entailment entails(const PredicateSet& p, const Predicate& q) {
  switch (q.k) {
    case Predicate::K::Un:
      return entailsUn(p, q.a);
    case Predicate::K::Geq:
      return entailsGeq(p, q.a, q.b);
    case Predicate::K::ShFun:
      return entailsFlavor(p, q.ctor, SharingKind::Sharing);
    case Predicate::K::SeFun:
      return entailsFlavor(p, q.ctor, SharingKind::Separating);
  }
  return Entailment::Residual;
}

EntailAllResult entailsAll(const PredicateSet& p, const PredicateSet& qs) {
  EntailAllResult r{Entailment::Proved, {}, std::nullopt};
  for (const auto& q : qs.items()) {
    switch (entails(p, q)) {
      case Entailment::Proved:
        break;
      case Entailment::Residual:
        r.residuals.add(q);
        if (r.e == Entailment::Proved) r.e = Entailment::Residual;
        break;
      case Entailment::Refuted:
        r.e = Entailment::Refuted;
        if (!r.refuted) r.refuted = q;
        break;
    }
    if (r.e == Entailment::Refuted) break;
  }
  return r;
}

EntailAllResult contextGeq(const PredicateSet& p, const SharingContext& g,
                           const TypePtr& arrowType) {
  PredicateSet goals;
  for (const auto& [name, e] : g.entries())
    goals.add(Predicate::geq(e.type, arrowType));
  return entailsAll(p, goals);
}

SimplifyResult simplify(const PredicateSet& p) {
  SimplifyResult out;
  const auto& items = p.items();
  std::vector<bool> dropped(items.size(), false);
  for (size_t i = 0; i < items.size(); ++i) {
    PredicateSet rest;
    for (size_t j = 0; j < items.size(); ++j)
      if (j != i && !dropped[j]) rest.add(items[j]);
    Entailment e = entails(rest, items[i]);
    if (e == Entailment::Proved) {
      dropped[i] = true;
      continue;
    }
    if (e == Entailment::Refuted && !out.refuted) out.refuted = items[i];
    out.preds.add(items[i]);
  }
  return out;
}

}  // namespace qub
