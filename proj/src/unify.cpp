#include "qub/unify.hpp"

#include "qub/pretty.hpp"

namespace qub {

TypePtr Substitution::apply(const TypePtr& t) const {
  if (!t) return t;
  switch (t->k) {
    case Type::K::Var: {
      auto it = types_.find(t->name);
      return it == types_.end() ? t : it->second;
    }
    case Type::K::Con: {
      std::vector<TypePtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (const auto& a : t->args) {
        TypePtr na = apply(a);
        changed = changed || na.get() != a.get();
        args.push_back(std::move(na));
      }
      return changed ? tCon(t->name, std::move(args)) : t;
    }
    case Type::K::Arrow: {
      CtorRef c = apply(t->ctor);
      TypePtr d = apply(t->dom), co = apply(t->cod);
      if (c == t->ctor && d.get() == t->dom.get() && co.get() == t->cod.get()) return t;
      return tArrow(c, d, co);
    }
  }
  return t;
}

CtorRef Substitution::apply(const CtorRef& c) const {
  if (!c.isVar) return c;
  auto it = ctors_.find(c.var);
  return it == ctors_.end() ? c : it->second;
}

Predicate Substitution::apply(const Predicate& p) const {
  Predicate q = p;
  if (q.a) q.a = apply(q.a);
  if (q.b) q.b = apply(q.b);
  q.ctor = apply(q.ctor);
  return q;
}

PredicateSet Substitution::apply(const PredicateSet& ps) const {
  PredicateSet out;
  for (const auto& p : ps.items()) out.add(apply(p));
  return out;
}

Scheme Substitution::apply(const Scheme& s) const {
  // quantified names are expected to be disjoint from the domain
  return Scheme(s.binders, apply(s.preds), apply(s.body));
}

SharingContext Substitution::apply(const SharingContext& g) const {
  SharingContext out;
  for (const auto& [name, e] : g.entries())
    out = out.withEntry(name, e.sharing, apply(e.type));
  return out;
}

namespace {
bool occurs(const std::string& v, const TypePtr& t) {
  std::set<std::string> tvs, cvs;
  freeTypeVars(t, tvs, cvs);
  return tvs.count(v) != 0;
}
}  // namespace

void Substitution::bindType(const std::string& v, const TypePtr& t0) {
  TypePtr t = apply(t0);
  if (t->k == Type::K::Var && t->name == v) return;
  if (occurs(v, t))
    throw TypeError(ErrorCode::OccursCheck,
                    "occurs check: " + v + " in " + pretty(t));
  // keep idempotence: substitute v inside existing images
  Substitution single;
  single.types_[v] = t;
  for (auto& [k, img] : types_) img = single.apply(img);
  types_[v] = t;
}

void Substitution::bindCtor(const std::string& v, const CtorRef& c) {
  if (c.isVar && c.var == v) return;
  Substitution single;
  single.ctors_[v] = c;
  for (auto& [k, img] : types_) img = single.apply(img);
  for (auto& [k, img] : ctors_) img = single.apply(img);
  ctors_[v] = c;
}

namespace {

void unifyCtor(const CtorRef& a, const CtorRef& b, Substitution& sub, const FlexSet& flex,
               Span span) {
  CtorRef ca = sub.apply(a), cb = sub.apply(b);
  if (ca == cb) return;
  if (ca.isVar && flex.ctorFlex(ca.var)) {
    sub.bindCtor(ca.var, cb);
    return;
  }
  if (cb.isVar && flex.ctorFlex(cb.var)) {
    sub.bindCtor(cb.var, ca);
    return;
  }
  if (!ca.isVar && !cb.isVar) {
    throw TypeError(ErrorCode::ArrowFlavorMismatch,
                    "arrow constructors differ: " + ca.flavor.token() + " vs " +
                        cb.flavor.token(),
                    span);
  }
  throw TypeError(ErrorCode::TypeMismatch,
                  "cannot unify arrow constructor " + ca.str() + " with " + cb.str(),
                  span);
}

}  // namespace

void unify(const TypePtr& a0, const TypePtr& b0, Substitution& sub, const FlexSet& flex,
           Span span) {
  TypePtr a = sub.apply(a0);
  TypePtr b = sub.apply(b0);
  if (typeEq(a, b)) return;
  if (a->k == Type::K::Var && flex.typeFlex(a->name)) {
    sub.bindType(a->name, b);
    return;
  }
  if (b->k == Type::K::Var && flex.typeFlex(b->name)) {
    sub.bindType(b->name, a);
    return;
  }
  if (a->k == Type::K::Con && b->k == Type::K::Con && a->name == b->name &&
      a->args.size() == b->args.size()) {
    for (size_t i = 0; i < a->args.size(); ++i)
      unify(a->args[i], b->args[i], sub, flex, span);
    return;
  }
  if (a->k == Type::K::Arrow && b->k == Type::K::Arrow) {
    unifyCtor(a->ctor, b->ctor, sub, flex, span);
    unify(a->dom, b->dom, sub, flex, span);
    unify(a->cod, b->cod, sub, flex, span);
    return;
  }
  throw TypeError(ErrorCode::TypeMismatch,
                  "cannot unify " + pretty(a) + " with " + pretty(b), span);
}

}  // namespace qub
