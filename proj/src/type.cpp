#include "qub/type.hpp"

#include <algorithm>

#include "qub/pretty.hpp"

namespace qub {

const char* errorCodeName(ErrorCode c) {
  switch (c) {
    case ErrorCode::SeparationViolation: return "SEPARATION_VIOLATION";
    case ErrorCode::SharingRequired: return "SHARING_REQUIRED";
    case ErrorCode::ResourceDropped: return "RESOURCE_DROPPED";
    case ErrorCode::ResourceDuplicated: return "RESOURCE_DUPLICATED";
    case ErrorCode::PredicateRefuted: return "PREDICATE_REFUTED";
    case ErrorCode::UnboundVar: return "UNBOUND_VAR";
    case ErrorCode::TypeMismatch: return "TYPE_MISMATCH";
    case ErrorCode::ArrowFlavorMismatch: return "ARROW_FLAVOR_MISMATCH";
    case ErrorCode::OccursCheck: return "OCCURS_CHECK";
    case ErrorCode::DesugarError: return "DESUGAR_ERROR";
  }
  return "UNKNOWN";
}

bool errorCodeFromName(const std::string& name, ErrorCode& out) {
  static const std::map<std::string, ErrorCode> table = {
      {"SEPARATION_VIOLATION", ErrorCode::SeparationViolation},
      {"SHARING_REQUIRED", ErrorCode::SharingRequired},
      {"RESOURCE_DROPPED", ErrorCode::ResourceDropped},
      {"RESOURCE_DUPLICATED", ErrorCode::ResourceDuplicated},
      {"PREDICATE_REFUTED", ErrorCode::PredicateRefuted},
      {"UNBOUND_VAR", ErrorCode::UnboundVar},
      {"TYPE_MISMATCH", ErrorCode::TypeMismatch},
      {"ARROW_FLAVOR_MISMATCH", ErrorCode::ArrowFlavorMismatch},
      {"OCCURS_CHECK", ErrorCode::OccursCheck},
      {"DESUGAR_ERROR", ErrorCode::DesugarError},
  };
  auto it = table.find(name);
  if (it == table.end()) return false;
  out = it->second;
  return true;
}

std::string ArrowFlavor::token() const {
  if (sharing == SharingKind::Separating)
    return restriction == Restriction::Restricted ? "-*" : "-*u";
  return restriction == Restriction::Restricted ? "->>" : "->>u";
}

TypePtr tVar(std::string name) {
  auto t = std::make_shared<Type>();
  t->k = Type::K::Var;
  t->name = std::move(name);
  return t;
}

TypePtr tCon(std::string name, std::vector<TypePtr> args) {
  auto t = std::make_shared<Type>();
  t->k = Type::K::Con;
  t->name = std::move(name);
  t->args = std::move(args);
  return t;
}

TypePtr tArrow(CtorRef ctor, TypePtr dom, TypePtr cod) {
  auto t = std::make_shared<Type>();
  t->k = Type::K::Arrow;
  t->ctor = std::move(ctor);
  t->dom = std::move(dom);
  t->cod = std::move(cod);
  return t;
}

TypePtr tArrow(ArrowFlavor f, TypePtr dom, TypePtr cod) {
  return tArrow(CtorRef::mkConcrete(f), std::move(dom), std::move(cod));
}

TypePtr tInt() { return tCon("Int"); }
TypePtr tString() { return tCon("String"); }
TypePtr tUnit() { return tCon("Unit"); }
TypePtr tFilePath() { return tCon("FilePath"); }
TypePtr tFileHandle() { return tCon("FileHandle"); }
TypePtr tException() { return tCon("Exception"); }
TypePtr tIO(TypePtr a) { return tCon("IO", {std::move(a)}); }
TypePtr tIOF(TypePtr a) { return tCon("IOF", {std::move(a)}); }
TypePtr tEither(TypePtr a, TypePtr b) { return tCon("Either", {std::move(a), std::move(b)}); }
TypePtr tPair(TypePtr a, TypePtr b) { return tCon("Pair", {std::move(a), std::move(b)}); }

bool typeEq(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->k != b->k) return false;
  switch (a->k) {
    case Type::K::Var:
      return a->name == b->name;
    case Type::K::Con: {
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!typeEq(a->args[i], b->args[i])) return false;
      return true;
    }
    case Type::K::Arrow:
      return a->ctor == b->ctor && typeEq(a->dom, b->dom) && typeEq(a->cod, b->cod);
  }
  return false;
}

void freeTypeVars(const TypePtr& t, std::set<std::string>& tvs, std::set<std::string>& cvs) {
  if (!t) return;
  switch (t->k) {
    case Type::K::Var:
      tvs.insert(t->name);
      break;
    case Type::K::Con:
      for (const auto& a : t->args) freeTypeVars(a, tvs, cvs);
      break;
    case Type::K::Arrow:
      if (t->ctor.isVar) cvs.insert(t->ctor.var);
      freeTypeVars(t->dom, tvs, cvs);
      freeTypeVars(t->cod, tvs, cvs);
      break;
  }
}

const std::map<std::string, int>& kindTable() {
  static const std::map<std::string, int> table = {
      {"Int", 0},       {"String", 0},    {"Unit", 0},   {"FilePath", 0},
      {"FileHandle", 0}, {"Exception", 0}, {"IO", 1},     {"IOF", 1},
      {"Either", 2},    {"Pair", 2},
  };
  return table;
}

void kindCheck(const TypePtr& t) {
  if (!t) throw InternalError("kindCheck: null type");
  switch (t->k) {
    case Type::K::Var:
      return;
    case Type::K::Con: {
      auto it = kindTable().find(t->name);
      if (it == kindTable().end())
        throw TypeError(ErrorCode::TypeMismatch, "unknown type constructor " + t->name);
      if ((int)t->args.size() != it->second)
        throw TypeError(ErrorCode::TypeMismatch,
                        t->name + " expects " + std::to_string(it->second) +
                            " arguments, got " + std::to_string(t->args.size()));
      for (const auto& a : t->args) kindCheck(a);
      return;
    }
    case Type::K::Arrow:
      kindCheck(t->dom);
      kindCheck(t->cod);
      return;
  }
}

Predicate Predicate::un(TypePtr t) {
  Predicate p;
  p.k = K::Un;
  p.a = std::move(t);
  return p;
}

Predicate Predicate::geq(TypePtr lhs, TypePtr rhs) {
  Predicate p;
  p.k = K::Geq;
  p.a = std::move(lhs);
  p.b = std::move(rhs);
  return p;
}

Predicate Predicate::shFun(CtorRef c) {
  Predicate p;
  p.k = K::ShFun;
  p.ctor = std::move(c);
  return p;
}

Predicate Predicate::seFun(CtorRef c) {
  Predicate p;
  p.k = K::SeFun;
  p.ctor = std::move(c);
  return p;
}

bool Predicate::operator==(const Predicate& o) const {
  if (k != o.k) return false;
  switch (k) {
    case K::Un: return typeEq(a, o.a);
    case K::Geq: return typeEq(a, o.a) && typeEq(b, o.b);
    case K::ShFun:
    case K::SeFun: return ctor == o.ctor;
  }
  return false;
}

std::string Predicate::str() const { return pretty(*this); }

PredicateSet::PredicateSet(std::initializer_list<Predicate> ps) {
  for (const auto& p : ps) add(p);
}

void PredicateSet::add(const Predicate& p) {
  if (!contains(p)) items_.push_back(p);
}

void PredicateSet::addAll(const PredicateSet& ps) {
  for (const auto& p : ps.items()) add(p);
}

bool PredicateSet::contains(const Predicate& p) const {
  return std::any_of(items_.begin(), items_.end(),
                     [&](const Predicate& q) { return q == p; });
}

std::string PredicateSet::str() const {
  std::string out = "(";
  bool first = true;
  for (const auto& p : items_) {
    if (!first) out += ", ";
    out += p.str();
    first = false;
  }
  return out + ")";
}

void freeVarsOfPred(const Predicate& p, std::set<std::string>& tvs, std::set<std::string>& cvs) {
  switch (p.k) {
    case Predicate::K::Un:
      freeTypeVars(p.a, tvs, cvs);
      break;
    case Predicate::K::Geq:
      freeTypeVars(p.a, tvs, cvs);
      freeTypeVars(p.b, tvs, cvs);
      break;
    case Predicate::K::ShFun:
    case Predicate::K::SeFun:
      if (p.ctor.isVar) cvs.insert(p.ctor.var);
      break;
  }
}

void freeVarsOfScheme(const Scheme& s, std::set<std::string>& tvs, std::set<std::string>& cvs) {
  std::set<std::string> btv, bcv;
  for (const auto& q : s.binders)
    (q.kind == VarKind::TypeVar ? btv : bcv).insert(q.name);
  std::set<std::string> t0, c0;
  freeTypeVars(s.body, t0, c0);
  for (const auto& p : s.preds.items()) freeVarsOfPred(p, t0, c0);
  for (const auto& v : t0)
    if (!btv.count(v)) tvs.insert(v);
  for (const auto& v : c0)
    if (!bcv.count(v)) cvs.insert(v);
}

namespace {

// Alpha-equality via canonical renaming of binders in order of appearance.
TypePtr canonType(const TypePtr& t, const std::map<std::string, std::string>& tm,
                  const std::map<std::string, std::string>& cm) {
  if (!t) return t;
  switch (t->k) {
    case Type::K::Var: {
      auto it = tm.find(t->name);
      return tVar(it == tm.end() ? t->name : it->second);
    }
    case Type::K::Con: {
      std::vector<TypePtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) args.push_back(canonType(a, tm, cm));
      return tCon(t->name, std::move(args));
    }
    case Type::K::Arrow: {
      CtorRef c = t->ctor;
      if (c.isVar) {
        auto it = cm.find(c.var);
        if (it != cm.end()) c.var = it->second;
      }
      return tArrow(c, canonType(t->dom, tm, cm), canonType(t->cod, tm, cm));
    }
  }
  return t;
}

Scheme canonScheme(const Scheme& s) {
  std::map<std::string, std::string> tm, cm;
  int n = 0;
  std::vector<Quantifier> bs;
  for (const auto& q : s.binders) {
    std::string fresh = "%" + std::to_string(n++);
    (q.kind == VarKind::TypeVar ? tm : cm)[q.name] = fresh;
    bs.push_back({fresh, q.kind});
  }
  PredicateSet ps;
  for (const auto& p : s.preds.items()) {
    Predicate q = p;
    if (q.a) q.a = canonType(q.a, tm, cm);
    if (q.b) q.b = canonType(q.b, tm, cm);
    if (q.ctor.isVar) {
      auto it = cm.find(q.ctor.var);
      if (it != cm.end()) q.ctor.var = it->second;
    }
    ps.add(q);
  }
  return Scheme(std::move(bs), std::move(ps), canonType(s.body, tm, cm));
}

}  // namespace

bool schemeAlphaEq(const Scheme& a, const Scheme& b) {
  Scheme ca = canonScheme(a), cb = canonScheme(b);
  if (ca.binders.size() != cb.binders.size()) return false;
  for (size_t i = 0; i < ca.binders.size(); ++i)
    if (!(ca.binders[i] == cb.binders[i])) return false;
  if (ca.preds.size() != cb.preds.size()) return false;
  for (const auto& p : ca.preds.items())
    if (!cb.preds.contains(p)) return false;
  return typeEq(ca.body, cb.body);
}

}  // namespace qub
