#ifndef QUB_TYPE_HPP
#define QUB_TYPE_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qub/basic.hpp"

namespace qub {

// ---------------------------------------------------------------------------
// Arrow constructors.
//
// Function types are applications of a binary constructor that carries two
// independent flags: whether the function shares resources with its argument
// and whether the closure itself is a restricted value. Exactly four concrete
// constructors exist; inference additionally works with constructor
// variables that range over them.
// ---------------------------------------------------------------------------

enum class SharingKind { Separating, Sharing };
enum class Restriction { Restricted, Unrestricted };

struct ArrowFlavor {
  SharingKind sharing = SharingKind::Separating;
  Restriction restriction = Restriction::Restricted;

  bool operator==(const ArrowFlavor& o) const {
    return sharing == o.sharing && restriction == o.restriction;
  }
  // Surface token: -* ->> -*u ->>u
  std::string token() const;
};

inline ArrowFlavor sepRestricted() { return {SharingKind::Separating, Restriction::Restricted}; }
inline ArrowFlavor shRestricted() { return {SharingKind::Sharing, Restriction::Restricted}; }
inline ArrowFlavor sepUnrestricted() { return {SharingKind::Separating, Restriction::Unrestricted}; }
inline ArrowFlavor shUnrestricted() { return {SharingKind::Sharing, Restriction::Unrestricted}; }

// A concrete arrow constructor or a constructor variable.
struct CtorRef {
  bool isVar = false;
  std::string var;     // when isVar
  ArrowFlavor flavor;  // when !isVar

  static CtorRef mkVar(std::string name) {
    CtorRef c;
    c.isVar = true;
    c.var = std::move(name);
    return c;
  }
  static CtorRef mkConcrete(ArrowFlavor f) {
    CtorRef c;
    c.flavor = f;
    return c;
  }
  bool operator==(const CtorRef& o) const {
    if (isVar != o.isVar) return false;
    return isVar ? var == o.var : flavor == o.flavor;
  }
  std::string str() const { return isVar ? var : flavor.token(); }
};

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  enum class K { Var, Con, Arrow };
  K k;

  std::string name;           // Var name or Con name
  std::vector<TypePtr> args;  // Con arguments
  CtorRef ctor;               // Arrow constructor
  TypePtr dom, cod;           // Arrow domain/codomain
};

TypePtr tVar(std::string name);
TypePtr tCon(std::string name, std::vector<TypePtr> args = {});
TypePtr tArrow(CtorRef ctor, TypePtr dom, TypePtr cod);
TypePtr tArrow(ArrowFlavor f, TypePtr dom, TypePtr cod);

TypePtr tInt();
TypePtr tString();
TypePtr tUnit();
TypePtr tFilePath();
TypePtr tFileHandle();
TypePtr tException();
TypePtr tIO(TypePtr a);
TypePtr tIOF(TypePtr a);
TypePtr tEither(TypePtr a, TypePtr b);
TypePtr tPair(TypePtr a, TypePtr b);

bool typeEq(const TypePtr& a, const TypePtr& b);

// Inference metavariables are spelled with a leading '?'; surface syntax can
// never produce such a name, so they cannot collide with program variables.
inline bool isMetaName(const std::string& n) { return !n.empty() && n[0] == '?'; }

void freeTypeVars(const TypePtr& t, std::set<std::string>& tvs, std::set<std::string>& cvs);

// Built-in constructor arities; throws TypeError(TypeMismatch) on a
// mis-applied or unknown constructor.
const std::map<std::string, int>& kindTable();
void kindCheck(const TypePtr& t);

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

struct Predicate {
  enum class K { Un, Geq, ShFun, SeFun };
  K k;
  TypePtr a, b;  // Un a; Geq a b
  CtorRef ctor;  // ShFun/SeFun subject

  static Predicate un(TypePtr t);
  static Predicate geq(TypePtr lhs, TypePtr rhs);
  static Predicate shFun(CtorRef c);
  static Predicate seFun(CtorRef c);

  bool operator==(const Predicate& o) const;
  std::string str() const;
};

// Duplicate-free (modulo syntactic equality) ordered set of predicates.
class PredicateSet {
 public:
  PredicateSet() = default;
  PredicateSet(std::initializer_list<Predicate> ps);

  void add(const Predicate& p);
  void addAll(const PredicateSet& ps);
  bool contains(const Predicate& p) const;
  bool empty() const { return items_.empty(); }
  size_t size() const { return items_.size(); }
  const std::vector<Predicate>& items() const { return items_; }
  std::string str() const;

 private:
  std::vector<Predicate> items_;
};

// ---------------------------------------------------------------------------
// Schemes: forall t... f... . P => rho
// ---------------------------------------------------------------------------

enum class VarKind { TypeVar, CtorVar };

struct Quantifier {
  std::string name;
  VarKind kind;
  bool operator==(const Quantifier& o) const { return name == o.name && kind == o.kind; }
};

struct Scheme {
  std::vector<Quantifier> binders;
  PredicateSet preds;
  TypePtr body;

  Scheme() = default;
  explicit Scheme(TypePtr t) : body(std::move(t)) {}
  Scheme(std::vector<Quantifier> bs, PredicateSet ps, TypePtr t)
      : binders(std::move(bs)), preds(std::move(ps)), body(std::move(t)) {}

  bool isMono() const { return binders.empty() && preds.empty(); }
};

bool schemeAlphaEq(const Scheme& a, const Scheme& b);

void freeVarsOfScheme(const Scheme& s, std::set<std::string>& tvs, std::set<std::string>& cvs);
void freeVarsOfPred(const Predicate& p, std::set<std::string>& tvs, std::set<std::string>& cvs);

}  // namespace qub

#endif
