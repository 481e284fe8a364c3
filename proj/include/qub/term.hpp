#ifndef QUB_TERM_HPP
#define QUB_TERM_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qub/basic.hpp"
#include "qub/type.hpp"

namespace qub {

struct Literal {
  enum class K { Str, Int, Unit };
  K k = K::Unit;
  std::string s;
  long long i = 0;

  static Literal str(std::string v) { return {K::Str, std::move(v), 0}; }
  static Literal integer(long long v) { return {K::Int, "", v}; }
  static Literal unit() { return {}; }
  bool operator==(const Literal& o) const {
    return k == o.k && s == o.s && i == o.i;
  }
};

// Abstract syntax. Pair/LetPair only occur in freshly parsed programs;
// desugaring rewrites them into mkPair/unpair spines so that the checker,
// inference and runtime only ever see the seven core forms.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class K { Var, LamSep, LamSh, App, Let, Lit, Builtin, Pair, LetPair, Do };
  K k;

  std::string name;   // Var/Builtin name; binder of LamSep/LamSh/Let; LetPair first
  std::string name2;  // LetPair second binder
  TermPtr a, b;       // Lam body=a; App fun=a arg=b; Let bound=a body=b;
                      // Pair left=a right=b; LetPair bound=a body=b
  Literal lit;
  Span span;

  // Surface do-blocks, erased by desugaring.
  struct DoStmt {
    enum class K { Bind, PairBind, Let, Expr };
    K k;
    std::string n1, n2;
    TermPtr e;
    Span span;
  };
  std::vector<DoStmt> stmts;
};

TermPtr mkVar(std::string name, Span sp = {});
TermPtr mkBuiltin(std::string name, Span sp = {});
TermPtr mkLamSep(std::string x, TermPtr body, Span sp = {});
TermPtr mkLamSh(std::string x, TermPtr body, Span sp = {});
TermPtr mkApp(TermPtr f, TermPtr a, Span sp = {});
TermPtr mkLet(std::string x, TermPtr bound, TermPtr body, Span sp = {});
TermPtr mkLit(Literal l, Span sp = {});
TermPtr mkPairTerm(TermPtr l, TermPtr r, Span sp = {});
TermPtr mkLetPair(std::string x, std::string y, TermPtr bound, TermPtr body, Span sp = {});
TermPtr mkDo(std::vector<Term::DoStmt> stmts, Span sp = {});

// Free variables (term variables only; Builtin nodes are not variables).
std::set<std::string> freeVars(const TermPtr& t);

// Structural equality up to renaming of bound variables.
bool alphaEq(const TermPtr& a, const TermPtr& b);

struct TopDef {
  std::string name;
  std::optional<Scheme> annotation;
  std::vector<std::string> params;  // left-hand-side parameters, sugar for lambdas
  TermPtr body;
  Span span;
};

// Harness expectation, from a `-- expect:` comment.
struct Expectation {
  enum class K { None, Ok, TypeError, RuntimeError };
  K k = K::None;
  std::string code;
};

struct SurfaceProgram {
  std::vector<TopDef> defs;
  Expectation expectation;
};

}  // namespace qub

#endif
