#include "qub/term.hpp"

namespace qub {

namespace {
TermPtr node(Term::K k, Span sp) {
  auto t = std::make_shared<Term>();
  t->k = k;
  t->span = sp;
  return t;
}
Term* mut(const TermPtr& t) { return const_cast<Term*>(t.get()); }
}  // namespace

TermPtr mkVar(std::string name, Span sp) {
  auto t = node(Term::K::Var, sp);
  mut(t)->name = std::move(name);
  return t;
}

TermPtr mkBuiltin(std::string name, Span sp) {
  auto t = node(Term::K::Builtin, sp);
  mut(t)->name = std::move(name);
  return t;
}

TermPtr mkLamSep(std::string x, TermPtr body, Span sp) {
  auto t = node(Term::K::LamSep, sp);
  mut(t)->name = std::move(x);
  mut(t)->a = std::move(body);
  return t;
}

TermPtr mkLamSh(std::string x, TermPtr body, Span sp) {
  auto t = node(Term::K::LamSh, sp);
  mut(t)->name = std::move(x);
  mut(t)->a = std::move(body);
  return t;
}

TermPtr mkApp(TermPtr f, TermPtr a, Span sp) {
  auto t = node(Term::K::App, sp);
  mut(t)->a = std::move(f);
  mut(t)->b = std::move(a);
  return t;
}

TermPtr mkLet(std::string x, TermPtr bound, TermPtr body, Span sp) {
  auto t = node(Term::K::Let, sp);
  mut(t)->name = std::move(x);
  mut(t)->a = std::move(bound);
  mut(t)->b = std::move(body);
  return t;
}

TermPtr mkLit(Literal l, Span sp) {
  auto t = node(Term::K::Lit, sp);
  mut(t)->lit = std::move(l);
  return t;
}

TermPtr mkPairTerm(TermPtr l, TermPtr r, Span sp) {
  auto t = node(Term::K::Pair, sp);
  mut(t)->a = std::move(l);
  mut(t)->b = std::move(r);
  return t;
}

TermPtr mkLetPair(std::string x, std::string y, TermPtr bound, TermPtr body, Span sp) {
  auto t = node(Term::K::LetPair, sp);
  mut(t)->name = std::move(x);
  mut(t)->name2 = std::move(y);
  mut(t)->a = std::move(bound);
  mut(t)->b = std::move(body);
  return t;
}

TermPtr mkDo(std::vector<Term::DoStmt> stmts, Span sp) {
  auto t = node(Term::K::Do, sp);
  mut(t)->stmts = std::move(stmts);
  return t;
}

namespace {
void fv(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  if (!t) return;
  switch (t->k) {
    case Term::K::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case Term::K::Builtin:
    case Term::K::Lit:
      return;
    case Term::K::LamSep:
    case Term::K::LamSh: {
      bool inserted = bound.insert(t->name).second;
      fv(t->a, bound, out);
      if (inserted) bound.erase(t->name);
      return;
    }
    case Term::K::App:
    case Term::K::Pair:
      fv(t->a, bound, out);
      fv(t->b, bound, out);
      return;
    case Term::K::Let: {
      fv(t->a, bound, out);
      bool inserted = bound.insert(t->name).second;
      fv(t->b, bound, out);
      if (inserted) bound.erase(t->name);
      return;
    }
    case Term::K::LetPair: {
      fv(t->a, bound, out);
      bool i1 = bound.insert(t->name).second;
      bool i2 = bound.insert(t->name2).second;
      fv(t->b, bound, out);
      if (i1) bound.erase(t->name);
      if (i2) bound.erase(t->name2);
      return;
    }
    case Term::K::Do: {
      std::vector<std::string> pushed;
      for (const auto& s : t->stmts) {
        fv(s.e, bound, out);
        switch (s.k) {
          case Term::DoStmt::K::Bind:
          case Term::DoStmt::K::Let:
            if (bound.insert(s.n1).second) pushed.push_back(s.n1);
            break;
          case Term::DoStmt::K::PairBind:
            if (bound.insert(s.n1).second) pushed.push_back(s.n1);
            if (bound.insert(s.n2).second) pushed.push_back(s.n2);
            break;
          case Term::DoStmt::K::Expr:
            break;
        }
      }
      for (const auto& n : pushed) bound.erase(n);
      return;
    }
  }
}

bool aeq(const TermPtr& a, const TermPtr& b, std::map<std::string, std::string>& ren) {
  if (!a || !b) return a == b;
  if (a->k != b->k) return false;
  switch (a->k) {
    case Term::K::Var: {
      auto it = ren.find(a->name);
      return (it == ren.end() ? a->name : it->second) == b->name;
    }
    case Term::K::Builtin:
      return a->name == b->name;
    case Term::K::Lit:
      return a->lit == b->lit;
    case Term::K::LamSep:
    case Term::K::LamSh: {
      auto saved = ren;
      ren[a->name] = b->name;
      bool r = aeq(a->a, b->a, ren);
      ren = saved;
      return r;
    }
    case Term::K::App:
    case Term::K::Pair:
      return aeq(a->a, b->a, ren) && aeq(a->b, b->b, ren);
    case Term::K::Let: {
      if (!aeq(a->a, b->a, ren)) return false;
      auto saved = ren;
      ren[a->name] = b->name;
      bool r = aeq(a->b, b->b, ren);
      ren = saved;
      return r;
    }
    case Term::K::LetPair: {
      if (!aeq(a->a, b->a, ren)) return false;
      auto saved = ren;
      ren[a->name] = b->name;
      ren[a->name2] = b->name2;
      bool r = aeq(a->b, b->b, ren);
      ren = saved;
      return r;
    }
    case Term::K::Do:
      return false;  // do-blocks never survive desugaring
  }
  return false;
}
}  // namespace

std::set<std::string> freeVars(const TermPtr& t) {
  std::set<std::string> bound, out;
  fv(t, bound, out);
  return out;
}

bool alphaEq(const TermPtr& a, const TermPtr& b) {
  std::map<std::string, std::string> ren;
  return aeq(a, b, ren);
}

}  // namespace qub
