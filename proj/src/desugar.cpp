#include "qub/desugar.hpp"

#include <functional>
#include <map>
#include <set>

#include "qub/builtins.hpp"

namespace qub {

namespace {

struct Renamer {
  std::set<std::string> taken;
  std::map<std::string, int> counters;

  std::string fresh(const std::string& base) {
    if (!taken.count(base)) {
      taken.insert(base);
      return base;
    }
    int& n = counters[base];
    for (;;) {
      ++n;
      std::string cand = base + "_" + std::to_string(n);
      if (!taken.count(cand)) {
        taken.insert(cand);
        return cand;
      }
    }
  }
};

// Renames every binder to a globally unique name. Free occurrences are
// renamed through the environment; unbound names stay as written (they are
// top-level refs or builtins).
TermPtr alphaTerm(const TermPtr& t, std::map<std::string, std::string>& env, Renamer& ren) {
  if (!t) return t;
  switch (t->k) {
    case Term::K::Var: {
      auto it = env.find(t->name);
      return it == env.end() ? t : mkVar(it->second, t->span);
    }
    case Term::K::Builtin:
    case Term::K::Lit:
      return t;
    case Term::K::LamSep:
    case Term::K::LamSh: {
      std::string nn = ren.fresh(t->name);
      auto saved = env;
      env[t->name] = nn;
      TermPtr body = alphaTerm(t->a, env, ren);
      env = saved;
      return t->k == Term::K::LamSep ? mkLamSep(nn, body, t->span)
                                     : mkLamSh(nn, body, t->span);
    }
    case Term::K::App:
      return mkApp(alphaTerm(t->a, env, ren), alphaTerm(t->b, env, ren), t->span);
    case Term::K::Pair:
      return mkPairTerm(alphaTerm(t->a, env, ren), alphaTerm(t->b, env, ren), t->span);
    case Term::K::Let: {
      TermPtr bound = alphaTerm(t->a, env, ren);
      std::string nn = ren.fresh(t->name);
      auto saved = env;
      env[t->name] = nn;
      TermPtr body = alphaTerm(t->b, env, ren);
      env = saved;
      return mkLet(nn, bound, body, t->span);
    }
    case Term::K::LetPair: {
      TermPtr bound = alphaTerm(t->a, env, ren);
      std::string n1 = ren.fresh(t->name);
      std::string n2 = ren.fresh(t->name2);
      auto saved = env;
      env[t->name] = n1;
      env[t->name2] = n2;
      TermPtr body = alphaTerm(t->b, env, ren);
      env = saved;
      return mkLetPair(n1, n2, bound, body, t->span);
    }
    case Term::K::Do: {
      std::vector<Term::DoStmt> stmts;
      auto saved = env;
      for (const auto& s : t->stmts) {
        Term::DoStmt ns = s;
        ns.e = alphaTerm(s.e, env, ren);
        switch (s.k) {
          case Term::DoStmt::K::Bind:
          case Term::DoStmt::K::Let:
            ns.n1 = ren.fresh(s.n1);
            env[s.n1] = ns.n1;
            break;
          case Term::DoStmt::K::PairBind:
            ns.n1 = ren.fresh(s.n1);
            ns.n2 = ren.fresh(s.n2);
            env[s.n1] = ns.n1;
            env[s.n2] = ns.n2;
            break;
          case Term::DoStmt::K::Expr:
            break;
        }
        stmts.push_back(std::move(ns));
      }
      env = saved;
      return mkDo(std::move(stmts), t->span);
    }
  }
  return t;
}

TermPtr desugarTerm(const TermPtr& t, Renamer& ren);

TermPtr unpairSpine(const std::string& x, const std::string& y, TermPtr pairE,
                    TermPtr rest, Span sp) {
  TermPtr cont = mkLamSep(x, mkLamSep(y, rest, sp), sp);
  return mkApp(mkApp(mkBuiltin("unpair", sp), pairE, sp), cont, sp);
}

TermPtr desugarDo(const std::vector<Term::DoStmt>& stmts, size_t i, Renamer& ren) {
  const Term::DoStmt& s = stmts[i];
  bool last = i + 1 == stmts.size();
  if (last) {
    if (s.k != Term::DoStmt::K::Expr)
      throw SyntaxError(s.span, "final statement of a do block must be an expression",
                        "DESUGAR");
    return desugarTerm(s.e, ren);
  }
  TermPtr rest = desugarDo(stmts, i + 1, ren);
  TermPtr e = desugarTerm(s.e, ren);
  switch (s.k) {
    case Term::DoStmt::K::Bind:
      return mkApp(mkApp(mkBuiltin("bind", s.span), e, s.span),
                   mkLamSep(s.n1, rest, s.span), s.span);
    case Term::DoStmt::K::PairBind: {
      std::string p = ren.fresh("_p");
      TermPtr cont = mkLamSep(
          p, unpairSpine(s.n1, s.n2, mkVar(p, s.span), rest, s.span), s.span);
      return mkApp(mkApp(mkBuiltin("bind", s.span), e, s.span), cont, s.span);
    }
    case Term::DoStmt::K::Let:
      return mkLet(s.n1, e, rest, s.span);
    case Term::DoStmt::K::Expr: {
      std::string d = ren.fresh("_u");
      return mkApp(mkApp(mkBuiltin("bind", s.span), e, s.span),
                   mkLamSep(d, rest, s.span), s.span);
    }
  }
  throw InternalError("desugarDo: bad statement kind");
}

TermPtr desugarTerm(const TermPtr& t, Renamer& ren) {
  if (!t) return t;
  switch (t->k) {
    case Term::K::Var:
    case Term::K::Builtin:
    case Term::K::Lit:
      return t;
    case Term::K::LamSep:
      return mkLamSep(t->name, desugarTerm(t->a, ren), t->span);
    case Term::K::LamSh:
      return mkLamSh(t->name, desugarTerm(t->a, ren), t->span);
    case Term::K::App:
      return mkApp(desugarTerm(t->a, ren), desugarTerm(t->b, ren), t->span);
    case Term::K::Let:
      return mkLet(t->name, desugarTerm(t->a, ren), desugarTerm(t->b, ren), t->span);
    case Term::K::Pair:
      return mkApp(mkApp(mkBuiltin("mkPair", t->span), desugarTerm(t->a, ren), t->span),
                   desugarTerm(t->b, ren), t->span);
    case Term::K::LetPair:
      return unpairSpine(t->name, t->name2, desugarTerm(t->a, ren),
                         desugarTerm(t->b, ren), t->span);
    case Term::K::Do:
      if (t->stmts.empty()) throw SyntaxError(t->span, "empty do block", "DESUGAR");
      return desugarDo(t->stmts, 0, ren);
  }
  return t;
}

// Free variables that name stdlib builtins become Builtin nodes.
TermPtr resolveBuiltins(const TermPtr& t, std::set<std::string>& bound,
                        const std::set<std::string>& defNames) {
  if (!t) return t;
  switch (t->k) {
    case Term::K::Var: {
      if (bound.count(t->name) || defNames.count(t->name)) return t;
      if (isBuiltinName(t->name)) return mkBuiltin(t->name, t->span);
      return t;
    }
    case Term::K::Builtin:
    case Term::K::Lit:
      return t;
    case Term::K::LamSep:
    case Term::K::LamSh: {
      bool ins = bound.insert(t->name).second;
      TermPtr body = resolveBuiltins(t->a, bound, defNames);
      if (ins) bound.erase(t->name);
      return t->k == Term::K::LamSep ? mkLamSep(t->name, body, t->span)
                                     : mkLamSh(t->name, body, t->span);
    }
    case Term::K::App:
      return mkApp(resolveBuiltins(t->a, bound, defNames),
                   resolveBuiltins(t->b, bound, defNames), t->span);
    case Term::K::Let: {
      TermPtr a = resolveBuiltins(t->a, bound, defNames);
      bool ins = bound.insert(t->name).second;
      TermPtr b = resolveBuiltins(t->b, bound, defNames);
      if (ins) bound.erase(t->name);
      return mkLet(t->name, a, b, t->span);
    }
    default:
      throw InternalError("resolveBuiltins: surface form survived desugaring");
  }
}

// Arrow flavors of the annotation body, outermost first, for left-hand-side
// parameter sugar.
std::vector<Term::K> paramLambdaKinds(const std::optional<Scheme>& ann, size_t nparams) {
  std::vector<Term::K> kinds;
  TypePtr t = ann ? ann->body : nullptr;
  for (size_t i = 0; i < nparams; ++i) {
    Term::K k = Term::K::LamSep;
    if (t && t->k == Type::K::Arrow) {
      if (!t->ctor.isVar && t->ctor.flavor.sharing == SharingKind::Sharing)
        k = Term::K::LamSh;
      t = t->cod;
    } else {
      t = nullptr;
    }
    kinds.push_back(k);
  }
  return kinds;
}

}  // namespace

std::vector<CoreDef> desugar(const SurfaceProgram& p) {
  std::set<std::string> globalTaken;
  std::set<std::string> defNames;
  for (const auto& d : p.defs) {
    if (isBuiltinName(d.name))
      throw SyntaxError(d.span, "definition shadows builtin " + d.name);
    defNames.insert(d.name);
    globalTaken.insert(d.name);
  }
  for (const auto& b : builtinNames()) globalTaken.insert(b);

  std::vector<CoreDef> out;
  for (const auto& d : p.defs) {
    CoreDef cd;
    cd.name = d.name;
    cd.annotation = d.annotation;
    cd.span = d.span;

    // parameters become lambdas; then rename binders apart, then desugar
    TermPtr body = d.body;
    auto kinds = paramLambdaKinds(d.annotation, d.params.size());
    for (size_t i = d.params.size(); i-- > 0;) {
      body = kinds[i] == Term::K::LamSep ? mkLamSep(d.params[i], body, d.span)
                                         : mkLamSh(d.params[i], body, d.span);
    }
    Renamer local;
    local.taken = globalTaken;
    for (const auto& v : freeVars(body)) local.taken.insert(v);
    std::map<std::string, std::string> env;
    body = alphaTerm(body, env, local);
    body = desugarTerm(body, local);
    std::set<std::string> boundNone;
    cd.body = resolveBuiltins(body, boundNone, defNames);
    out.push_back(std::move(cd));
  }
  return out;
}

TermPtr desugarExpr(const TermPtr& t) {
  Renamer local;
  for (const auto& b : builtinNames()) local.taken.insert(b);
  for (const auto& v : freeVars(t)) local.taken.insert(v);
  std::map<std::string, std::string> env;
  TermPtr a = alphaTerm(t, env, local);
  a = desugarTerm(a, local);
  std::set<std::string> bound;
  return resolveBuiltins(a, bound, {});
}

}  // namespace qub
