#include "qub/infer.hpp"

#include <algorithm>
#include <functional>

#include "qub/builtins.hpp"
#include "qub/predicates.hpp"
#include "qub/pretty.hpp"

namespace qub {

namespace {

// An accumulated obligation remembers why it was raised so that a later
// ground refutation reports the right error class.
struct Obligation {
  Predicate p;
  ErrorCode origin;
  Span span;
};

struct Engine {
  FreshSupply fresh;
  Substitution sub;
  std::vector<Obligation> obligations;
  PredicateSet given;  // annotation hypotheses (never re-emitted)
  const std::map<std::string, Scheme>& defs;

  struct Binding {
    TypePtr type;
    std::set<std::string> edges;
  };
  using Env = std::map<std::string, Binding>;

  // demand: used variable -> sharing edges (ambient)
  using Demand = std::map<std::string, std::set<std::string>>;

  PredicateSet hypotheses() const {
    PredicateSet p = given;
    for (const auto& o : obligations) p.add(sub.apply(o.p));
    return p;
  }

  void oblige(Predicate p, ErrorCode origin, Span span) {
    Predicate q = sub.apply(p);
    switch (entails(hypotheses(), q)) {
      case Entailment::Proved:
        return;
      case Entailment::Refuted:
        throw TypeError(origin, "required predicate refuted: " + q.str(), span);
      case Entailment::Residual:
        obligations.push_back({q, origin, span});
        return;
    }
  }

  SharingContext ctxOf(const Env& env, const Demand& d) const {
    SharingContext g;
    for (const auto& [name, edges] : d) {
      auto it = env.find(name);
      if (it == env.end()) throw InternalError("demand names unknown variable " + name);
      g = g.withEntry(name, edges, sub.apply(it->second.type));
    }
    return g;
  }

  // ---- structural combination of demands ------------------------------------

  Demand combineSep(const Env& env, const Demand& l, const Demand& r, Span span,
                    bool constructorSpine) {
    SharingContext cl = ctxOf(env, l), cr = ctxOf(env, r);
    std::set<std::string> dup;
    for (const auto& [v, e] : l)
      if (r.count(v)) dup.insert(v);
    for (const auto& v : dup) {
      Entailment un = entails(hypotheses(), Predicate::un(cl.entry(v).type));
      if (un == Entailment::Refuted)
        throw TypeError(constructorSpine ? ErrorCode::ResourceDuplicated
                                         : ErrorCode::SeparationViolation,
                        "variable " + v + " : " + pretty(cl.entry(v).type) +
                            " is used by both sides of a separating application",
                        span, joinContexts(cl, cr).str());
      if (un == Entailment::Residual)
        oblige(Predicate::un(cl.entry(v).type),
               constructorSpine ? ErrorCode::ResourceDuplicated
                                : ErrorCode::SeparationViolation,
               span);
    }
    SharingContext cl2, cr2;
    for (const auto& [n, e] : cl.entries())
      if (!dup.count(n)) cl2 = cl2.withEntry(n, e.sharing, e.type);
    for (const auto& [n, e] : cr.entries())
      if (!dup.count(n)) cr2 = cr2.withEntry(n, e.sharing, e.type);
    CombineResult dj = combineDisjoint(cl2, cr2);
    if (!dj.ok())
      throw TypeError(ErrorCode::SeparationViolation,
                      "separating application on entangled contexts: " + dj.err->str(),
                      span, joinContexts(cl, cr).str());
    Demand out = l;
    for (const auto& [v, e] : r) {
      auto& mine = out[v];
      mine.insert(e.begin(), e.end());
    }
    return out;
  }

  bool sepFeasible(const Env& env, const Demand& l, const Demand& r) {
    SharingContext cl = ctxOf(env, l), cr = ctxOf(env, r);
    std::set<std::string> dup;
    for (const auto& [v, e] : l)
      if (r.count(v)) dup.insert(v);
    for (const auto& v : dup)
      if (entails(hypotheses(), Predicate::un(cl.entry(v).type)) == Entailment::Refuted)
        return false;
    SharingContext cl2, cr2;
    for (const auto& [n, e] : cl.entries())
      if (!dup.count(n)) cl2 = cl2.withEntry(n, e.sharing, e.type);
    for (const auto& [n, e] : cr.entries())
      if (!dup.count(n)) cr2 = cr2.withEntry(n, e.sharing, e.type);
    return combineDisjoint(cl2, cr2).ok();
  }

  // Used-set repair for sharing applications: a variable on one side only is
  // weakened into the other side when legal.
  Demand repairTo(const Env& env, Demand d, const Demand& other, Span span) {
    bool progress = true;
    while (progress) {
      progress = false;
      SharingContext cd = ctxOf(env, d);
      for (const auto& [v, edges] : other) {
        if (cd.used().count(v)) continue;
        SharingContext delta;
        delta = delta.withEntry(v, edges, sub.apply(env.at(v).type));
        if (combineSharing(cd, delta).ok()) {
          d[v] = edges;
          progress = true;
          break;
        }
        Entailment un = entails(hypotheses(), Predicate::un(sub.apply(env.at(v).type)));
        if (un == Entailment::Refuted)
          throw TypeError(ErrorCode::ResourceDropped,
                          "sharing application: variable " + v +
                              " is used on one side only and cannot be dropped",
                          span, cd.str());
        if (combineDisjoint(cd, delta).ok()) {
          if (un == Entailment::Residual)
            oblige(Predicate::un(sub.apply(env.at(v).type)), ErrorCode::ResourceDropped,
                   span);
          d[v] = edges;
          progress = true;
          break;
        }
      }
    }
    return d;
  }

  Demand combineSh(const Env& env, Demand l, Demand r, Span span) {
    l = repairTo(env, std::move(l), r, span);
    r = repairTo(env, std::move(r), l, span);
    SharingContext cl = ctxOf(env, l), cr = ctxOf(env, r);
    CombineResult cs = combineSharing(cl, cr);
    if (!cs.ok())
      throw TypeError(ErrorCode::SharingRequired,
                      "sharing application: " + cs.err->str(), span,
                      joinContexts(cl, cr).str());
    Demand out = l;
    for (const auto& [v, e] : r) {
      auto& mine = out[v];
      mine.insert(e.begin(), e.end());
    }
    return out;
  }

  bool shFeasible(const Env& env, const Demand& l, const Demand& r) {
    return combineSharing(ctxOf(env, l), ctxOf(env, r)).ok();
  }

  // ---- instantiation ---------------------------------------------------------

  std::pair<TypePtr, PredicateSet> instantiateScheme(const Scheme& s) {
    Substitution ren;
    for (const auto& b : s.binders) {
      if (b.kind == VarKind::TypeVar)
        ren.bindType(b.name, tVar(fresh.freshType()));
      else
        ren.bindCtor(b.name, CtorRef::mkVar(fresh.freshCtor()));
    }
    return {ren.apply(s.body), ren.apply(s.preds)};
  }

  void usePolyScheme(const Scheme& s, const TypePtr& expected, Span span) {
    auto [ty, preds] = instantiateScheme(s);
    for (const auto& pi : preds.items()) oblige(pi, ErrorCode::PredicateRefuted, span);
    FlexSet flex;
    unify(ty, expected, sub, flex, span);
  }

  // ---- the main recursion ------------------------------------------------------

  Demand inferT(Env env, const TermPtr& m, const TypePtr& expected) {
    FlexSet flex;
    switch (m->k) {
      case Term::K::Var: {
        auto it = env.find(m->name);
        if (it != env.end()) {
          unify(it->second.type, expected, sub, flex, m->span);
          return {{m->name, it->second.edges}};
        }
        auto dit = defs.find(m->name);
        if (dit != defs.end()) {
          usePolyScheme(dit->second, expected, m->span);
          return {};
        }
        throw TypeError(ErrorCode::UnboundVar, "unbound variable " + m->name, m->span);
      }
      case Term::K::Builtin: {
        std::string name = m->name;
        if (isGenericBuiltin(name)) {
          // bare generic: return defaults to IO; bind cannot stand alone
          if (name == "return") {
            TypePtr e = sub.apply(expected);
            std::string head =
                e->k == Type::K::Arrow && e->cod->k == Type::K::Con ? e->cod->name : "";
            name = head == "IOF" ? "returnIOF" : "returnIO";
          } else {
            throw TypeError(ErrorCode::TypeMismatch, "cannot resolve bare bind", m->span);
          }
        }
        auto it = stdlibEnv().find(name);
        if (it == stdlibEnv().end())
          throw TypeError(ErrorCode::UnboundVar, "unknown builtin " + name, m->span);
        usePolyScheme(it->second.scheme, expected, m->span);
        return {};
      }
      case Term::K::Lit: {
        TypePtr t = m->lit.k == Literal::K::Str   ? tString()
                    : m->lit.k == Literal::K::Int ? tInt()
                                                  : tUnit();
        unify(t, expected, sub, flex, m->span);
        return {};
      }
      case Term::K::LamSep:
      case Term::K::LamSh: {
        bool sep = m->k == Term::K::LamSep;
        TypePtr dom = tVar(fresh.freshType());
        TypePtr cod = tVar(fresh.freshType());
        CtorRef phi = CtorRef::mkVar(fresh.freshCtor());
        unify(tArrow(phi, dom, cod), expected, sub, flex, m->span);
        oblige(sep ? Predicate::seFun(phi) : Predicate::shFun(phi),
               ErrorCode::ArrowFlavorMismatch, m->span);

        Env inner = env;
        std::set<std::string> xEdges;
        if (!sep) {
          for (auto& [n, b] : inner) {
            b.edges.insert(m->name);
            xEdges.insert(n);
          }
        }
        inner[m->name] = Binding{dom, xEdges};
        Demand d = inferT(inner, m->a, cod);

        bool xUsed = d.count(m->name) != 0;
        if (xUsed) d.erase(m->name);
        Demand scrubbed;
        for (auto& [n, e] : d) {
          std::set<std::string> es = e;
          es.erase(m->name);
          scrubbed[n] = es;
        }
        d = std::move(scrubbed);

        if (!xUsed) {
          // weakening of the unused binder
          SharingContext cd = ctxOf(env, d);
          SharingContext delta;
          delta = delta.withEntry(m->name, xEdges, sub.apply(dom));
          // note: d's entries still carried the m->name edge before the scrub
          SharingContext cdWithEdges = ctxOf(inner, [&] {
            Demand tmp = d;
            if (!sep)
              for (auto& [n, e] : tmp) e.insert(m->name);
            return tmp;
          }());
          if (!combineSharing(cdWithEdges, delta).ok()) {
            Entailment un = entails(hypotheses(), Predicate::un(sub.apply(dom)));
            if (un == Entailment::Refuted)
              throw TypeError(ErrorCode::ResourceDropped,
                              "lambda parameter " + m->name +
                                  " is never used, and its type is not unrestricted",
                              m->span, cd.str());
            if (un == Entailment::Residual)
              oblige(Predicate::un(dom), ErrorCode::ResourceDropped, m->span);
          }
        }

        // the closure may not outlive what it captures
        TypePtr arrowTy = sub.apply(tArrow(phi, dom, cod));
        for (const auto& [v, e] : d) {
          TypePtr tv = sub.apply(env.at(v).type);
          Entailment g = entails(hypotheses(), Predicate::geq(tv, arrowTy));
          if (g == Entailment::Refuted)
            throw TypeError(ErrorCode::PredicateRefuted,
                            "captured " + v + " : " + pretty(tv) +
                                " cannot build this closure",
                            m->span, ctxOf(env, d).str());
          if (g == Entailment::Residual && tv->k != Type::K::Var) {
            std::set<std::string> tvs, cvs;
            freeTypeVars(tv, tvs, cvs);
            bool groundLhs = tvs.empty() && cvs.empty();
            // ground restricted captures pin the closure's restriction
            if (groundLhs) oblige(Predicate::geq(tv, arrowTy),
                                  ErrorCode::PredicateRefuted, m->span);
          }
        }
        return d;
      }
      case Term::K::App: {
        // generic bind: the left operand decides IO vs IOF
        TermPtr fun = m->a;
        if (fun->k == Term::K::Builtin && fun->name == "bind") {
          TypePtr t1 = tVar(fresh.freshType());
          Demand d1 = inferT(env, m->b, t1);
          TypePtr r = sub.apply(t1);
          std::string name;
          if (r->k == Type::K::Con && r->name == "IO") name = "bindIO";
          else if (r->k == Type::K::Con && r->name == "IOF") name = "bindIOF";
          else
            throw TypeError(ErrorCode::TypeMismatch,
                            "cannot resolve bind: left operand has type " + pretty(r),
                            m->b->span);
          auto [ty, preds] = instantiateScheme(stdlibEnv().at(name).scheme);
          for (const auto& pi : preds.items())
            oblige(pi, ErrorCode::PredicateRefuted, m->span);
          FlexSet fx;
          // ty = t1' -o (a -o X b) -o X b ; unify the first domain and result
          unify(ty->dom, r, sub, fx, m->span);
          unify(ty->cod, expected, sub, fx, m->span);
          // the application of bind to its first argument is separating with
          // an empty function-side demand, so the demand is just d1
          return d1;
        }
        TypePtr dom = tVar(fresh.freshType());
        CtorRef phi = CtorRef::mkVar(fresh.freshCtor());
        Demand dFun = inferT(env, fun, tArrow(phi, dom, expected));
        Demand dArg = inferT(env, m->b, sub.apply(dom));

        bool constructorSpine = false;
        {
          TermPtr h = fun;
          while (h->k == Term::K::App) h = h->a;
          if (h->k == Term::K::Builtin)
            constructorSpine =
                h->name == "mkPair" || h->name == "Left" || h->name == "Right";
        }

        CtorRef rphi = sub.apply(phi);
        if (!rphi.isVar) {
          return rphi.flavor.sharing == SharingKind::Separating
                     ? combineSep(env, dFun, dArg, m->span, constructorSpine)
                     : combineSh(env, dFun, dArg, m->span);
        }
        // flavor is open: commit only when the context forces a discipline
        PredicateSet hyp = hypotheses();
        if (entails(hyp, Predicate::seFun(rphi)) == Entailment::Proved)
          return combineSep(env, dFun, dArg, m->span, constructorSpine);
        if (entails(hyp, Predicate::shFun(rphi)) == Entailment::Proved)
          return combineSh(env, dFun, dArg, m->span);
        bool canSep = sepFeasible(env, dFun, dArg);
        bool canSh = shFeasible(env, dFun, dArg);
        if (canSep && canSh) {
          if (dFun.empty() && dArg.empty()) return {};
          // prefer the sharing reading: no unrestrictedness obligations
          oblige(Predicate::shFun(rphi), ErrorCode::ArrowFlavorMismatch, m->span);
          return combineSh(env, dFun, dArg, m->span);
        }
        if (canSep) {
          oblige(Predicate::seFun(rphi), ErrorCode::ArrowFlavorMismatch, m->span);
          return combineSep(env, dFun, dArg, m->span, constructorSpine);
        }
        if (canSh) {
          oblige(Predicate::shFun(rphi), ErrorCode::ArrowFlavorMismatch, m->span);
          return combineSh(env, dFun, dArg, m->span);
        }
        // neither discipline fits; report via the separating diagnosis
        return combineSep(env, dFun, dArg, m->span, constructorSpine);
      }
      case Term::K::Let: {
        TypePtr te = tVar(fresh.freshType());
        Demand dE = inferT(env, m->a, te);
        std::set<std::string> eVars;
        for (const auto& [v, e] : dE) eVars.insert(v);

        Env inner = env;
        std::set<std::string> fvN = freeVars(m->b);
        std::set<std::string> edges = eVars;
        if (!fvN.count(m->name)) {
          // unused binding: x shares only with what the body actually uses
          std::set<std::string> bodyUsed;
          for (const auto& v : fvN) {
            auto it = env.find(v);
            if (it == env.end()) continue;
            bodyUsed.insert(v);
            bodyUsed.insert(it->second.edges.begin(), it->second.edges.end());
          }
          std::set<std::string> trimmed;
          for (const auto& v : edges)
            if (bodyUsed.count(v)) trimmed.insert(v);
          edges = trimmed;
        }
        for (const auto& v : edges) inner.at(v).edges.insert(m->name);
        inner[m->name] = Binding{te, edges};

        Demand dB = inferT(inner, m->b, expected);
        bool xUsed = dB.count(m->name) != 0;
        if (xUsed) dB.erase(m->name);
        Demand scrubbed;
        for (auto& [n, e] : dB) {
          std::set<std::string> es = e;
          es.erase(m->name);
          scrubbed[n] = es;
        }
        dB = std::move(scrubbed);
        if (!xUsed) {
          SharingContext cd = ctxOf(env, dB);
          SharingContext delta;
          delta = delta.withEntry(m->name, edges, sub.apply(te));
          SharingContext cdWithEdges = ctxOf(inner, [&] {
            Demand tmp = dB;
            for (auto& [n, e] : tmp)
              if (edges.count(n)) e.insert(m->name);
            return tmp;
          }());
          if (!combineSharing(cdWithEdges, delta).ok()) {
            Entailment un = entails(hypotheses(), Predicate::un(sub.apply(te)));
            if (un == Entailment::Refuted)
              throw TypeError(ErrorCode::ResourceDropped,
                              "let binding " + m->name +
                                  " is never used, and its type is not unrestricted",
                              m->span, cd.str());
            if (un == Entailment::Residual)
              oblige(Predicate::un(te), ErrorCode::ResourceDropped, m->span);
          }
        }
        Demand out = dE;
        for (const auto& [v, e] : dB) {
          auto& mine = out[v];
          mine.insert(e.begin(), e.end());
        }
        return out;
      }
      default:
        throw InternalError("inferT: surface form survived desugaring");
    }
  }
};

std::string prettyVarName(int i, bool ctor) {
  static const char* tnames = "abcde";
  static const char* cnames = "fgh";
  const char* pool = ctor ? cnames : tnames;
  int n = ctor ? 3 : 5;
  std::string base(1, pool[i % n]);
  if (i >= n) base += std::to_string(i / n);
  return base;
}

}  // namespace

std::pair<TypePtr, PredicateSet> instantiate(const Scheme& s, FreshSupply& fresh) {
  Substitution ren;
  for (const auto& b : s.binders) {
    if (b.kind == VarKind::TypeVar)
      ren.bindType(b.name, tVar(fresh.freshType()));
    else
      ren.bindCtor(b.name, CtorRef::mkVar(fresh.freshCtor()));
  }
  return {ren.apply(s.body), ren.apply(s.preds)};
}

Scheme generalize(const SharingContext& g, const PredicateSet& p, const TypePtr& t) {
  SimplifyResult simp = simplify(p);
  if (simp.refuted)
    throw TypeError(ErrorCode::PredicateRefuted,
                    "residual predicate refuted: " + simp.refuted->str());

  std::set<std::string> envT, envC;
  for (const auto& [n, e] : g.entries()) freeTypeVars(e.type, envT, envC);

  std::set<std::string> bodyT, bodyC;
  freeTypeVars(t, bodyT, bodyC);
  for (const auto& q : simp.preds.items()) freeVarsOfPred(q, bodyT, bodyC);

  // quantify in order of first appearance in the body, then the predicates
  std::vector<Quantifier> binders;
  std::set<std::string> seen;
  std::function<void(const TypePtr&)> walk = [&](const TypePtr& ty) {
    if (!ty) return;
    switch (ty->k) {
      case Type::K::Var:
        if (bodyT.count(ty->name) && !envT.count(ty->name) && !seen.count(ty->name)) {
          seen.insert(ty->name);
          binders.push_back({ty->name, VarKind::TypeVar});
        }
        break;
      case Type::K::Con:
        for (const auto& a : ty->args) walk(a);
        break;
      case Type::K::Arrow:
        if (ty->ctor.isVar && bodyC.count(ty->ctor.var) && !envC.count(ty->ctor.var) &&
            !seen.count(ty->ctor.var)) {
          seen.insert(ty->ctor.var);
          binders.push_back({ty->ctor.var, VarKind::CtorVar});
        }
        walk(ty->dom);
        walk(ty->cod);
        break;
    }
  };
  walk(t);
  for (const auto& q : simp.preds.items()) {
    if (q.ctor.isVar && bodyC.count(q.ctor.var) && !envC.count(q.ctor.var) &&
        !seen.count(q.ctor.var)) {
      seen.insert(q.ctor.var);
      binders.push_back({q.ctor.var, VarKind::CtorVar});
    }
    walk(q.a);
    walk(q.b);
  }

  // presentation renaming of quantified metavariables
  Substitution ren;
  std::set<std::string> usedNames;
  for (const auto& v : bodyT)
    if (!seen.count(v)) usedNames.insert(v);
  for (const auto& v : bodyC)
    if (!seen.count(v)) usedNames.insert(v);
  int ti = 0, ci = 0;
  std::vector<Quantifier> renamed;
  for (const auto& b : binders) {
    bool ctor = b.kind == VarKind::CtorVar;
    std::string nn;
    do {
      nn = prettyVarName(ctor ? ci++ : ti++, ctor);
    } while (usedNames.count(nn));
    usedNames.insert(nn);
    if (ctor)
      ren.bindCtor(b.name, CtorRef::mkVar(nn));
    else
      ren.bindType(b.name, tVar(nn));
    renamed.push_back({nn, b.kind});
  }

  // drop predicates that mention no quantified variable and are residual
  // against nothing (they cannot be discharged later either way; keep them
  // only if they mention quantified or free variables of the body)
  PredicateSet keep;
  for (const auto& q : simp.preds.items()) {
    std::set<std::string> qt, qc;
    freeVarsOfPred(q, qt, qc);
    bool relevant = false;
    for (const auto& v : qt)
      if (seen.count(v) || bodyT.count(v)) relevant = true;
    for (const auto& v : qc)
      if (seen.count(v) || bodyC.count(v)) relevant = true;
    if (relevant) keep.add(ren.apply(q));
  }
  return Scheme(renamed, keep, ren.apply(t));
}

InferResult inferTerm(const SharingContext& g, const TermPtr& m, TypePtr expected,
                      const std::map<std::string, Scheme>& programDefs,
                      const PredicateSet& given) {
  Engine eng{{}, {}, {}, given, programDefs};
  Engine::Env env;
  for (const auto& [n, e] : g.entries()) env[n] = Engine::Binding{e.type, e.sharing};
  if (!expected) expected = tVar(eng.fresh.freshType());
  Engine::Demand d = eng.inferT(env, m, expected);

  InferResult res;
  res.type = eng.sub.apply(expected);
  // final pass over obligations now that the substitution is complete
  for (const auto& o : eng.obligations) {
    Predicate q = eng.sub.apply(o.p);
    switch (entails(eng.given, q)) {
      case Entailment::Proved:
        break;
      case Entailment::Refuted:
        throw TypeError(o.origin, "required predicate refuted: " + q.str(), o.span);
      case Entailment::Residual: {
        // a residual with no metavariables left can only be discharged by the
        // hypotheses (annotation mode); if they do not entail it, fail now
        // with the originating error class
        std::set<std::string> qt, qc;
        freeVarsOfPred(q, qt, qc);
        bool mentionsMeta = false;
        for (const auto& v : qt)
          if (isMetaName(v)) mentionsMeta = true;
        for (const auto& v : qc)
          if (isMetaName(v)) mentionsMeta = true;
        if (!mentionsMeta)
          throw TypeError(o.origin, "hypotheses do not entail required " + q.str(),
                          o.span);
        res.residual.add(q);
        break;
      }
    }
  }
  res.demand = eng.ctxOf(env, d);
  res.sub = eng.sub;
  return res;
}

Scheme inferDefScheme(const CoreDef& def,
                      const std::map<std::string, Scheme>& programDefs) {
  if (def.annotation) {
    // expected-type-directed inference against the annotation: quantified
    // variables stay rigid, its predicates become hypotheses
    const Scheme& ann = *def.annotation;
    inferTerm({}, def.body, ann.body, programDefs, ann.preds);
    return ann;
  }
  InferResult r = inferTerm({}, def.body, nullptr, programDefs, {});
  return generalize(r.demand, r.residual, r.type);
}

}  // namespace qub
