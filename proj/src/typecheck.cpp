#include "qub/typecheck.hpp"

#include <algorithm>
#include <functional>

#include "qub/builtins.hpp"
#include "qub/infer.hpp"
#include "qub/predicates.hpp"
#include "qub/pretty.hpp"
#include "qub/unify.hpp"

namespace qub {

namespace {

bool hasMeta(const TypePtr& t) {
  std::set<std::string> tvs, cvs;
  freeTypeVars(t, tvs, cvs);
  for (const auto& v : tvs)
    if (isMetaName(v)) return true;
  for (const auto& v : cvs)
    if (isMetaName(v)) return true;
  return false;
}

struct Checker {
  PredicateSet P;
  const std::map<std::string, Scheme>& defs;
  int instCounter = 0;

  // ----- derivation helpers ------------------------------------------------

  Derivation node(std::string rule, SharingContext ctx, TermPtr term, Scheme sigma,
                  std::vector<Derivation> kids, std::vector<std::string> dup = {}) {
    Derivation d;
    d.rule = std::move(rule);
    d.preds = P;
    d.ctx = std::move(ctx);
    d.term = std::move(term);
    d.sigma = std::move(sigma);
    d.kids = std::move(kids);
    d.dupVars = std::move(dup);
    return d;
  }

  // ----- weakening ---------------------------------------------------------

  // Wraps `d` in WKN nodes until its context equals `full`. Unsatisfiable
  // discharge is RESOURCE_DROPPED.
  Derivation dischargeUp(Derivation d, const SharingContext& full, Span span) {
    SharingContext cur = d.ctx;
    std::set<std::string> missing;
    for (const auto& v : full.vars())
      if (!cur.hasVar(v)) missing.insert(v);
    while (!missing.empty()) {
      bool progress = false;
      for (const auto& v : std::set<std::string>(missing)) {
        SharingContext delta = full.restrictTo({v});
        CombineResult sh = combineSharing(cur, delta);
        if (sh.ok()) {
          cur = *sh.ctx;
          d = node("WKN-SH", cur, d.term, d.sigma, {std::move(d)});
          missing.erase(v);
          progress = true;
          continue;
        }
        if (entails(P, Predicate::un(full.entry(v).type)) == Entailment::Proved) {
          CombineResult dj = combineDisjoint(cur, delta);
          if (dj.ok()) {
            cur = *dj.ctx;
            d = node("WKN-UN", cur, d.term, d.sigma, {std::move(d)});
            missing.erase(v);
            progress = true;
            continue;
          }
        }
      }
      if (!progress) {
        const std::string& v = *missing.begin();
        throw TypeError(ErrorCode::ResourceDropped,
                        "variable " + v + " : " + pretty(full.entry(v).type) +
                            " is never used, and its type is not unrestricted",
                        span, full.str());
      }
    }
    return d;
  }

  // ----- leaf instantiation ------------------------------------------------

  std::string resolveGenericLeaf(const std::string& name, const TypePtr& expected,
                                 Span span) {
    auto headOf = [](const TypePtr& t) -> std::string {
      return t && t->k == Type::K::Con ? t->name : "";
    };
    if (expected && expected->k == Type::K::Arrow) {
      std::string h = name == "return" ? headOf(expected->cod) : headOf(expected->dom);
      if (h == "IO") return name == "return" ? "returnIO" : "bindIO";
      if (h == "IOF") return name == "return" ? "returnIOF" : "bindIOF";
    }
    throw TypeError(ErrorCode::TypeMismatch,
                    "cannot resolve generic '" + name + "' from the expected type",
                    span);
  }

  struct InstantiatedScheme {
    TypePtr body;                 // fresh-renamed body
    PredicateSet preds;           // fresh-renamed predicates
    std::vector<std::string> freshNames;  // per binder
  };

  InstantiatedScheme freshen(const Scheme& s) {
    InstantiatedScheme out;
    Substitution ren;
    for (const auto& b : s.binders) {
      std::string f = "?i" + std::to_string(instCounter++);
      out.freshNames.push_back(f);
      if (b.kind == VarKind::TypeVar)
        ren.bindType(b.name, tVar(f));
      else
        ren.bindCtor(b.name, CtorRef::mkVar(f));
    }
    out.body = ren.apply(s.body);
    out.preds = ren.apply(s.preds);
    return out;
  }

  // ID leaf + FORALL-E / IMPL-E chain bringing `scheme` to the monotype
  // fixed by `inst` over the freshened binders.
  Derivation instantiateLeaf(const SharingContext& leafCtx, const TermPtr& leafTerm,
                             const Scheme& scheme, const InstantiatedScheme& fresh,
                             Substitution& inst, Span span) {
    // default genuinely unconstrained binders
    for (size_t i = 0; i < fresh.freshNames.size(); ++i) {
      const std::string& f = fresh.freshNames[i];
      if (scheme.binders[i].kind == VarKind::TypeVar) {
        if (!inst.boundType(f)) inst.bindType(f, tUnit());
      } else {
        if (!inst.boundCtor(f)) inst.bindCtor(f, CtorRef::mkConcrete(sepRestricted()));
      }
    }
    Derivation d = node("ID", leafCtx, leafTerm, scheme, {});
    Scheme walk = scheme;
    for (size_t i = 0; i < scheme.binders.size(); ++i) {
      const Quantifier& b = scheme.binders[i];
      Substitution one;
      if (b.kind == VarKind::TypeVar) {
        TypePtr chosen = inst.apply(tVar(fresh.freshNames[i]));
        if (hasMeta(chosen))
          throw TypeError(ErrorCode::TypeMismatch,
                          "ambiguous instantiation of " + pretty(scheme), span);
        one.bindType(b.name, chosen);
      } else {
        CtorRef chosen = inst.apply(CtorRef::mkVar(fresh.freshNames[i]));
        if (chosen.isVar && isMetaName(chosen.var))
          throw TypeError(ErrorCode::TypeMismatch,
                          "ambiguous instantiation of " + pretty(scheme), span);
        one.bindCtor(b.name, chosen);
      }
      walk = Scheme(
          std::vector<Quantifier>(walk.binders.begin() + 1, walk.binders.end()),
          one.apply(walk.preds), one.apply(walk.body));
      d = node("FORALL-E", leafCtx, leafTerm, walk, {std::move(d)});
    }
    while (!walk.preds.empty()) {
      Predicate pi = walk.preds.items().front();
      if (entails(P, pi) == Entailment::Refuted)
        throw TypeError(ErrorCode::PredicateRefuted,
                        "instantiation requires " + pi.str() + ", which is refuted",
                        span, leafCtx.str());
      PredicateSet rest;
      for (size_t i = 1; i < walk.preds.items().size(); ++i)
        rest.add(walk.preds.items()[i]);
      walk = Scheme({}, rest, walk.body);
      d = node("IMPL-E", leafCtx, leafTerm, walk, {std::move(d)});
    }
    return d;
  }

  // ----- application combination -------------------------------------------

  SharingKind resolveKind(const CtorRef& c, Span span) {
    if (!c.isVar) return c.flavor.sharing;
    if (entails(P, Predicate::seFun(c)) == Entailment::Proved)
      return SharingKind::Separating;
    if (entails(P, Predicate::shFun(c)) == Entailment::Proved)
      return SharingKind::Sharing;
    throw TypeError(ErrorCode::ArrowFlavorMismatch,
                    "constructor variable " + c.var +
                        " is not known to be sharing or separating",
                    span);
  }

  // Adds variables to one side of a sharing application until the Used sets
  // agree; returns the wrapped derivation.
  Derivation repairSide(Derivation d, const SharingContext& otherSide, Span span) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& v : otherSide.vars()) {
        if (d.ctx.used().count(v)) continue;
        SharingContext delta = otherSide.restrictTo({v});
        CombineResult sh = combineSharing(d.ctx, delta);
        if (sh.ok()) {
          d = node("WKN-SH", *sh.ctx, d.term, d.sigma, {std::move(d)});
          progress = true;
          continue;
        }
        Entailment un = entails(P, Predicate::un(otherSide.entry(v).type));
        if (un == Entailment::Proved) {
          CombineResult dj = combineDisjoint(d.ctx, delta);
          if (dj.ok()) {
            d = node("WKN-UN", *dj.ctx, d.term, d.sigma, {std::move(d)});
            progress = true;
            continue;
          }
        } else {
          throw TypeError(ErrorCode::ResourceDropped,
                          "sharing application: variable " + v + " : " +
                              pretty(otherSide.entry(v).type) +
                              " is used on one side only and cannot be dropped "
                              "on the other",
                          span, otherSide.str());
        }
      }
    }
    return d;
  }

  Derivation combineApp(Derivation funD, Derivation argD, const CtorRef& flavor,
                        const TypePtr& resultTy, Span span, bool constructorSpine) {
    SharingKind kind = resolveKind(flavor, span);
    TermPtr appTerm = mkApp(funD.term, argD.term, span);
    if (kind == SharingKind::Separating) {
      std::vector<std::string> dup;
      for (const auto& v : funD.ctx.vars())
        if (argD.ctx.hasVar(v)) dup.push_back(v);
      for (const auto& v : dup) {
        if (entails(P, Predicate::un(funD.ctx.entry(v).type)) != Entailment::Proved) {
          ErrorCode code = constructorSpine ? ErrorCode::ResourceDuplicated
                                            : ErrorCode::SeparationViolation;
          throw TypeError(code,
                          "variable " + v + " : " + pretty(funD.ctx.entry(v).type) +
                              " is used by both sides of a separating application",
                          span, joinContexts(funD.ctx, argD.ctx).str());
        }
      }
      SharingContext cf, ca;
      std::set<std::string> dupSet(dup.begin(), dup.end());
      for (const auto& [n, e] : funD.ctx.entries())
        if (!dupSet.count(n)) cf = cf.withEntry(n, e.sharing, e.type);
      for (const auto& [n, e] : argD.ctx.entries())
        if (!dupSet.count(n)) ca = ca.withEntry(n, e.sharing, e.type);
      CombineResult dj = combineDisjoint(cf, ca);
      if (!dj.ok())
        throw TypeError(ErrorCode::SeparationViolation,
                        "separating application on entangled contexts: " +
                            dj.err->str(),
                        span, joinContexts(funD.ctx, argD.ctx).str());
      SharingContext joined = joinContexts(funD.ctx, argD.ctx);
      Derivation app = node("SEP-E", joined, appTerm, Scheme(resultTy),
                            {std::move(funD), std::move(argD)});
      if (!dup.empty())
        app = node("CTR-UN", joined, appTerm, Scheme(resultTy), {std::move(app)}, dup);
      return app;
    }
    // sharing application
    funD = repairSide(std::move(funD), argD.ctx, span);
    argD = repairSide(std::move(argD), funD.ctx, span);
    CombineResult cs = combineSharing(funD.ctx, argD.ctx);
    if (!cs.ok())
      throw TypeError(ErrorCode::SharingRequired,
                      "sharing application: " + cs.err->str(), span,
                      joinContexts(funD.ctx, argD.ctx).str());
    std::vector<std::string> dup;
    for (const auto& v : funD.ctx.vars())
      if (argD.ctx.hasVar(v)) dup.push_back(v);
    SharingContext joined = *cs.ctx;
    Derivation app = node("SH-E", joined, appTerm, Scheme(resultTy),
                          {std::move(funD), std::move(argD)});
    if (!dup.empty())
      app = node("CTR-SH", joined, appTerm, Scheme(resultTy), {std::move(app)}, dup);
    return app;
  }

  // ----- spine typing -------------------------------------------------------

  SharingContext restrictToTerm(const SharingContext& ctx, const TermPtr& t) {
    std::set<std::string> keep;
    for (const auto& v : freeVars(t))
      if (ctx.hasVar(v)) keep.insert(v);
    return ctx.restrictTo(keep);
  }

  // expected == nullptr means synthesize.
  Derivation appSpine(const SharingContext& ctx, const TermPtr& m, TypePtr expected) {
    std::vector<TermPtr> args;
    TermPtr head = m;
    while (head->k == Term::K::App) {
      args.push_back(head->b);
      head = head->a;
    }
    std::reverse(args.begin(), args.end());
    Span span = m->span;

    // beta-redex: lambda in function position
    if (head->k == Term::K::LamSep || head->k == Term::K::LamSh) {
      if (!expected)
        throw TypeError(ErrorCode::TypeMismatch,
                        "cannot synthesize the type of an applied lambda", span);
      if (args.size() != 1)
        throw TypeError(ErrorCode::TypeMismatch,
                        "a lambda may be applied to one argument at a time", span);
      Derivation argD = synth(restrictToTerm(ctx, args[0]), args[0]);
      ArrowFlavor fl = head->k == Term::K::LamSep ? sepRestricted() : shRestricted();
      TypePtr funTy = tArrow(fl, argD.sigma.body, expected);
      Derivation funD = checkTerm(restrictToTerm(ctx, head), head, funTy);
      return combineApp(std::move(funD), std::move(argD), CtorRef::mkConcrete(fl),
                        expected, span, false);
    }

    // resolve the head's scheme
    Scheme scheme;
    SharingContext headCtx;
    TermPtr headTerm = head;
    std::optional<Derivation> firstLegSynth;
    bool constructorSpine = false;
    if (head->k == Term::K::Var && ctx.hasVar(head->name)) {
      scheme = Scheme(ctx.entry(head->name).type);
      headCtx = ctx.restrictTo({head->name});
    } else if (head->k == Term::K::Var) {
      auto it = defs.find(head->name);
      if (it == defs.end())
        throw TypeError(ErrorCode::UnboundVar, "unbound variable " + head->name,
                        head->span);
      scheme = it->second;
    } else if (head->k == Term::K::Builtin) {
      std::string name = head->name;
      if (isGenericBuiltin(name)) {
        if (name == "bind") {
          if (args.empty())
            throw TypeError(ErrorCode::TypeMismatch, "bare generic bind", span);
          Derivation a1 = synth(restrictToTerm(ctx, args[0]), args[0]);
          TypePtr t1 = a1.sigma.body;
          if (t1->k == Type::K::Con && t1->name == "IO") name = "bindIO";
          else if (t1->k == Type::K::Con && t1->name == "IOF") name = "bindIOF";
          else
            throw TypeError(ErrorCode::TypeMismatch,
                            "cannot resolve bind: left operand has type " + pretty(t1),
                            args[0]->span);
          firstLegSynth = std::move(a1);
        } else {  // return
          if (expected) {
            if (expected->k == Type::K::Con && expected->name == "IO") name = "returnIO";
            else if (expected->k == Type::K::Con && expected->name == "IOF")
              name = "returnIOF";
            else
              throw TypeError(ErrorCode::TypeMismatch,
                              "cannot resolve return against " + pretty(expected), span);
          } else {
            name = "returnIO";
          }
        }
      }
      auto it = stdlibEnv().find(name);
      if (it == stdlibEnv().end())
        throw TypeError(ErrorCode::UnboundVar, "unknown builtin " + name, head->span);
      scheme = it->second.scheme;
      headTerm = mkBuiltin(name, head->span);
      constructorSpine = name == "mkPair" || name == "Left" || name == "Right";
    } else if (head->k == Term::K::Lit) {
      throw TypeError(ErrorCode::TypeMismatch, "a literal is not a function", span);
    } else {
      throw InternalError("appSpine: unexpected head kind");
    }

    InstantiatedScheme fresh = freshen(scheme);
    Substitution inst;
    FlexSet flex;  // metas only; the freshened binders are ?i names

    // peel one arrow per argument
    TypePtr cur = fresh.body;
    std::vector<TypePtr> doms;
    std::vector<CtorRef> flavors;
    std::vector<TypePtr> results;
    for (size_t i = 0; i < args.size(); ++i) {
      cur = inst.apply(cur);
      if (cur->k != Type::K::Arrow)
        throw TypeError(ErrorCode::TypeMismatch,
                        pretty(cur) + " is applied to too many arguments", span);
      doms.push_back(cur->dom);
      flavors.push_back(cur->ctor);
      cur = cur->cod;
      results.push_back(cur);
    }
    if (expected) unify(cur, expected, inst, flex, span);

    // settle argument types left to right, synthesizing where the domain is
    // not yet pinned
    std::vector<std::optional<Derivation>> argDerivs(args.size());
    if (firstLegSynth) {
      unify(doms[0], firstLegSynth->sigma.body, inst, flex, args[0]->span);
      argDerivs[0] = std::move(*firstLegSynth);
    }
    for (size_t i = 0; i < args.size(); ++i) {
      if (argDerivs[i]) continue;
      TypePtr d = inst.apply(doms[i]);
      if (hasMeta(d)) {
        Derivation sd = synth(restrictToTerm(ctx, args[i]), args[i]);
        unify(d, sd.sigma.body, inst, flex, args[i]->span);
        argDerivs[i] = std::move(sd);
      }
    }
    for (size_t i = 0; i < args.size(); ++i) {
      if (argDerivs[i]) continue;
      TypePtr d = inst.apply(doms[i]);
      if (hasMeta(d))
        throw TypeError(ErrorCode::TypeMismatch,
                        "ambiguous argument type " + pretty(d), args[i]->span);
      argDerivs[i] = checkTerm(restrictToTerm(ctx, args[i]), args[i], d);
    }

    TypePtr finalTy = inst.apply(cur);
    if (hasMeta(finalTy))
      throw TypeError(ErrorCode::TypeMismatch,
                      "ambiguous result type " + pretty(finalTy), span);

    Derivation d = instantiateLeaf(headCtx, headTerm, scheme, fresh, inst, span);
    for (size_t i = 0; i < args.size(); ++i) {
      TypePtr r = inst.apply(results[i]);
      CtorRef fl = inst.apply(flavors[i]);
      d = combineApp(std::move(d), std::move(*argDerivs[i]), fl, r, span,
                     constructorSpine);
    }
    if (expected && !typeEq(d.sigma.body, expected))
      throw InternalError("appSpine: result type drifted");
    return d;
  }

  // ----- synthesis (no expected type) ---------------------------------------

  Derivation synth(const SharingContext& ctx, const TermPtr& m) {
    switch (m->k) {
      case Term::K::Var: {
        if (ctx.hasVar(m->name)) {
          if (ctx.size() != 1) throw InternalError("synth: context not restricted");
          return node("ID", ctx, m, Scheme(ctx.entry(m->name).type), {});
        }
        auto it = defs.find(m->name);
        if (it != defs.end()) {
          if (!it->second.binders.empty() || !it->second.preds.empty())
            throw TypeError(ErrorCode::TypeMismatch,
                            "ambiguous use of polymorphic " + m->name, m->span);
          return node("ID", ctx, m, it->second, {});
        }
        throw TypeError(ErrorCode::UnboundVar, "unbound variable " + m->name, m->span);
      }
      case Term::K::Builtin: {
        if (isGenericBuiltin(m->name))
          throw TypeError(ErrorCode::TypeMismatch,
                          "cannot synthesize a bare generic " + m->name, m->span);
        const Scheme& s = stdlibEnv().at(m->name).scheme;
        if (!s.binders.empty() || !s.preds.empty())
          throw TypeError(ErrorCode::TypeMismatch,
                          "ambiguous use of polymorphic builtin " + m->name, m->span);
        return node("ID", ctx, m, s, {});
      }
      case Term::K::Lit: {
        TypePtr t = m->lit.k == Literal::K::Str   ? tString()
                    : m->lit.k == Literal::K::Int ? tInt()
                                                  : tUnit();
        return node("ID", ctx, m, Scheme(t), {});
      }
      case Term::K::App:
        return appSpine(ctx, m, nullptr);
      case Term::K::Let:
        return letNode(ctx, m, nullptr);
      case Term::K::LamSep:
      case Term::K::LamSh:
        throw TypeError(ErrorCode::TypeMismatch,
                        "cannot synthesize the type of a lambda here", m->span);
      default:
        throw InternalError("synth: surface form survived desugaring");
    }
  }

  // ----- let ----------------------------------------------------------------

  Derivation letNode(const SharingContext& ctx, const TermPtr& m, TypePtr expected) {
    const std::string& x = m->name;
    SharingContext ctxE = restrictToTerm(ctx, m->a);
    Derivation derivE = synth(ctxE, m->a);
    TypePtr te = derivE.sigma.body;

    std::set<std::string> fvN = freeVars(m->b);
    bool xUsed = fvN.count(x) != 0;
    SharingContext bodyBase = restrictToTerm(ctx, m->b);

    std::set<std::string> edges = ctxE.vars();
    if (!xUsed) {
      // the body never sees x; per the let reading, x only shares with the
      // bound term's variables that the body actually uses
      std::set<std::string> trimmed;
      std::set<std::string> bodyUsed = bodyBase.used();
      for (const auto& v : edges)
        if (bodyUsed.count(v)) trimmed.insert(v);
      edges = trimmed;
    }

    SharingContext bodyCtx;
    for (const auto& [n, e] : bodyBase.entries()) {
      std::set<std::string> sh = e.sharing;
      if (edges.count(n)) sh.insert(x);
      bodyCtx = bodyCtx.withEntry(n, sh, e.type);
    }
    bodyCtx = bodyCtx.withEntry(x, edges, te);

    Derivation derivB = expected ? checkTerm(bodyCtx, m->b, expected)
                                 : [&] {
                                     SharingContext inner =
                                         restrictToTerm(bodyCtx, m->b);
                                     Derivation s = synth(inner, m->b);
                                     return dischargeUp(std::move(s), bodyCtx, m->span);
                                   }();

    SharingContext conc = joinContexts(derivE.ctx, derivB.ctx.without(x));
    TermPtr elab = mkLet(x, derivE.term, derivB.term, m->span);
    return node("LET", conc, elab, derivB.sigma, {std::move(derivE), std::move(derivB)});
  }

  // ----- main dispatch --------------------------------------------------------

  Derivation checkCore(const SharingContext& ctx, const TermPtr& m,
                       const TypePtr& expected) {
    switch (m->k) {
      case Term::K::Var: {
        if (ctx.hasVar(m->name)) {
          if (ctx.size() != 1) throw InternalError("checkCore: context not restricted");
          const auto& e = ctx.entry(m->name);
          if (!typeEq(e.type, expected))
            throw TypeError(ErrorCode::TypeMismatch,
                            m->name + " has type " + pretty(e.type) + ", expected " +
                                pretty(expected),
                            m->span, ctx.str());
          return node("ID", ctx, m, Scheme(e.type), {});
        }
        auto it = defs.find(m->name);
        if (it != defs.end()) return instantiateMatch(ctx, m, it->second, expected);
        throw TypeError(ErrorCode::UnboundVar, "unbound variable " + m->name, m->span);
      }
      case Term::K::Builtin: {
        std::string name = m->name;
        if (isGenericBuiltin(name)) name = resolveGenericLeaf(name, expected, m->span);
        auto it = stdlibEnv().find(name);
        if (it == stdlibEnv().end())
          throw TypeError(ErrorCode::UnboundVar, "unknown builtin " + name, m->span);
        return instantiateMatch(ctx, mkBuiltin(name, m->span), it->second.scheme,
                                expected);
      }
      case Term::K::Lit: {
        TypePtr t = m->lit.k == Literal::K::Str   ? tString()
                    : m->lit.k == Literal::K::Int ? tInt()
                                                  : tUnit();
        if (!typeEq(t, expected))
          throw TypeError(ErrorCode::TypeMismatch,
                          "literal has type " + pretty(t) + ", expected " +
                              pretty(expected),
                          m->span);
        return node("ID", ctx, m, Scheme(t), {});
      }
      case Term::K::LamSep:
      case Term::K::LamSh: {
        bool sep = m->k == Term::K::LamSep;
        if (expected->k != Type::K::Arrow)
          throw TypeError(ErrorCode::TypeMismatch,
                          "lambda checked against non-arrow type " + pretty(expected),
                          m->span);
        const CtorRef& c = expected->ctor;
        if (!c.isVar) {
          if (c.flavor.sharing != (sep ? SharingKind::Separating : SharingKind::Sharing))
            throw TypeError(ErrorCode::ArrowFlavorMismatch,
                            std::string(sep ? "separating" : "sharing") +
                                " lambda checked against " + c.flavor.token(),
                            m->span);
        } else {
          Predicate want = sep ? Predicate::seFun(c) : Predicate::shFun(c);
          if (entails(P, want) != Entailment::Proved)
            throw TypeError(ErrorCode::ArrowFlavorMismatch,
                            "P does not prove " + want.str(), m->span);
        }
        EntailAllResult geq = contextGeq(P, ctx, expected);
        if (geq.e == Entailment::Refuted)
          throw TypeError(ErrorCode::PredicateRefuted,
                          "captured context cannot build this closure: " +
                              geq.refuted->str(),
                          m->span, ctx.str());
        if (ctx.used().count(m->name))
          throw InternalError("binder not fresh after alpha renaming: " + m->name);
        SharingContext prem =
            sep ? ctx.withEntry(m->name, {}, expected->dom)
                : ctx.insertEverywhere(m->name)
                      .withEntry(m->name, ctx.vars(), expected->dom);
        Derivation body = checkTerm(prem, m->a, expected->cod);
        TermPtr elab = sep ? mkLamSep(m->name, body.term, m->span)
                           : mkLamSh(m->name, body.term, m->span);
        return node(sep ? "SEP-I" : "SH-I", ctx, elab, Scheme(expected),
                    {std::move(body)});
      }
      case Term::K::App:
        return appSpine(ctx, m, expected);
      case Term::K::Let:
        return letNode(ctx, m, expected);
      default:
        throw InternalError("checkCore: surface form survived desugaring");
    }
  }

  // leaf checked against a fully known expected type
  Derivation instantiateMatch(const SharingContext& ctx, const TermPtr& term,
                              const Scheme& scheme, const TypePtr& expected) {
    InstantiatedScheme fresh = freshen(scheme);
    Substitution inst;
    FlexSet flex;
    unify(fresh.body, expected, inst, flex, term->span);
    Derivation d = instantiateLeaf(ctx, term, scheme, fresh, inst, term->span);
    if (!typeEq(d.sigma.body, expected))
      throw TypeError(ErrorCode::TypeMismatch,
                      term->name + " : " + pretty(scheme) + " does not match " +
                          pretty(expected),
                      term->span);
    return d;
  }

  Derivation checkTerm(const SharingContext& ctx, const TermPtr& m,
                       const TypePtr& expected) {
    SharingContext inner = restrictToTerm(ctx, m);
    Derivation d = checkCore(inner, m, expected);
    return dischargeUp(std::move(d), ctx, m->span);
  }
};

std::set<std::string> contextFreeVars(const SharingContext& g, const PredicateSet& p) {
  std::set<std::string> tvs, cvs;
  for (const auto& [n, e] : g.entries()) freeTypeVars(e.type, tvs, cvs);
  for (const auto& q : p.items()) freeVarsOfPred(q, tvs, cvs);
  tvs.insert(cvs.begin(), cvs.end());
  return tvs;
}

}  // namespace

Derivation check(const PredicateSet& p, const SharingContext& g, const TermPtr& m,
                 const Scheme& s, const std::map<std::string, Scheme>& programDefs) {
  // rename quantifiers that clash with names free in g or p
  Scheme sch = s;
  std::set<std::string> avoid = contextFreeVars(g, p);
  Substitution ren;
  bool renamed = false;
  std::vector<Quantifier> binders;
  for (const auto& b : sch.binders) {
    std::string name = b.name;
    int k = 0;
    while (avoid.count(name)) name = b.name + "_" + std::to_string(++k);
    if (name != b.name) {
      renamed = true;
      if (b.kind == VarKind::TypeVar)
        ren.bindType(b.name, tVar(name));
      else
        ren.bindCtor(b.name, CtorRef::mkVar(name));
    }
    avoid.insert(name);
    binders.push_back({name, b.kind});
  }
  if (renamed) sch = Scheme(binders, ren.apply(sch.preds), ren.apply(sch.body));

  Checker ck{p, programDefs};
  for (const auto& pi : sch.preds.items()) ck.P.add(pi);

  Derivation d = ck.checkTerm(g, m, sch.body);

  // qualify: IMPL-I innermost-last
  const auto& items = sch.preds.items();
  for (size_t i = items.size(); i-- > 0;) {
    PredicateSet nodeP = p;
    for (size_t j = 0; j < i; ++j) nodeP.add(items[j]);
    PredicateSet sigmaPreds;
    for (size_t j = i; j < items.size(); ++j) sigmaPreds.add(items[j]);
    Derivation up;
    up.rule = "IMPL-I";
    up.preds = nodeP;
    up.ctx = d.ctx;
    up.term = d.term;
    up.sigma = Scheme({}, sigmaPreds, sch.body);
    up.kids.push_back(std::move(d));
    d = std::move(up);
  }
  // quantify: FORALL-I outermost-first
  for (size_t i = sch.binders.size(); i-- > 0;) {
    Derivation up;
    up.rule = "FORALL-I";
    up.preds = p;
    up.ctx = d.ctx;
    up.term = d.term;
    up.sigma = Scheme(
        std::vector<Quantifier>(sch.binders.begin() + i, sch.binders.end()),
        sch.preds, sch.body);
    up.kids.push_back(std::move(d));
    d = std::move(up);
  }
  return d;
}

std::vector<CheckedDef> checkProgram(const std::vector<CoreDef>& defs) {
  std::map<std::string, Scheme> env;
  std::vector<CheckedDef> out;
  for (const auto& def : defs) {
    CheckedDef cd;
    cd.name = def.name;
    try {
      Scheme sigma;
      if (def.annotation) {
        sigma = *def.annotation;
      } else {
        sigma = inferDefScheme(def, env);
        cd.fromInference = true;
      }
      Derivation d = check({}, {}, def.body, sigma, env);
      cd.scheme = sigma;
      cd.elaborated = d.term;
      cd.derivation = std::move(d);
      env[def.name] = sigma;
    } catch (const TypeError& e) {
      cd.error = e;
    }
    out.push_back(std::move(cd));
  }
  return out;
}

}  // namespace qub
