#include "qub/derivation.hpp"

#include <functional>
#include <sstream>

#include "qub/builtins.hpp"
#include "qub/parser.hpp"
#include "qub/predicates.hpp"
#include "qub/pretty.hpp"
#include "qub/unify.hpp"

namespace qub {

// ---------------------------------------------------------------------------
// Dump
// ---------------------------------------------------------------------------

namespace {

void dumpNode(const Derivation& d, int depth, std::ostringstream& out) {
  out << std::string(depth * 2, ' ') << "[" << d.rule << "] " << d.ctx.str()
      << " ⊢ " << pretty(d.term) << " : " << pretty(d.sigma);
  if (!d.dupVars.empty()) {
    out << " [dup:";
    for (const auto& v : d.dupVars) out << " " << v;
    out << "]";
  }
  out << "\n";
  for (const auto& k : d.kids) dumpNode(k, depth + 1, out);
}

}  // namespace

std::string dumpDerivation(const Derivation& d) {
  std::ostringstream out;
  if (!d.preds.empty()) out << "[P] " << d.preds.str() << "\n";
  dumpNode(d, 0, out);
  return out.str();
}

// ---------------------------------------------------------------------------
// Dump parsing (round-trip for golden/validation tests)
// ---------------------------------------------------------------------------

namespace {

// splits "a, b, c" at top-level commas (parens/braces tracked)
std::vector<std::string> splitTop(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  bool inStr = false;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (inStr) {
      cur += c;
      if (c == '\\' && i + 1 < s.size()) {
        cur += s[++i];
      } else if (c == '"') {
        inStr = false;
      }
      continue;
    }
    if (c == '"') {
      inStr = true;
      cur += c;
      continue;
    }
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

SharingContext parseCtxText(const std::string& text) {
  SharingContext g;
  std::string inner = trim(text);
  if (inner.size() < 2 || inner.front() != '{' || inner.back() != '}')
    throw SyntaxError({}, "bad context text: " + text);
  inner = inner.substr(1, inner.size() - 2);
  if (trim(inner).empty()) return g;
  for (const auto& entryText : splitTop(inner)) {
    std::string e = trim(entryText);
    size_t caret = e.find("^{");
    if (caret == std::string::npos) throw SyntaxError({}, "bad context entry: " + e);
    std::string name = e.substr(0, caret);
    size_t close = e.find('}', caret);
    if (close == std::string::npos) throw SyntaxError({}, "bad context entry: " + e);
    std::string shareList = e.substr(caret + 2, close - caret - 2);
    size_t colon = e.find(": ", close);
    if (colon == std::string::npos) throw SyntaxError({}, "bad context entry: " + e);
    TypePtr ty = parseType(e.substr(colon + 2));
    std::set<std::string> sharing;
    if (!trim(shareList).empty()) {
      size_t pos = 0;
      while (pos <= shareList.size()) {
        size_t comma = shareList.find(',', pos);
        if (comma == std::string::npos) comma = shareList.size();
        std::string n = trim(shareList.substr(pos, comma - pos));
        if (!n.empty()) sharing.insert(n);
        pos = comma + 1;
      }
    }
    g = g.withEntry(name, sharing, ty);
  }
  return g;
}

// first " : " outside parens/braces/strings
size_t findTypeColon(const std::string& s) {
  int depth = 0;
  bool inStr = false;
  for (size_t i = 0; i + 2 < s.size(); ++i) {
    char c = s[i];
    if (inStr) {
      if (c == '\\') ++i;
      else if (c == '"') inStr = false;
      continue;
    }
    if (c == '"') { inStr = true; continue; }
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (depth == 0 && c == ' ' && s[i + 1] == ':' && s[i + 2] == ' ') return i;
  }
  return std::string::npos;
}

struct DumpLine {
  int depth;
  Derivation node;  // kids empty
};

}  // namespace

Derivation parseDerivationDump(const std::string& text) {
  std::vector<std::string> lines;
  {
    size_t pos = 0;
    while (pos < text.size()) {
      size_t eol = text.find('\n', pos);
      if (eol == std::string::npos) eol = text.size();
      std::string l = text.substr(pos, eol - pos);
      if (!trim(l).empty()) lines.push_back(l);
      pos = eol + 1;
    }
  }
  if (lines.empty()) throw SyntaxError({}, "empty derivation dump");

  PredicateSet rootPreds;
  size_t start = 0;
  if (lines[0].rfind("[P] ", 0) == 0) {
    std::string ps = trim(lines[0].substr(4));
    if (ps.size() < 2 || ps.front() != '(' || ps.back() != ')')
      throw SyntaxError({}, "bad predicate line");
    std::string inner = ps.substr(1, ps.size() - 2);
    if (!trim(inner).empty()) {
      // reuse the scheme parser on "(preds) => Int" to read the set
      Scheme sch = parseScheme("(" + inner + ") => Int");
      for (const auto& p : sch.preds.items()) rootPreds.add(p);
    }
    start = 1;
  }

  std::vector<DumpLine> parsed;
  for (size_t i = start; i < lines.size(); ++i) {
    const std::string& l = lines[i];
    size_t indent = l.find_first_not_of(' ');
    if (indent % 2 != 0) throw SyntaxError({}, "odd indentation in dump");
    std::string rest = l.substr(indent);
    if (rest.empty() || rest[0] != '[') throw SyntaxError({}, "bad dump line: " + l);
    size_t rb = rest.find("] ");
    if (rb == std::string::npos) throw SyntaxError({}, "bad dump line: " + l);
    DumpLine dl;
    dl.depth = (int)(indent / 2);
    dl.node.rule = rest.substr(1, rb - 1);
    std::string after = rest.substr(rb + 2);
    size_t turn = after.find(" ⊢ ");
    if (turn == std::string::npos) throw SyntaxError({}, "no turnstile in: " + l);
    dl.node.ctx = parseCtxText(after.substr(0, turn));
    std::string judg = after.substr(turn + 4 + 1);  // " ⊢ " is 5 bytes total
    // dup annotation at line end
    size_t dupPos = judg.rfind(" [dup:");
    if (dupPos != std::string::npos && judg.back() == ']') {
      std::string dups = judg.substr(dupPos + 6, judg.size() - dupPos - 7);
      std::istringstream ds(dups);
      std::string w;
      while (ds >> w) dl.node.dupVars.push_back(w);
      judg = judg.substr(0, dupPos);
    }
    size_t colon = findTypeColon(judg);
    if (colon == std::string::npos) throw SyntaxError({}, "no type in: " + l);
    dl.node.term = parseExpr(trim(judg.substr(0, colon)));
    dl.node.sigma = parseSchemeRaw(trim(judg.substr(colon + 3)));
    parsed.push_back(std::move(dl));
  }

  // rebuild the tree from depths
  std::function<Derivation(size_t&, int, const PredicateSet&)> build =
      [&](size_t& i, int depth, const PredicateSet& preds) -> Derivation {
    if (i >= parsed.size() || parsed[i].depth != depth)
      throw SyntaxError({}, "malformed dump tree");
    Derivation node = std::move(parsed[i].node);
    node.preds = preds;
    ++i;
    PredicateSet kidPreds = preds;
    if (node.rule == "IMPL-I") {
      if (node.sigma.preds.empty()) throw SyntaxError({}, "IMPL-I without predicate");
      kidPreds.add(node.sigma.preds.items().front());
    }
    while (i < parsed.size() && parsed[i].depth == depth + 1)
      node.kids.push_back(build(i, depth + 1, kidPreds));
    return node;
  };
  size_t i = 0;
  Derivation root = build(i, 0, rootPreds);
  if (i != parsed.size()) throw SyntaxError({}, "trailing lines in dump");
  return root;
}

// ---------------------------------------------------------------------------
// Validation: each node re-checked against its rule schema.
// ---------------------------------------------------------------------------

namespace {

struct Validator {
  const DerivEnv& env;
  std::vector<RuleViolation> out;

  void fail(const std::string& path, const std::string& msg) {
    out.push_back({path, msg});
  }

  static bool schemeIsMonoArrow(const Scheme& s, TypePtr& arrow) {
    if (!s.binders.empty() || !s.preds.empty()) return false;
    if (!s.body || s.body->k != Type::K::Arrow) return false;
    arrow = s.body;
    return true;
  }

  void checkFlavor(const std::string& path, const PredicateSet& P, const CtorRef& c,
                   SharingKind want, const char* rule) {
    Predicate goal = want == SharingKind::Sharing ? Predicate::shFun(c) : Predicate::seFun(c);
    if (entails(P, goal) != Entailment::Proved)
      fail(path, std::string(rule) + ": arrow constructor not provably " +
                     (want == SharingKind::Sharing ? "sharing" : "separating"));
  }

  void node(const Derivation& d, const std::string& path) {
    const PredicateSet& P = d.preds;
    for (size_t i = 0; i < d.kids.size(); ++i) {
      const Derivation& k = d.kids[i];
      PredicateSet expect = P;
      if (d.rule == "IMPL-I" && !d.sigma.preds.empty())
        expect.add(d.sigma.preds.items().front());
      if (k.preds.size() != expect.size() ||
          ![&] {
            for (const auto& p : expect.items())
              if (!k.preds.contains(p)) return false;
            return true;
          }())
        fail(path, "child predicate set does not match rule");
      node(k, path + "." + std::to_string(i));
    }

    if (d.rule == "ID") {
      if (!d.kids.empty()) { fail(path, "ID with premises"); return; }
      if (!d.term) { fail(path, "ID without term"); return; }
      if (d.term->k == Term::K::Var) {
        if (d.ctx.size() == 1 && d.ctx.hasVar(d.term->name)) {
          const auto& e = d.ctx.entry(d.term->name);
          Scheme want(e.type);
          if (!schemeAlphaEq(want, d.sigma))
            fail(path, "ID: type differs from context entry");
          return;
        }
        if (d.ctx.empty()) {
          auto it = env.programDefs.find(d.term->name);
          if (it == env.programDefs.end()) {
            fail(path, "ID: unknown top-level " + d.term->name);
            return;
          }
          if (!schemeAlphaEq(it->second, d.sigma))
            fail(path, "ID: scheme differs from top-level binding");
          return;
        }
        fail(path, "ID: context must be the single subject variable");
        return;
      }
      if (d.term->k == Term::K::Builtin) {
        if (!d.ctx.empty()) { fail(path, "ID: builtin with nonempty context"); return; }
        auto it = stdlibEnv().find(d.term->name);
        if (it == stdlibEnv().end()) {
          fail(path, "ID: unknown builtin " + d.term->name);
          return;
        }
        if (!schemeAlphaEq(it->second.scheme, d.sigma))
          fail(path, "ID: scheme differs from builtin signature");
        return;
      }
      if (d.term->k == Term::K::Lit) {
        if (!d.ctx.empty()) { fail(path, "ID: literal with nonempty context"); return; }
        TypePtr want = d.term->lit.k == Literal::K::Str   ? tString()
                       : d.term->lit.k == Literal::K::Int ? tInt()
                                                          : tUnit();
        if (!schemeAlphaEq(Scheme(want), d.sigma)) fail(path, "ID: literal type wrong");
        return;
      }
      fail(path, "ID on a non-leaf term");
      return;
    }

    if (d.rule == "SEP-I" || d.rule == "SH-I") {
      bool sepRule = d.rule == "SEP-I";
      if (d.kids.size() != 1) { fail(path, d.rule + " needs one premise"); return; }
      TypePtr arrow;
      if (!schemeIsMonoArrow(d.sigma, arrow)) {
        fail(path, d.rule + ": conclusion is not an arrow monotype");
        return;
      }
      if (!d.term || d.term->k != (sepRule ? Term::K::LamSep : Term::K::LamSh)) {
        fail(path, d.rule + ": subject is not the matching lambda");
        return;
      }
      checkFlavor(path, P, arrow->ctor,
                  sepRule ? SharingKind::Separating : SharingKind::Sharing,
                  d.rule.c_str());
      EntailAllResult geq = contextGeq(P, d.ctx, arrow);
      if (geq.e == Entailment::Refuted)
        fail(path, d.rule + ": context cannot build this closure (P |- ctx >= phi refuted)");
      const std::string& x = d.term->name;
      SharingContext want =
          sepRule ? d.ctx.withEntry(x, {}, arrow->dom)
                  : d.ctx.insertEverywhere(x).withEntry(x, d.ctx.vars(), arrow->dom);
      if (!(want == d.kids[0].ctx))
        fail(path, d.rule + ": premise context is not the rule's binding extension");
      if (!schemeAlphaEq(Scheme(arrow->cod), d.kids[0].sigma))
        fail(path, d.rule + ": premise type is not the codomain");
      if (!alphaEq(d.kids[0].term, d.term->a))
        fail(path, d.rule + ": premise term is not the lambda body");
      return;
    }

    if (d.rule == "SEP-E" || d.rule == "SH-E") {
      bool sepRule = d.rule == "SEP-E";
      if (d.kids.size() != 2) { fail(path, d.rule + " needs two premises"); return; }
      const Derivation& kf = d.kids[0];
      const Derivation& ka = d.kids[1];
      TypePtr arrow;
      if (!schemeIsMonoArrow(kf.sigma, arrow)) {
        fail(path, d.rule + ": function premise is not an arrow monotype");
        return;
      }
      checkFlavor(path, P, arrow->ctor,
                  sepRule ? SharingKind::Separating : SharingKind::Sharing,
                  d.rule.c_str());
      if (!schemeAlphaEq(Scheme(arrow->dom), ka.sigma))
        fail(path, d.rule + ": argument premise type is not the domain");
      if (!schemeAlphaEq(Scheme(arrow->cod), d.sigma))
        fail(path, d.rule + ": conclusion type is not the codomain");
      if (!d.term || d.term->k != Term::K::App ||
          !alphaEq(d.term->a, kf.term) || !alphaEq(d.term->b, ka.term))
        fail(path, d.rule + ": subject is not the application of the premises");
      if (sepRule) {
        // contracted variables (same name both sides) must be unrestricted
        std::set<std::string> dup;
        for (const auto& v : kf.ctx.vars())
          if (ka.ctx.hasVar(v)) dup.insert(v);
        for (const auto& v : dup) {
          if (!typeEq(kf.ctx.entry(v).type, ka.ctx.entry(v).type))
            fail(path, "SEP-E: contracted variable at two types: " + v);
          if (entails(P, Predicate::un(kf.ctx.entry(v).type)) != Entailment::Proved)
            fail(path, "SEP-E: contraction on non-Un variable " + v);
        }
        SharingContext cf, ca;
        for (const auto& [n, e] : kf.ctx.entries())
          if (!dup.count(n)) cf = cf.withEntry(n, e.sharing, e.type);
        for (const auto& [n, e] : ka.ctx.entries())
          if (!dup.count(n)) ca = ca.withEntry(n, e.sharing, e.type);
        if (!combineDisjoint(cf, ca).ok())
          fail(path, "SEP-E: contexts not separated");
      } else {
        if (!combineSharing(kf.ctx, ka.ctx).ok())
          fail(path, "SH-E: contexts not in complete sharing");
      }
      SharingContext joined = joinContexts(kf.ctx, ka.ctx);
      if (!(joined == d.ctx)) fail(path, d.rule + ": conclusion context is not the join");
      return;
    }

    if (d.rule == "CTR-UN" || d.rule == "CTR-SH") {
      if (d.kids.size() != 1) { fail(path, d.rule + " needs one premise"); return; }
      const Derivation& k = d.kids[0];
      if (!(k.ctx == d.ctx)) fail(path, d.rule + ": context must be unchanged");
      if (!alphaEq(k.term, d.term) || !schemeAlphaEq(k.sigma, d.sigma))
        fail(path, d.rule + ": judgment must be unchanged");
      if (d.dupVars.empty()) fail(path, d.rule + ": no contracted variables recorded");
      for (const auto& v : d.dupVars) {
        if (!d.ctx.hasVar(v)) {
          fail(path, d.rule + ": contracted variable not in context: " + v);
          continue;
        }
        if (d.rule == "CTR-UN" &&
            entails(P, Predicate::un(d.ctx.entry(v).type)) != Entailment::Proved)
          fail(path, "CTR-UN: P does not prove Un for " + v);
      }
      return;
    }

    if (d.rule == "WKN-UN" || d.rule == "WKN-SH") {
      if (d.kids.size() != 1) { fail(path, d.rule + " needs one premise"); return; }
      const Derivation& k = d.kids[0];
      if (!alphaEq(k.term, d.term) || !schemeAlphaEq(k.sigma, d.sigma))
        fail(path, d.rule + ": judgment must be unchanged");
      std::set<std::string> deltaVars;
      for (const auto& v : d.ctx.vars())
        if (!k.ctx.hasVar(v)) deltaVars.insert(v);
      if (deltaVars.empty()) {
        fail(path, d.rule + ": nothing weakened");
        return;
      }
      SharingContext delta = d.ctx.restrictTo(deltaVars);
      SharingContext rest = d.ctx.restrictTo(k.ctx.vars());
      if (!(rest == k.ctx)) {
        fail(path, d.rule + ": premise context altered beyond the weakened part");
        return;
      }
      CombineResult comb = d.rule == "WKN-UN" ? combineDisjoint(k.ctx, delta)
                                              : combineSharing(k.ctx, delta);
      if (!comb.ok()) {
        fail(path, d.rule + ": side condition fails: " + comb.err->str());
        return;
      }
      if (!(*comb.ctx == d.ctx)) fail(path, d.rule + ": conclusion context mismatch");
      if (d.rule == "WKN-UN") {
        for (const auto& v : deltaVars)
          if (entails(P, Predicate::un(d.ctx.entry(v).type)) != Entailment::Proved)
            fail(path, "WKN-UN: P does not prove Un for " + v);
      }
      return;
    }

    if (d.rule == "LET") {
      if (d.kids.size() != 2) { fail(path, "LET needs two premises"); return; }
      if (!d.term || d.term->k != Term::K::Let) {
        fail(path, "LET: subject is not a let");
        return;
      }
      const Derivation& kb = d.kids[0];
      const Derivation& kn = d.kids[1];
      const std::string& x = d.term->name;
      if (!alphaEq(kb.term, d.term->a)) fail(path, "LET: first premise term mismatch");
      if (!alphaEq(kn.term, d.term->b)) fail(path, "LET: second premise term mismatch");
      if (!kn.ctx.hasVar(x)) {
        fail(path, "LET: bound variable missing from body context");
        return;
      }
      if (!kb.sigma.isMono() || !typeEq(kn.ctx.entry(x).type, kb.sigma.body))
        fail(path, "LET: bound variable's type differs from the bound term's");
      for (const auto& w : kn.ctx.entry(x).sharing)
        if (!kb.ctx.hasVar(w))
          fail(path, "LET: bound variable shares with " + w +
                         " which the bound term does not use");
      if (!schemeAlphaEq(kn.sigma, d.sigma)) fail(path, "LET: conclusion type mismatch");
      SharingContext joined = joinContexts(kb.ctx, kn.ctx.without(x));
      if (!(joined == d.ctx)) fail(path, "LET: conclusion context is not the join");
      return;
    }

    if (d.rule == "FORALL-I") {
      if (d.kids.size() != 1) { fail(path, "FORALL-I needs one premise"); return; }
      if (d.sigma.binders.empty()) {
        fail(path, "FORALL-I: conclusion not quantified");
        return;
      }
      Quantifier q = d.sigma.binders.front();
      Scheme want(std::vector<Quantifier>(d.sigma.binders.begin() + 1, d.sigma.binders.end()),
                  d.sigma.preds, d.sigma.body);
      // exact (not alpha) equality: the premise uses the same free name
      if (!schemeAlphaEq(want, d.kids[0].sigma) ||
          pretty(want) != pretty(d.kids[0].sigma))
        fail(path, "FORALL-I: premise scheme mismatch");
      std::set<std::string> tvs, cvs;
      for (const auto& [n, e] : d.ctx.entries()) freeTypeVars(e.type, tvs, cvs);
      for (const auto& p : d.preds.items()) freeVarsOfPred(p, tvs, cvs);
      if (tvs.count(q.name) || cvs.count(q.name))
        fail(path, "FORALL-I: quantified variable not fresh for context/P");
      if (!alphaEq(d.kids[0].term, d.term)) fail(path, "FORALL-I: term mismatch");
      if (!(d.kids[0].ctx == d.ctx)) fail(path, "FORALL-I: context mismatch");
      return;
    }

    if (d.rule == "FORALL-E") {
      if (d.kids.size() != 1) { fail(path, "FORALL-E needs one premise"); return; }
      const Scheme& from = d.kids[0].sigma;
      if (from.binders.empty()) {
        fail(path, "FORALL-E: premise not quantified");
        return;
      }
      Quantifier q = from.binders.front();
      Scheme rest(std::vector<Quantifier>(from.binders.begin() + 1, from.binders.end()),
                  from.preds, from.body);
      // recover the instantiation by matching, then compare
      Substitution sub;
      FlexSet flex;
      flex.metasOnly = false;
      if (q.kind == VarKind::TypeVar) flex.typeVars.insert(q.name);
      else flex.ctorVars.insert(q.name);
      bool okMatch = true;
      try {
        unify(rest.body, d.sigma.body, sub, flex);
      } catch (const TypeError&) {
        okMatch = false;
      }
      if (!okMatch) {
        fail(path, "FORALL-E: conclusion does not match an instance of the premise");
        return;
      }
      Scheme inst(rest.binders, sub.apply(rest.preds), sub.apply(rest.body));
      if (!schemeAlphaEq(inst, d.sigma) || pretty(inst) != pretty(d.sigma))
        fail(path, "FORALL-E: conclusion is not the recorded instance");
      if (!alphaEq(d.kids[0].term, d.term)) fail(path, "FORALL-E: term mismatch");
      if (!(d.kids[0].ctx == d.ctx)) fail(path, "FORALL-E: context mismatch");
      return;
    }

    if (d.rule == "IMPL-I") {
      if (d.kids.size() != 1) { fail(path, "IMPL-I needs one premise"); return; }
      if (d.sigma.preds.empty() || !d.sigma.binders.empty()) {
        fail(path, "IMPL-I: conclusion has no qualifying predicate");
        return;
      }
      Predicate pi = d.sigma.preds.items().front();
      PredicateSet rest;
      for (size_t i = 1; i < d.sigma.preds.items().size(); ++i)
        rest.add(d.sigma.preds.items()[i]);
      Scheme want({}, rest, d.sigma.body);
      if (!schemeAlphaEq(want, d.kids[0].sigma) ||
          pretty(want) != pretty(d.kids[0].sigma))
        fail(path, "IMPL-I: premise scheme mismatch");
      if (!d.kids[0].preds.contains(pi))
        fail(path, "IMPL-I: premise P does not assume the predicate");
      if (!alphaEq(d.kids[0].term, d.term)) fail(path, "IMPL-I: term mismatch");
      if (!(d.kids[0].ctx == d.ctx)) fail(path, "IMPL-I: context mismatch");
      return;
    }

    if (d.rule == "IMPL-E") {
      if (d.kids.size() != 1) { fail(path, "IMPL-E needs one premise"); return; }
      const Scheme& from = d.kids[0].sigma;
      if (from.preds.empty() || !from.binders.empty()) {
        fail(path, "IMPL-E: premise is not qualified");
        return;
      }
      Predicate pi = from.preds.items().front();
      PredicateSet rest;
      for (size_t i = 1; i < from.preds.items().size(); ++i)
        rest.add(from.preds.items()[i]);
      Scheme want({}, rest, from.body);
      if (!schemeAlphaEq(want, d.sigma) || pretty(want) != pretty(d.sigma))
        fail(path, "IMPL-E: conclusion scheme mismatch");
      if (entails(P, pi) == Entailment::Refuted)
        fail(path, "IMPL-E: P refutes " + pi.str());
      if (!alphaEq(d.kids[0].term, d.term)) fail(path, "IMPL-E: term mismatch");
      if (!(d.kids[0].ctx == d.ctx)) fail(path, "IMPL-E: context mismatch");
      return;
    }

    fail(path, "unknown rule " + d.rule);
  }
};

}  // namespace

std::vector<RuleViolation> validateDerivation(const Derivation& d, const DerivEnv& env) {
  Validator v{env, {}};
  v.node(d, "root");
  return v.out;
}

}  // namespace qub
