#include "qub/pretty.hpp"

#include <sstream>

namespace qub {

std::string quoteString(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

namespace {

bool isPairCon(const TypePtr& t) {
  return t->k == Type::K::Con && t->name == "Pair";
}

// prec 0: top (arrows), 1: application argument position, 2: atom
std::string ty(const TypePtr& t, int prec) {
  if (!t) return "<null>";
  switch (t->k) {
    case Type::K::Var:
      return t->name;
    case Type::K::Con: {
      if (t->name == "Unit") return "()";
      if (isPairCon(t)) return "(" + ty(t->args[0], 0) + ", " + ty(t->args[1], 0) + ")";
      if (t->args.empty()) return t->name;
      std::string s = t->name;
      for (const auto& a : t->args) s += " " + ty(a, 2);
      return prec >= 2 ? "(" + s + ")" : s;
    }
    case Type::K::Arrow: {
      if (t->ctor.isVar) {
        // constructor variable applied to its two arguments
        std::string s = t->ctor.var + " " + ty(t->dom, 2) + " " + ty(t->cod, 2);
        return prec >= 2 ? "(" + s + ")" : s;
      }
      std::string s = ty(t->dom, 1) + " " + t->ctor.flavor.token() + " " + ty(t->cod, 0);
      return prec >= 1 ? "(" + s + ")" : s;
    }
  }
  return "<?>";
}

bool atomTerm(const TermPtr& t) {
  switch (t->k) {
    case Term::K::Var:
    case Term::K::Builtin:
    case Term::K::Lit:
    case Term::K::Pair:
      return true;
    default:
      return false;
  }
}

std::string tm(const TermPtr& t, bool argPos) {
  switch (t->k) {
    case Term::K::Var:
    case Term::K::Builtin:
      return t->name;
    case Term::K::Lit:
      switch (t->lit.k) {
        case Literal::K::Str: return quoteString(t->lit.s);
        case Literal::K::Int: return std::to_string(t->lit.i);
        case Literal::K::Unit: return "()";
      }
      return "()";
    case Term::K::LamSep:
    case Term::K::LamSh: {
      std::string tok = t->k == Term::K::LamSep ? "\\-*" : "\\->>";
      std::string s = tok + " " + t->name + ". " + tm(t->a, false);
      return argPos ? "(" + s + ")" : s;
    }
    case Term::K::App: {
      std::string f = tm(t->a, t->a->k != Term::K::App);
      std::string a = tm(t->b, !atomTerm(t->b));
      std::string s = f + " " + a;
      return argPos ? "(" + s + ")" : s;
    }
    case Term::K::Let: {
      std::string s = "let " + t->name + " = " + tm(t->a, false) + " in " + tm(t->b, false);
      return argPos ? "(" + s + ")" : s;
    }
    case Term::K::Pair:
      return "(" + tm(t->a, false) + ", " + tm(t->b, false) + ")";
    case Term::K::LetPair: {
      std::string s = "let (" + t->name + ", " + t->name2 + ") = " + tm(t->a, false) +
                      " in " + tm(t->b, false);
      return argPos ? "(" + s + ")" : s;
    }
    case Term::K::Do: {
      std::string s = "do { ";
      bool first = true;
      for (const auto& st : t->stmts) {
        if (!first) s += "; ";
        first = false;
        switch (st.k) {
          case Term::DoStmt::K::Bind: s += st.n1 + " <- " + tm(st.e, false); break;
          case Term::DoStmt::K::PairBind:
            s += "(" + st.n1 + ", " + st.n2 + ") <- " + tm(st.e, false);
            break;
          case Term::DoStmt::K::Let: s += "let " + st.n1 + " = " + tm(st.e, false); break;
          case Term::DoStmt::K::Expr: s += tm(st.e, false); break;
        }
      }
      return s + " }";
    }
  }
  return "<?>";
}

}  // namespace

std::string pretty(const TypePtr& t) { return ty(t, 0); }

std::string pretty(const Predicate& p) {
  switch (p.k) {
    case Predicate::K::Un:
      return "Un " + ty(p.a, 2);
    case Predicate::K::Geq:
      return ty(p.a, 1) + " >= " + ty(p.b, 1);
    case Predicate::K::ShFun:
      return "ShFun " + (p.ctor.isVar ? p.ctor.var : "(" + p.ctor.flavor.token() + ")");
    case Predicate::K::SeFun:
      return "SeFun " + (p.ctor.isVar ? p.ctor.var : "(" + p.ctor.flavor.token() + ")");
  }
  return "<?>";
}

std::string pretty(const Scheme& s) {
  std::ostringstream out;
  if (!s.binders.empty()) {
    out << "forall";
    for (const auto& q : s.binders) out << " " << q.name;
    out << ". ";
  }
  if (!s.preds.empty()) {
    out << "(";
    bool first = true;
    for (const auto& p : s.preds.items()) {
      if (!first) out << ", ";
      out << pretty(p);
      first = false;
    }
    out << ") => ";
  }
  out << ty(s.body, 0);
  return out.str();
}

std::string pretty(const TermPtr& t) { return tm(t, false); }

}  // namespace qub
