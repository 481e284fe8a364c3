#include "qub/parser.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <vector>

namespace qub {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
  Name,      // lowercase-initial identifier
  ConName,   // uppercase-initial identifier
  Int,
  Str,
  LParen,
  RParen,
  Comma,
  Backtick,
  LambdaSep,  // \-*
  LambdaSh,   // \->>
  Arrow,      // -* ->> -*u ->>u  (text kept)
  ThinArrow,  // ->   (only inside \e -> style lambdas; we do not accept it,
              //       but lex it so the error is crisp)
  DoubleColon,
  Equals,
  BindArrow,  // <-
  FatArrow,   // =>
  GeqOp,      // >=
  Dot,
  Semi,
  KwDo,
  KwLet,
  KwIn,
  KwForall,
  End,
};

struct Token {
  Tok k;
  std::string text;
  long long intVal = 0;
  Span span;
  bool firstOnLine = false;
};

bool nameStart(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool nameChar(char c) { return std::isalnum((unsigned char)c) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  int lastTokenLine = 0;

  auto push = [&](Tok k, std::string text, Span sp, long long iv = 0) {
    Token t{k, std::move(text), iv, sp, sp.line != lastTokenLine};
    lastTokenLine = sp.line;
    out.push_back(std::move(t));
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    // comments: -- to end of line
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Span sp{line, col};
    auto take = [&](size_t n) {
      i += n;
      col += (int)n;
    };
    if (c == '\\') {
      if (src.compare(i, 4, "\\->>") == 0) { push(Tok::LambdaSh, "\\->>", sp); take(4); continue; }
      if (src.compare(i, 3, "\\-*") == 0) { push(Tok::LambdaSep, "\\-*", sp); take(3); continue; }
      throw SyntaxError(sp, "stray backslash; lambdas are written \\-* or \\->>");
    }
    if (c == '-') {
      if (src.compare(i, 4, "->>u") == 0) { push(Tok::Arrow, "->>u", sp); take(4); continue; }
      if (src.compare(i, 3, "->>") == 0) { push(Tok::Arrow, "->>", sp); take(3); continue; }
      if (src.compare(i, 3, "-*u") == 0) { push(Tok::Arrow, "-*u", sp); take(3); continue; }
      if (src.compare(i, 2, "-*") == 0) { push(Tok::Arrow, "-*", sp); take(2); continue; }
      if (src.compare(i, 2, "->") == 0) { push(Tok::ThinArrow, "->", sp); take(2); continue; }
      throw SyntaxError(sp, "unexpected '-'");
    }
    if (c == ':' && i + 1 < src.size() && src[i + 1] == ':') { push(Tok::DoubleColon, "::", sp); take(2); continue; }
    if (c == '<' && i + 1 < src.size() && src[i + 1] == '-') { push(Tok::BindArrow, "<-", sp); take(2); continue; }
    if (c == '=' && i + 1 < src.size() && src[i + 1] == '>') { push(Tok::FatArrow, "=>", sp); take(2); continue; }
    if (c == '>' && i + 1 < src.size() && src[i + 1] == '=') { push(Tok::GeqOp, ">=", sp); take(2); continue; }
    switch (c) {
      case '(': push(Tok::LParen, "(", sp); take(1); continue;
      case ')': push(Tok::RParen, ")", sp); take(1); continue;
      case ',': push(Tok::Comma, ",", sp); take(1); continue;
      case '`': push(Tok::Backtick, "`", sp); take(1); continue;
      case '=': push(Tok::Equals, "=", sp); take(1); continue;
      case '.': push(Tok::Dot, ".", sp); take(1); continue;
      case ';': push(Tok::Semi, ";", sp); take(1); continue;
      default: break;
    }
    if (c == '"') {
      std::string s;
      size_t j = i + 1;
      int c2 = col + 1;
      while (j < src.size() && src[j] != '"') {
        if (src[j] == '\n') throw SyntaxError(sp, "unterminated string literal");
        if (src[j] == '\\' && j + 1 < src.size()) {
          char e = src[j + 1];
          switch (e) {
            case 'n': s += '\n'; break;
            case 't': s += '\t'; break;
            case '"': s += '"'; break;
            case '\\': s += '\\'; break;
            default: throw SyntaxError({line, c2}, "bad string escape");
          }
          j += 2;
          c2 += 2;
          continue;
        }
        s += src[j];
        ++j;
        ++c2;
      }
      if (j >= src.size()) throw SyntaxError(sp, "unterminated string literal");
      push(Tok::Str, s, sp);
      i = j + 1;
      col = c2 + 1;
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < src.size() && std::isdigit((unsigned char)src[j])) ++j;
      long long v = std::stoll(src.substr(i, j - i));
      push(Tok::Int, src.substr(i, j - i), sp, v);
      col += (int)(j - i);
      i = j;
      continue;
    }
    if (nameStart(c)) {
      size_t j = i;
      while (j < src.size() && nameChar(src[j])) ++j;
      std::string w = src.substr(i, j - i);
      Tok k = Tok::Name;
      if (w == "do") k = Tok::KwDo;
      else if (w == "let") k = Tok::KwLet;
      else if (w == "in") k = Tok::KwIn;
      else if (w == "forall") k = Tok::KwForall;
      else if (std::isupper((unsigned char)w[0])) k = Tok::ConName;
      push(k, w, sp);
      col += (int)(j - i);
      i = j;
      continue;
    }
    throw SyntaxError(sp, std::string("unexpected character '") + c + "'");
  }
  Token eof{Tok::End, "", 0, {line, col}, true};
  out.push_back(eof);
  return out;
}

// ---------------------------------------------------------------------------
// Token stream with layout guards: a token that begins a line at a column at
// or left of the innermost guard is invisible to expression parsing; the
// do-block loop inspects it to decide between "next statement" and "block
// over". Parentheses suspend guards.
// ---------------------------------------------------------------------------

class Stream {
 public:
  explicit Stream(std::vector<Token> ts) : toks_(std::move(ts)) {}

  const Token& raw() const { return toks_[pos_]; }

  bool blocked() const {
    const Token& t = toks_[pos_];
    if (t.k == Tok::End) return true;
    if (guards_.empty()) return false;
    return t.firstOnLine && t.span.column <= guards_.back();
  }

  const Token& peek() const {
    static Token endTok{Tok::End, "", 0, {0, 0}, true};
    if (blocked()) {
      endTok.span = toks_[pos_].span;
      return endTok;
    }
    return toks_[pos_];
  }

  Token next() {
    if (blocked())
      throw SyntaxError(toks_[pos_].span, "unexpected end of block");
    return toks_[pos_++];
  }

  Token expect(Tok k, const std::string& what) {
    if (peek().k != k)
      throw SyntaxError(peek().span, "expected " + what, what);
    return next();
  }

  bool at(Tok k) const { return peek().k == k; }

  void pushGuard(int col) { guards_.push_back(col); }
  void popGuard() { guards_.pop_back(); }
  size_t guardDepth() const { return guards_.size(); }

  struct Mark {
    size_t pos;
    size_t guards;
  };
  Mark save() const { return {pos_, guards_.size()}; }
  void restore(Mark m) {
    pos_ = m.pos;
    guards_.resize(m.guards);
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<int> guards_;
};

// ---------------------------------------------------------------------------
// Types and schemes
// ---------------------------------------------------------------------------

ArrowFlavor flavorOfToken(const std::string& t) {
  if (t == "-*") return sepRestricted();
  if (t == "->>") return shRestricted();
  if (t == "-*u") return sepUnrestricted();
  return shUnrestricted();
}

TypePtr parseTypeTop(Stream& s);

TypePtr parseAType(Stream& s) {
  const Token& t = s.peek();
  if (t.k == Tok::LParen) {
    s.next();
    s.pushGuard(0);
    if (s.at(Tok::RParen)) {
      s.popGuard();
      s.next();
      return tUnit();
    }
    TypePtr first = parseTypeTop(s);
    if (s.at(Tok::Comma)) {
      s.next();
      TypePtr second = parseTypeTop(s);
      s.popGuard();
      s.expect(Tok::RParen, ")");
      return tPair(first, second);
    }
    s.popGuard();
    s.expect(Tok::RParen, ")");
    return first;
  }
  if (t.k == Tok::ConName) {
    s.next();
    return tCon(t.text);
  }
  if (t.k == Tok::Name) {
    s.next();
    return tVar(t.text);
  }
  throw SyntaxError(t.span, "expected a type", "type");
}

bool startsAType(const Stream& s) {
  switch (s.peek().k) {
    case Tok::LParen:
    case Tok::ConName:
    case Tok::Name:
      return true;
    default:
      return false;
  }
}

TypePtr parseBType(Stream& s) {
  Span sp = s.peek().span;
  TypePtr head = parseAType(s);
  std::vector<TypePtr> args;
  while (startsAType(s)) args.push_back(parseAType(s));
  if (args.empty()) return head;
  if (head->k == Type::K::Con && head->args.empty()) {
    auto it = kindTable().find(head->name);
    if (it == kindTable().end())
      throw SyntaxError(sp, "unknown type constructor " + head->name);
    if ((int)args.size() != it->second)
      throw SyntaxError(sp, head->name + " expects " + std::to_string(it->second) +
                                " type arguments");
    return tCon(head->name, std::move(args));
  }
  if (head->k == Type::K::Var) {
    if (args.size() != 2)
      throw SyntaxError(sp, "constructor variable " + head->name +
                                " must be applied to exactly two types");
    return tArrow(CtorRef::mkVar(head->name), args[0], args[1]);
  }
  throw SyntaxError(sp, "type cannot be applied");
}

TypePtr parseTypeTop(Stream& s) {
  TypePtr lhs = parseBType(s);
  if (s.at(Tok::Arrow)) {
    std::string tok = s.next().text;
    TypePtr rhs = parseTypeTop(s);  // arrows associate to the right
    return tArrow(flavorOfToken(tok), lhs, rhs);
  }
  return lhs;
}

Predicate parseOnePred(Stream& s) {
  const Token& t = s.peek();
  if (t.k == Tok::ConName && t.text == "Un") {
    s.next();
    return Predicate::un(parseAType(s));
  }
  if (t.k == Tok::ConName && (t.text == "ShFun" || t.text == "SeFun")) {
    std::string which = s.next().text;
    Token n = s.expect(Tok::Name, "constructor variable");
    CtorRef c = CtorRef::mkVar(n.text);
    return which == "ShFun" ? Predicate::shFun(c) : Predicate::seFun(c);
  }
  TypePtr lhs = parseBType(s);
  s.expect(Tok::GeqOp, ">=");
  TypePtr rhs = parseBType(s);
  return Predicate::geq(lhs, rhs);
}

bool tryParsePreds(Stream& s, PredicateSet& out) {
  Stream::Mark mark = s.save();
  try {
    PredicateSet ps;
    if (s.at(Tok::LParen)) {
      s.next();
      s.pushGuard(0);
      if (!s.at(Tok::RParen)) {
        ps.add(parseOnePred(s));
        while (s.at(Tok::Comma)) {
          s.next();
          ps.add(parseOnePred(s));
        }
      }
      s.popGuard();
      s.expect(Tok::RParen, ")");
    } else {
      ps.add(parseOnePred(s));
    }
    s.expect(Tok::FatArrow, "=>");
    out = ps;
    return true;
  } catch (const SyntaxError&) {
    s.restore(mark);
    return false;
  }
}

Scheme parseSchemeTop(Stream& s, bool implicitQuantify = true) {
  std::vector<std::string> explicitVars;
  if (s.at(Tok::KwForall)) {
    s.next();
    while (s.at(Tok::Name)) explicitVars.push_back(s.next().text);
    s.expect(Tok::Dot, ".");
  }
  PredicateSet preds;
  tryParsePreds(s, preds);
  TypePtr body = parseTypeTop(s);

  // classify binder kinds by how each name is used, then close the scheme
  // over any remaining free variables (annotations are implicitly
  // quantified, as in Fig-style signatures like Exception -* IO a).
  std::set<std::string> tvs, cvs;
  freeTypeVars(body, tvs, cvs);
  for (const auto& p : preds.items()) freeVarsOfPred(p, tvs, cvs);

  std::vector<Quantifier> binders;
  std::set<std::string> seen;
  auto addBinder = [&](const std::string& n) {
    if (seen.count(n)) return;
    seen.insert(n);
    if (cvs.count(n) && tvs.count(n))
      throw SyntaxError({}, "variable " + n + " used both as a type and as a constructor");
    binders.push_back({n, cvs.count(n) ? VarKind::CtorVar : VarKind::TypeVar});
  };
  for (const auto& n : explicitVars) addBinder(n);
  if (implicitQuantify) {
    // close over remaining free variables, in order of appearance
    std::function<void(const TypePtr&)> walk = [&](const TypePtr& t) {
      if (!t) return;
      switch (t->k) {
        case Type::K::Var: addBinder(t->name); break;
        case Type::K::Con:
          for (const auto& a : t->args) walk(a);
          break;
        case Type::K::Arrow:
          if (t->ctor.isVar) addBinder(t->ctor.var);
          walk(t->dom);
          walk(t->cod);
          break;
      }
    };
    for (const auto& p : preds.items()) {
      if (p.ctor.isVar) addBinder(p.ctor.var);
      walk(p.a);
      walk(p.b);
    }
    walk(body);
  }

  Scheme sch(std::move(binders), std::move(preds), body);
  kindCheck(body);
  for (const auto& p : sch.preds.items()) {
    if (p.a) kindCheck(p.a);
    if (p.b) kindCheck(p.b);
  }
  return sch;
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

TermPtr parseExprTop(Stream& s);

TermPtr parseAtom(Stream& s) {
  const Token& t = s.peek();
  Span sp = t.span;
  switch (t.k) {
    case Tok::Name:
      s.next();
      return mkVar(t.text, sp);
    case Tok::ConName:
      // data constructors (Left/Right) are ordinary names in expressions
      s.next();
      return mkVar(t.text, sp);
    case Tok::Int:
      s.next();
      return mkLit(Literal::integer(t.intVal), sp);
    case Tok::Str:
      s.next();
      return mkLit(Literal::str(t.text), sp);
    case Tok::LParen: {
      s.next();
      s.pushGuard(0);
      if (s.at(Tok::RParen)) {
        s.popGuard();
        s.next();
        return mkLit(Literal::unit(), sp);
      }
      TermPtr first = parseExprTop(s);
      if (s.at(Tok::Comma)) {
        s.next();
        TermPtr second = parseExprTop(s);
        s.popGuard();
        s.expect(Tok::RParen, ")");
        return mkPairTerm(first, second, sp);
      }
      s.popGuard();
      s.expect(Tok::RParen, ")");
      return first;
    }
    default:
      throw SyntaxError(sp, "expected an expression", "expression");
  }
}

bool startsAtom(const Stream& s) {
  switch (s.peek().k) {
    case Tok::Name:
    case Tok::ConName:
    case Tok::Int:
    case Tok::Str:
    case Tok::LParen:
      return true;
    default:
      return false;
  }
}

TermPtr parseDoBlock(Stream& s);

TermPtr parseApp(Stream& s) {
  TermPtr head = parseAtom(s);
  while (startsAtom(s)) {
    Span sp = s.peek().span;
    head = mkApp(head, parseAtom(s), sp);
  }
  return head;
}

TermPtr parseExprTop(Stream& s) {
  const Token& t = s.peek();
  Span sp = t.span;
  if (t.k == Tok::LambdaSep || t.k == Tok::LambdaSh) {
    bool sep = t.k == Tok::LambdaSep;
    s.next();
    std::vector<std::string> params;
    while (s.at(Tok::Name)) params.push_back(s.next().text);
    if (params.empty()) throw SyntaxError(s.peek().span, "expected a parameter name");
    s.expect(Tok::Dot, ".");
    TermPtr body = parseExprTop(s);
    for (auto it = params.rbegin(); it != params.rend(); ++it)
      body = sep ? mkLamSep(*it, body, sp) : mkLamSh(*it, body, sp);
    return body;
  }
  if (t.k == Tok::KwLet) {
    s.next();
    if (s.at(Tok::LParen)) {
      s.next();
      Token n1 = s.expect(Tok::Name, "name");
      s.expect(Tok::Comma, ",");
      Token n2 = s.expect(Tok::Name, "name");
      s.expect(Tok::RParen, ")");
      s.expect(Tok::Equals, "=");
      TermPtr bound = parseExprTop(s);
      s.expect(Tok::KwIn, "in");
      TermPtr body = parseExprTop(s);
      return mkLetPair(n1.text, n2.text, bound, body, sp);
    }
    Token n = s.expect(Tok::Name, "name");
    s.expect(Tok::Equals, "=");
    TermPtr bound = parseExprTop(s);
    s.expect(Tok::KwIn, "in");
    TermPtr body = parseExprTop(s);
    return mkLet(n.text, bound, body, sp);
  }
  if (t.k == Tok::KwDo) return parseDoBlock(s);

  TermPtr e = parseApp(s);
  // backtick infix: a `f` b  ==>  f a b
  while (s.at(Tok::Backtick)) {
    Span bsp = s.peek().span;
    s.next();
    Token f = s.expect(Tok::Name, "infix name");
    s.expect(Tok::Backtick, "`");
    TermPtr rhs = parseApp(s);
    e = mkApp(mkApp(mkVar(f.text, bsp), e, bsp), rhs, bsp);
  }
  return e;
}

// One do-statement; the caller has a layout guard in place so expressions
// stop before the next statement or the end of the block.
Term::DoStmt parseDoStmt(Stream& s) {
  Term::DoStmt st;
  st.span = s.peek().span;
  Stream::Mark mark = s.save();
  if (s.at(Tok::Name)) {
    Token n = s.next();
    if (s.at(Tok::BindArrow)) {
      s.next();
      st.k = Term::DoStmt::K::Bind;
      st.n1 = n.text;
      st.e = parseExprTop(s);
      return st;
    }
    s.restore(mark);
  } else if (s.at(Tok::LParen)) {
    s.next();
    if (s.at(Tok::Name)) {
      Token n1 = s.next();
      if (s.at(Tok::Comma)) {
        s.next();
        if (s.at(Tok::Name)) {
          Token n2 = s.next();
          if (s.at(Tok::RParen)) {
            s.next();
            if (s.at(Tok::BindArrow)) {
              s.next();
              st.k = Term::DoStmt::K::PairBind;
              st.n1 = n1.text;
              st.n2 = n2.text;
              st.e = parseExprTop(s);
              return st;
            }
          }
        }
      }
    }
    s.restore(mark);
  } else if (s.at(Tok::KwLet)) {
    // `let x = e` statement vs `let x = e in b` expression
    s.next();
    if (s.at(Tok::Name)) {
      Token n = s.next();
      if (s.at(Tok::Equals)) {
        s.next();
        TermPtr bound = parseExprTop(s);
        if (!s.at(Tok::KwIn)) {
          st.k = Term::DoStmt::K::Let;
          st.n1 = n.text;
          st.e = bound;
          return st;
        }
      }
    }
    s.restore(mark);
  }
  st.k = Term::DoStmt::K::Expr;
  st.e = parseExprTop(s);
  return st;
}

TermPtr parseDoBlock(Stream& s) {
  Span sp = s.peek().span;
  s.expect(Tok::KwDo, "do");
  const Token& first = s.peek();
  if (first.k == Tok::End) throw SyntaxError(first.span, "empty do block");
  int anchor = first.span.column;
  std::vector<Term::DoStmt> stmts;
  for (;;) {
    s.pushGuard(anchor);
    stmts.push_back(parseDoStmt(s));
    bool semi = s.at(Tok::Semi);
    if (semi) s.next();
    s.popGuard();
    if (semi) continue;
    // a new line at exactly the anchor column starts the next statement
    const Token& nt = s.raw();
    if (nt.k != Tok::End && nt.firstOnLine && nt.span.column == anchor &&
        !s.blocked()) {
      continue;
    }
    break;
  }
  return mkDo(std::move(stmts), sp);
}

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

Expectation scanExpectation(const std::string& src) {
  Expectation e;
  int count = 0;
  size_t pos = 0;
  while (pos < src.size()) {
    size_t eol = src.find('\n', pos);
    if (eol == std::string::npos) eol = src.size();
    std::string lineStr = src.substr(pos, eol - pos);
    size_t c = lineStr.find("--");
    if (c != std::string::npos) {
      std::string comment = lineStr.substr(c + 2);
      size_t b = comment.find_first_not_of(" \t");
      if (b != std::string::npos && comment.compare(b, 7, "expect:") == 0) {
        ++count;
        if (count > 1) throw SyntaxError({}, "more than one expect directive");
        std::string rest = comment.substr(b + 7);
        std::vector<std::string> words;
        size_t w = 0;
        while (w < rest.size()) {
          size_t ws = rest.find_first_not_of(" \t", w);
          if (ws == std::string::npos) break;
          size_t we = rest.find_first_of(" \t", ws);
          if (we == std::string::npos) we = rest.size();
          words.push_back(rest.substr(ws, we - ws));
          w = we;
        }
        if (words.empty()) throw SyntaxError({}, "empty expect directive");
        if (words[0] == "ok" && words.size() == 1) {
          e.k = Expectation::K::Ok;
        } else if (words[0] == "type-error" && words.size() == 2) {
          e.k = Expectation::K::TypeError;
          e.code = words[1];
        } else if (words[0] == "runtime-error" && words.size() == 2) {
          e.k = Expectation::K::RuntimeError;
          e.code = words[1];
        } else {
          throw SyntaxError({}, "bad expect directive: " + rest);
        }
      }
    }
    pos = eol + 1;
  }
  return e;
}

}  // namespace

SurfaceProgram parseProgram(const std::string& source) {
  SurfaceProgram prog;
  prog.expectation = scanExpectation(source);
  Stream s(lex(source));
  std::set<std::string> names;
  while (!s.at(Tok::End)) {
    Token n = s.expect(Tok::Name, "definition name");
    TopDef def;
    def.name = n.text;
    def.span = n.span;
    if (s.at(Tok::DoubleColon)) {
      s.next();
      s.pushGuard(n.span.column);
      def.annotation = parseSchemeTop(s);
      s.popGuard();
      Token n2 = s.expect(Tok::Name, "definition for " + def.name);
      if (n2.text != def.name)
        throw SyntaxError(n2.span, "annotation for " + def.name +
                                       " must be followed by its definition");
    }
    while (s.at(Tok::Name)) def.params.push_back(s.next().text);
    s.expect(Tok::Equals, "=");
    // the body ends where a new top-level line begins
    s.pushGuard(n.span.column);
    def.body = parseExprTop(s);
    s.popGuard();
    if (!names.insert(def.name).second)
      throw SyntaxError(n.span, "duplicate definition of " + def.name);
    prog.defs.push_back(std::move(def));
  }
  return prog;
}

TermPtr parseExpr(const std::string& source) {
  Stream s(lex(source));
  TermPtr t = parseExprTop(s);
  if (!s.at(Tok::End))
    throw SyntaxError(s.peek().span, "trailing input after expression");
  return t;
}

TypePtr parseType(const std::string& source) {
  Stream s(lex(source));
  TypePtr t = parseTypeTop(s);
  if (!s.at(Tok::End)) throw SyntaxError(s.peek().span, "trailing input after type");
  kindCheck(t);
  return t;
}

Scheme parseScheme(const std::string& source) {
  Stream s(lex(source));
  Scheme sch = parseSchemeTop(s);
  if (!s.at(Tok::End)) throw SyntaxError(s.peek().span, "trailing input after scheme");
  return sch;
}

Scheme parseSchemeRaw(const std::string& source) {
  Stream s(lex(source));
  Scheme sch = parseSchemeTop(s, /*implicitQuantify=*/false);
  if (!s.at(Tok::End)) throw SyntaxError(s.peek().span, "trailing input after scheme");
  return sch;
}

}  // namespace qub
