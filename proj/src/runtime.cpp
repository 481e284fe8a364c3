#include "qub/runtime.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qub/pretty.hpp"

namespace qub {

namespace {

ValuePtr mkVal(Value v) { return std::make_shared<Value>(std::move(v)); }

ValuePtr litV(Literal l) {
  Value v;
  v.k = Value::K::Lit;
  v.lit = std::move(l);
  return mkVal(std::move(v));
}

ValuePtr unitV() { return litV(Literal::unit()); }

bool holdsResource(const ValuePtr& v) {
  switch (v->k) {
    case Value::K::Handle:
    case Value::K::Action:
      return true;
    default:
      return false;
  }
}

// Exception unwinding inside the action interpreter.
struct QubThrow {
  ValuePtr exc;
};

struct StuckTerm : InternalError {
  using InternalError::InternalError;
};

}  // namespace

ThunkPtr thunkOfValue(ValuePtr v) {
  auto t = std::make_shared<Thunk>();
  t->value = std::move(v);
  return t;
}

ThunkPtr thunkOfTerm(TermPtr tm, Env env) {
  auto t = std::make_shared<Thunk>();
  t->term = std::move(tm);
  t->env = std::move(env);
  return t;
}

ValuePtr Evaluator::force(const ThunkPtr& t) {
  if (t->value) return t->value;
  t->forces++;
  ValuePtr v = eval(t->env, t->term);
  if (t->forces > 1 && holdsResource(v)) stats.resourceReForces++;
  return v;
}

ValuePtr Evaluator::apply(const ValuePtr& f, const ThunkPtr& arg) {
  switch (f->k) {
    case Value::K::Closure: {
      Env env = f->env;
      env[f->lam->name] = arg;
      return eval(env, f->lam->a);
    }
    case Value::K::Prim: {
      Value next = *f;
      next.args.push_back(arg);
      if ((int)next.args.size() < next.primArity) return mkVal(std::move(next));
      // saturated
      switch (next.sem) {
        case BuiltinSem::Caps: {
          ValuePtr s = force(next.args[0]);
          if (s->k != Value::K::Lit || s->lit.k != Literal::K::Str)
            throw StuckTerm("caps applied to a non-string");
          std::string out = s->lit.s;
          std::transform(out.begin(), out.end(), out.begin(),
                         [](unsigned char c) { return std::toupper(c); });
          return litV(Literal::str(out));
        }
        case BuiltinSem::MkPair: {
          Value v;
          v.k = Value::K::Pair;
          v.a = next.args[0];
          v.b = next.args[1];
          return mkVal(std::move(v));
        }
        case BuiltinSem::Left:
        case BuiltinSem::Right: {
          Value v;
          v.k = Value::K::Either;
          v.isRight = next.sem == BuiltinSem::Right;
          v.a = next.args[0];
          return mkVal(std::move(v));
        }
        case BuiltinSem::MkException: {
          ValuePtr s = force(next.args[0]);
          if (s->k != Value::K::Lit || s->lit.k != Literal::K::Str)
            throw StuckTerm("mkException applied to a non-string");
          Value v;
          v.k = Value::K::Exception;
          v.exnMessage = s->lit.s;
          return mkVal(std::move(v));
        }
        case BuiltinSem::Unpair: {
          ValuePtr p = force(next.args[0]);
          if (p->k != Value::K::Pair) throw StuckTerm("unpair applied to a non-pair");
          ValuePtr k = force(next.args[1]);
          return apply(apply(k, p->a), p->b);
        }
        default: {
          // file/exception API: suspend
          Value v;
          v.k = Value::K::Action;
          v.sem = next.sem;
          v.args = next.args;
          return mkVal(std::move(v));
        }
      }
    }
    default:
      throw StuckTerm("application of a non-function value");
  }
}

ValuePtr Evaluator::eval(const Env& env, const TermPtr& m) {
  stats.evaluations++;
  switch (m->k) {
    case Term::K::Var: {
      auto it = env.find(m->name);
      if (it == env.end()) throw StuckTerm("unbound variable at runtime: " + m->name);
      return force(it->second);
    }
    case Term::K::Builtin: {
      auto it = stdlibEnv().find(m->name);
      if (it == stdlibEnv().end())
        throw StuckTerm("unresolved builtin at runtime: " + m->name);
      Value v;
      v.k = Value::K::Prim;
      v.sem = it->second.sem;
      v.primArity = it->second.arity;
      return mkVal(std::move(v));
    }
    case Term::K::Lit:
      return litV(m->lit);
    case Term::K::LamSep:
    case Term::K::LamSh: {
      Value v;
      v.k = Value::K::Closure;
      v.lam = m;
      v.env = env;
      return mkVal(std::move(v));
    }
    case Term::K::App: {
      ValuePtr f = eval(env, m->a);
      return apply(f, thunkOfTerm(m->b, env));
    }
    case Term::K::Let: {
      Env env2 = env;
      env2[m->name] = thunkOfTerm(m->a, env);
      return eval(env2, m->b);
    }
    default:
      throw StuckTerm("surface form reached the evaluator");
  }
}

// ---------------------------------------------------------------------------
// Audit
// ---------------------------------------------------------------------------

std::string AuditEvent::str() const {
  switch (k) {
    case K::Open: return "open handle#" + std::to_string(handleId) + " (" + detail + ")";
    case K::Read: return "read handle#" + std::to_string(handleId);
    case K::Write: return "write handle#" + std::to_string(handleId);
    case K::Close: return "close handle#" + std::to_string(handleId);
    case K::Throw: return "throw";
    case K::Catch: return "catch";
  }
  return "?";
}

const char* Violation::code() const {
  switch (k) {
    case K::DoubleClose: return "DOUBLE_CLOSE";
    case K::UseAfterClose: return "USE_AFTER_CLOSE";
    case K::Leak: return "LEAK";
  }
  return "?";
}

std::string Violation::str() const {
  return std::string(code()) + " handle#" + std::to_string(handleId) + " at event " +
         std::to_string(eventIndex);
}

std::vector<Violation> replayViolations(const std::vector<AuditEvent>& events) {
  std::vector<Violation> out;
  std::map<long long, int> openedAt;   // open handles -> open event index
  std::map<long long, bool> everOpen;  // closed state tracking
  std::map<long long, bool> isOpen;
  for (size_t i = 0; i < events.size(); ++i) {
    const AuditEvent& e = events[i];
    int idx = (int)i + 1;
    switch (e.k) {
      case AuditEvent::K::Open:
        openedAt[e.handleId] = idx;
        isOpen[e.handleId] = true;
        everOpen[e.handleId] = true;
        break;
      case AuditEvent::K::Close:
        if (!isOpen[e.handleId])
          out.push_back({Violation::K::DoubleClose, e.handleId, idx});
        isOpen[e.handleId] = false;
        break;
      case AuditEvent::K::Read:
      case AuditEvent::K::Write:
        if (everOpen[e.handleId] && !isOpen[e.handleId])
          out.push_back({Violation::K::UseAfterClose, e.handleId, idx});
        break;
      case AuditEvent::K::Throw:
      case AuditEvent::K::Catch:
        break;
    }
  }
  for (const auto& [id, open] : isOpen)
    if (open) out.push_back({Violation::K::Leak, id, openedAt[id]});
  std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    if (a.eventIndex != b.eventIndex) return a.eventIndex < b.eventIndex;
    if (a.handleId != b.handleId) return a.handleId < b.handleId;
    return std::string(a.code()) < std::string(b.code());
  });
  return out;
}

std::string auditReport(const ResourceAudit& a) {
  std::ostringstream o;
  for (const auto& v : a.violations) o << v.str() << "\n";
  o << a.violations.size() << " violation" << (a.violations.size() == 1 ? "" : "s");
  return o.str();
}

FsModel FsModel::parseFixture(const std::string& text) {
  FsModel fs;
  size_t pos = 0;
  int lineNo = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineNo;
    size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line.compare(b, 2, "--") == 0) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw SyntaxError({lineNo, 1}, "fixture line must be: path = \"content\"");
    std::string path = line.substr(0, eq);
    while (!path.empty() && (path.back() == ' ' || path.back() == '\t')) path.pop_back();
    path = path.substr(path.find_first_not_of(" \t"));
    std::string rhs = line.substr(eq + 1);
    size_t q1 = rhs.find('"');
    size_t q2 = rhs.rfind('"');
    if (q1 == std::string::npos || q2 == q1)
      throw SyntaxError({lineNo, 1}, "fixture content must be quoted");
    std::string raw = rhs.substr(q1 + 1, q2 - q1 - 1);
    std::string content;
    for (size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '\\' && i + 1 < raw.size()) {
        char c = raw[++i];
        content += c == 'n' ? '\n' : c == 't' ? '\t' : c;
      } else {
        content += raw[i];
      }
    }
    std::vector<std::string> lines;
    std::string cur;
    for (char c : content) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
    fs.files[path] = std::move(lines);
  }
  return fs;
}

// ---------------------------------------------------------------------------
// Action interpreter
// ---------------------------------------------------------------------------

namespace {

struct HandleState {
  std::string path;
  size_t cursor = 0;
  bool open = true;
};

struct Runner {
  Evaluator& ev;
  FsModel fs;
  bool realFs;
  std::optional<int> injectAt;
  int iofOps = 0;
  long long nextHandle = 1;
  std::map<long long, HandleState> handles;
  std::vector<AuditEvent> events;

  void event(AuditEvent::K k, long long id = 0, std::string detail = "") {
    events.push_back({k, id, std::move(detail)});
  }

  void injectionPoint() {
    ++iofOps;
    if (injectAt && *injectAt == iofOps) {
      event(AuditEvent::K::Throw);
      Value v;
      v.k = Value::K::Exception;
      v.exnMessage = "injected";
      throw QubThrow{mkVal(std::move(v))};
    }
  }

  std::string forceString(const ThunkPtr& t) {
    ValuePtr v = ev.force(t);
    if (v->k != Value::K::Lit || v->lit.k != Literal::K::Str)
      throw StuckTerm("expected a string value");
    return v->lit.s;
  }

  long long forceHandle(const ThunkPtr& t) {
    ValuePtr v = ev.force(t);
    if (v->k != Value::K::Handle) throw StuckTerm("expected a file handle");
    return v->handleId;
  }

  ValuePtr interpret(const ValuePtr& action) {
    if (action->k != Value::K::Action)
      throw StuckTerm("running a value that is not an IO action");
    switch (action->sem) {
      case BuiltinSem::OpenFile: {
        std::string path = forceString(action->args[0]);
        if (realFs && !fs.files.count(path)) {
          std::ifstream in(path);
          std::vector<std::string> lines;
          std::string line;
          while (std::getline(in, line)) lines.push_back(line);
          fs.files[path] = std::move(lines);
        }
        if (!fs.files.count(path)) fs.files[path] = {};
        long long id = nextHandle++;
        handles[id] = HandleState{path, 0, true};
        event(AuditEvent::K::Open, id, path);
        Value v;
        v.k = Value::K::Handle;
        v.handleId = id;
        return mkVal(std::move(v));
      }
      case BuiltinSem::CloseFile: {
        long long id = forceHandle(action->args[0]);
        event(AuditEvent::K::Close, id);
        auto it = handles.find(id);
        if (it != handles.end()) it->second.open = false;
        return unitV();
      }
      case BuiltinSem::ReadLine: {
        long long id = forceHandle(action->args[0]);
        injectionPoint();
        event(AuditEvent::K::Read, id);
        auto it = handles.find(id);
        std::string line;
        if (it != handles.end() && it->second.open) {
          auto& lines = fs.files[it->second.path];
          if (it->second.cursor >= lines.size()) {
            event(AuditEvent::K::Throw);
            Value v;
            v.k = Value::K::Exception;
            v.exnMessage = "end of file";
            throw QubThrow{mkVal(std::move(v))};
          }
          line = lines[it->second.cursor++];
        }
        Value h;
        h.k = Value::K::Handle;
        h.handleId = id;
        Value p;
        p.k = Value::K::Pair;
        p.a = thunkOfValue(litV(Literal::str(line)));
        p.b = thunkOfValue(mkVal(std::move(h)));
        return mkVal(std::move(p));
      }
      case BuiltinSem::WriteFile: {
        std::string s = forceString(action->args[0]);
        long long id = forceHandle(action->args[1]);
        injectionPoint();
        event(AuditEvent::K::Write, id);
        auto it = handles.find(id);
        if (it != handles.end() && it->second.open) {
          fs.files[it->second.path].push_back(s);
          if (realFs) {
            std::ofstream out(it->second.path, std::ios::app);
            out << s << "\n";
          }
        }
        Value h;
        h.k = Value::K::Handle;
        h.handleId = id;
        Value p;
        p.k = Value::K::Pair;
        p.a = thunkOfValue(unitV());
        p.b = thunkOfValue(mkVal(std::move(h)));
        return mkVal(std::move(p));
      }
      case BuiltinSem::Throw: {
        ValuePtr e = ev.force(action->args[0]);
        if (e->k != Value::K::Exception) throw StuckTerm("throw of a non-exception");
        event(AuditEvent::K::Throw);
        throw QubThrow{e};
      }
      case BuiltinSem::Catch:
      case BuiltinSem::CatchSep: {
        try {
          return interpret(ev.force(action->args[0]));
        } catch (const QubThrow& t) {
          event(AuditEvent::K::Catch);
          ValuePtr handler = ev.force(action->args[1]);
          ValuePtr next = ev.apply(handler, thunkOfValue(t.exc));
          return interpret(next);
        }
      }
      case BuiltinSem::BindIO:
      case BuiltinSem::BindIOF: {
        ValuePtr v = interpret(ev.force(action->args[0]));
        ValuePtr k = ev.force(action->args[1]);
        return interpret(ev.apply(k, thunkOfValue(v)));
      }
      case BuiltinSem::ReturnIO:
      case BuiltinSem::ReturnIOF:
        return ev.force(action->args[0]);
      case BuiltinSem::Lift:
        return interpret(ev.force(action->args[0]));
      default:
        throw StuckTerm("pure builtin suspended as an action");
    }
  }
};

}  // namespace

RunOutcome runIO(Evaluator& ev, const ValuePtr& action, const RunOptions& opts) {
  Runner r{ev, opts.fs, opts.realFs, opts.injectThrowAt};
  RunOutcome out;
  try {
    out.value = r.interpret(action);
  } catch (const QubThrow& t) {
    out.uncaught = true;
    out.exception = t.exc;
  }
  out.audit.events = std::move(r.events);
  out.audit.violations = replayViolations(out.audit.events);
  out.stats = ev.stats;
  return out;
}

RunOutcome runProgram(const std::vector<std::pair<std::string, TermPtr>>& defs,
                      const std::string& mainName, const RunOptions& opts) {
  Evaluator ev;
  Env global;
  for (const auto& [name, term] : defs) global[name] = thunkOfTerm(term, global);
  auto it = global.find(mainName);
  if (it == global.end())
    throw InternalError("program has no definition named " + mainName);
  ValuePtr mainV = ev.force(it->second);
  return runIO(ev, mainV, opts);
}

std::string showValue(Evaluator& ev, const ValuePtr& v) {
  switch (v->k) {
    case Value::K::Lit:
      switch (v->lit.k) {
        case Literal::K::Str: return quoteString(v->lit.s);
        case Literal::K::Int: return std::to_string(v->lit.i);
        case Literal::K::Unit: return "()";
      }
      return "()";
    case Value::K::Pair:
      return "(" + showValue(ev, ev.force(v->a)) + ", " + showValue(ev, ev.force(v->b)) + ")";
    case Value::K::Either:
      return std::string(v->isRight ? "Right " : "Left ") + showValue(ev, ev.force(v->a));
    case Value::K::Handle:
      return "handle#" + std::to_string(v->handleId);
    case Value::K::Closure:
      return "<closure>";
    case Value::K::Action:
      return "<io action>";
    case Value::K::Exception:
      return "exception: " + v->exnMessage;
    case Value::K::Prim:
      return "<builtin>";
  }
  return "?";
}

}  // namespace qub
