#ifndef QUB_RUNTIME_HPP
#define QUB_RUNTIME_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qub/builtins.hpp"
#include "qub/term.hpp"

namespace qub {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Thunk;
using ThunkPtr = std::shared_ptr<Thunk>;
using Env = std::map<std::string, ThunkPtr>;

struct Value {
  enum class K { Lit, Closure, Pair, Handle, Either, Action, Exception, Prim };
  K k;
  Literal lit;                  // Lit
  TermPtr lam;                  // Closure (LamSep/LamSh node)
  Env env;                      // Closure
  ThunkPtr a, b;                // Pair / Either payload
  bool isRight = false;         // Either
  long long handleId = 0;       // Handle
  BuiltinSem sem{};             // Action / Prim
  std::vector<ThunkPtr> args;   // Action / Prim (collected arguments)
  int primArity = 0;            // Prim
  std::string exnMessage;       // Exception
};

struct Thunk {
  TermPtr term;   // unevaluated
  Env env;
  ValuePtr value; // pre-computed (value thunks force without evaluation)
  int forces = 0;
};

ThunkPtr thunkOfValue(ValuePtr v);
ThunkPtr thunkOfTerm(TermPtr t, Env env);

struct EvalStats {
  long long evaluations = 0;
  // thunks that were evaluated more than once and produced a value holding a
  // handle or a suspended action
  long long resourceReForces = 0;
};

// Call-by-name evaluation: arguments and let-bindings are passed as
// unevaluated thunks and re-evaluated on every force.
struct Evaluator {
  EvalStats stats;
  ValuePtr eval(const Env& env, const TermPtr& m);
  ValuePtr force(const ThunkPtr& t);
  ValuePtr apply(const ValuePtr& f, const ThunkPtr& arg);
};

// ---------------------------------------------------------------------------
// Dynamic resource semantics
// ---------------------------------------------------------------------------

struct AuditEvent {
  enum class K { Open, Read, Write, Close, Throw, Catch };
  K k;
  long long handleId = 0;   // Open/Read/Write/Close
  std::string detail;       // path for Open
  std::string str() const;
};

struct Violation {
  enum class K { DoubleClose, UseAfterClose, Leak };
  K k;
  long long handleId;
  int eventIndex;  // 1-based; Leak points at the unmatched Open
  std::string str() const;
  const char* code() const;
};

struct ResourceAudit {
  std::vector<AuditEvent> events;
  std::vector<Violation> violations;
};

// Violations are a pure function of the event list; the interpreter uses this
// same replay, so a recorded audit can always be re-derived.
std::vector<Violation> replayViolations(const std::vector<AuditEvent>& events);

std::string auditReport(const ResourceAudit& a);

// In-memory filesystem model: path -> lines.
struct FsModel {
  std::map<std::string, std::vector<std::string>> files;
  static FsModel parseFixture(const std::string& text);  // path = "content" lines
};

struct RunOutcome {
  bool uncaught = false;
  ValuePtr value;           // when !uncaught
  ValuePtr exception;       // when uncaught
  ResourceAudit audit;
  EvalStats stats;
};

struct RunOptions {
  FsModel fs;
  std::optional<int> injectThrowAt;  // 1-based index of the IOF op that throws
  bool realFs = false;               // opt-in; reads/writes the actual files
};

// Interprets an IO/IOF action value. Records every handle event; leaks are
// swept at termination.
RunOutcome runIO(Evaluator& ev, const ValuePtr& action, const RunOptions& opts);

// Program-level convenience: builds the global environment from elaborated
// definitions, evaluates `mainName` and runs it.
RunOutcome runProgram(const std::vector<std::pair<std::string, TermPtr>>& defs,
                      const std::string& mainName, const RunOptions& opts);

std::string showValue(Evaluator& ev, const ValuePtr& v);

}  // namespace qub

#endif
