#ifndef QUB_BASIC_HPP
#define QUB_BASIC_HPP

#include <stdexcept>
#include <string>

namespace qub {

struct Span {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  std::string str() const {
    if (!known()) return "<unknown>";
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

// Raised by the lexer/parser/desugarer. Carries the position of the
// offending token and what the parser would have accepted there.
struct SyntaxError : std::runtime_error {
  Span span;
  std::string expected;

  SyntaxError(Span s, const std::string& msg, std::string exp = "")
      : std::runtime_error(msg), span(s), expected(std::move(exp)) {}
};

// Stable error codes; part of the external contract (the corpus harness
// matches on them, not on messages).
enum class ErrorCode {
  SeparationViolation,
  SharingRequired,
  ResourceDropped,
  ResourceDuplicated,
  PredicateRefuted,
  UnboundVar,
  TypeMismatch,
  ArrowFlavorMismatch,
  OccursCheck,
  DesugarError,
};

const char* errorCodeName(ErrorCode c);
bool errorCodeFromName(const std::string& name, ErrorCode& out);

struct TypeError : std::runtime_error {
  ErrorCode code;
  Span span;
  std::string contextFragment;  // rendered sharing-context slice

  TypeError(ErrorCode c, const std::string& msg, Span s = {},
            std::string ctxFrag = "")
      : std::runtime_error(msg),
        code(c),
        span(s),
        contextFragment(std::move(ctxFrag)) {}
};

// Internal invariant breach (unreachable on checked programs).
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qub

#endif
