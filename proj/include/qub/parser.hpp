#ifndef QUB_PARSER_HPP
#define QUB_PARSER_HPP

#include <string>

#include "qub/term.hpp"
#include "qub/type.hpp"

namespace qub {

// Parses a whole source file: top-level definitions with optional `::`
// annotations, `--` comments, and at most one `-- expect:` directive.
// Throws SyntaxError.
SurfaceProgram parseProgram(const std::string& source);

// Single-expression / single-type entry points (used by tests and the
// derivation dump reader).
TermPtr parseExpr(const std::string& source);
TypePtr parseType(const std::string& source);
Scheme parseScheme(const std::string& source);

// As parseScheme but without implicit quantification: only variables under
// an explicit forall are bound, the rest stay free (derivation dumps mention
// skolemized variables).
Scheme parseSchemeRaw(const std::string& source);

}  // namespace qub

#endif
