#ifndef QUB_DERIVATION_HPP
#define QUB_DERIVATION_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qub/sharing_context.hpp"
#include "qub/term.hpp"
#include "qub/type.hpp"

namespace qub {

// One node per applied rule. `term` holds the elaborated subterm (generic
// bind/return resolved), so the root's term doubles as the executable form
// of a checked definition.
struct Derivation {
  std::string rule;  // ID, CTR-UN, CTR-SH, WKN-UN, WKN-SH, LET, FORALL-I,
                     // FORALL-E, IMPL-I, IMPL-E, SH-I, SH-E, SEP-I, SEP-E
  PredicateSet preds;
  SharingContext ctx;
  TermPtr term;
  Scheme sigma;
  std::vector<Derivation> kids;
  std::vector<std::string> dupVars;  // CTR-UN / CTR-SH annotation
};

struct RuleViolation {
  std::string path;  // e.g. "0.1" child indices from the root
  std::string message;
};

// Environment the validator resolves leaf schemes against.
struct DerivEnv {
  std::map<std::string, Scheme> programDefs;
};

// Re-checks every node against its rule schema: exact premise contexts,
// combination side conditions, entailment premises, quantifier freshness.
// Purely structural; shares nothing with the checker's traversal.
std::vector<RuleViolation> validateDerivation(const Derivation& d, const DerivEnv& env);

// Indented rule-per-line dump, stable for golden tests. Parseable back.
std::string dumpDerivation(const Derivation& d);
Derivation parseDerivationDump(const std::string& text);

}  // namespace qub

#endif
