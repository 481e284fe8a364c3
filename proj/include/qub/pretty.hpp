#ifndef QUB_PRETTY_HPP
#define QUB_PRETTY_HPP

#include <string>

#include "qub/term.hpp"
#include "qub/type.hpp"

namespace qub {

// Deterministic renderers. Term and type output parses back (see parser.hpp);
// the round trip is property-tested over the corpus.
std::string pretty(const TypePtr& t);
std::string pretty(const Scheme& s);
std::string pretty(const Predicate& p);
std::string pretty(const TermPtr& t);

std::string quoteString(const std::string& s);

}  // namespace qub

#endif
