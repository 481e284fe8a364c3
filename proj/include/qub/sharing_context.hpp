#ifndef QUB_SHARING_CONTEXT_HPP
#define QUB_SHARING_CONTEXT_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qub/type.hpp"

namespace qub {

// Failure witnesses for the partial context operators. The data is enough to
// reproduce the failed side condition.
struct ContextError {
  enum class K { NotDisjoint, NotCompleteSharing, DuplicateVariable, TypeMismatch };
  K k;
  std::string witness;                    // NotDisjoint / DuplicateVariable
  std::set<std::string> lhsUsed, rhsUsed; // NotCompleteSharing
  std::string str() const;
};

// The typing context as a sharing graph: each variable carries the set of
// names it is in sharing with. The relation is kept symmetric between bound
// variables; reflexive self-edges are implicit and never stored. Sharing sets
// may mention names that are not bound here (dangling records are legal and
// count toward Used).
class SharingContext {
 public:
  struct Entry {
    std::set<std::string> sharing;
    TypePtr type;
  };

  SharingContext() = default;

  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  bool hasVar(const std::string& x) const { return entries_.count(x) != 0; }
  const Entry& entry(const std::string& x) const;
  const std::map<std::string, Entry>& entries() const { return entries_; }

  std::set<std::string> vars() const;
  std::set<std::string> shared() const;
  std::set<std::string> used() const;

  // Adds (x, sharing, type); error if x is already bound.
  SharingContext withEntry(const std::string& x, std::set<std::string> sharing,
                           TypePtr type) const;

  // Binding forms used by the lambda rules.
  enum class BindMode { Separated, SharedWithAll };
  SharingContext bindFresh(const std::string& x, TypePtr type, BindMode mode) const;

  // Every sharing set containing a has a removed and bs unioned in.
  SharingContext substituteSharing(const std::string& a,
                                   const std::set<std::string>& bs) const;
  SharingContext substituteSharingMany(const std::vector<std::string>& as,
                                       const std::set<std::string>& bs) const;

  // Inserts x into every sharing set (the binder half of shared-with-all).
  SharingContext insertEverywhere(const std::string& x) const;

  // Removes x's entry and scrubs x from all sharing sets.
  SharingContext without(const std::string& x) const;

  // Restriction to a set of variables (sharing sets kept as-is).
  SharingContext restrictTo(const std::set<std::string>& keep) const;

  std::string str() const;  // {x^{y,z}: T, ...}

  // Symmetry validator: returns a violation description, or nullopt.
  std::optional<std::string> validate() const;

  bool operator==(const SharingContext& o) const;

 private:
  std::map<std::string, Entry> entries_;
};

// Join of two contexts. Overlapping variables must agree on their type and
// get their sharing sets unioned.
SharingContext joinContexts(const SharingContext& g, const SharingContext& h);

// The two combination operators, partial: a ContextError is returned instead
// of a context when the side condition fails.
struct CombineResult {
  std::optional<SharingContext> ctx;
  std::optional<ContextError> err;
  bool ok() const { return ctx.has_value(); }
};

CombineResult combineDisjoint(const SharingContext& g, const SharingContext& h);
CombineResult combineSharing(const SharingContext& g, const SharingContext& h);

}  // namespace qub

#endif
