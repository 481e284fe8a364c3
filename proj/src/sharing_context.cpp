#include "qub/sharing_context.hpp"

#include <sstream>

#include "qub/pretty.hpp"

namespace qub {

std::string ContextError::str() const {
  std::ostringstream o;
  switch (k) {
    case K::NotDisjoint:
      o << "contexts not disjoint: " << witness << " occurs on both sides";
      break;
    case K::NotCompleteSharing: {
      o << "contexts not in complete sharing: Used {";
      bool f = true;
      for (const auto& v : lhsUsed) { if (!f) o << ","; o << v; f = false; }
      o << "} vs {";
      f = true;
      for (const auto& v : rhsUsed) { if (!f) o << ","; o << v; f = false; }
      o << "}";
      break;
    }
    case K::DuplicateVariable:
      o << "variable bound twice: " << witness;
      break;
    case K::TypeMismatch:
      o << "variable " << witness << " bound at two different types";
      break;
  }
  return o.str();
}

const SharingContext::Entry& SharingContext::entry(const std::string& x) const {
  auto it = entries_.find(x);
  if (it == entries_.end()) throw InternalError("no context entry for " + x);
  return it->second;
}

std::set<std::string> SharingContext::vars() const {
  std::set<std::string> out;
  for (const auto& [name, e] : entries_) out.insert(name);
  return out;
}

std::set<std::string> SharingContext::shared() const {
  std::set<std::string> out;
  for (const auto& [name, e] : entries_) out.insert(e.sharing.begin(), e.sharing.end());
  return out;
}

std::set<std::string> SharingContext::used() const {
  std::set<std::string> out = vars();
  for (const auto& [name, e] : entries_) out.insert(e.sharing.begin(), e.sharing.end());
  return out;
}

SharingContext SharingContext::withEntry(const std::string& x,
                                         std::set<std::string> sharing,
                                         TypePtr type) const {
  if (entries_.count(x))
    throw TypeError(ErrorCode::TypeMismatch, "variable bound twice: " + x);
  SharingContext g = *this;
  sharing.erase(x);  // reflexivity is implicit, never stored
  g.entries_[x] = Entry{std::move(sharing), std::move(type)};
  return g;
}

SharingContext SharingContext::bindFresh(const std::string& x, TypePtr type,
                                         BindMode mode) const {
  if (used().count(x))
    throw TypeError(ErrorCode::TypeMismatch, "name not fresh for context: " + x);
  if (mode == BindMode::Separated) return withEntry(x, {}, std::move(type));
  SharingContext g = insertEverywhere(x);
  return g.withEntry(x, vars(), std::move(type));
}

SharingContext SharingContext::substituteSharing(const std::string& a,
                                                 const std::set<std::string>& bs) const {
  SharingContext g;
  for (const auto& [name, e] : entries_) {
    Entry ne = e;
    if (ne.sharing.erase(a)) {
      ne.sharing.insert(bs.begin(), bs.end());
      ne.sharing.erase(name);
    }
    g.entries_[name] = std::move(ne);
  }
  return g;
}

SharingContext SharingContext::substituteSharingMany(
    const std::vector<std::string>& as, const std::set<std::string>& bs) const {
  SharingContext g = *this;
  for (const auto& a : as) g = g.substituteSharing(a, bs);
  return g;
}

SharingContext SharingContext::insertEverywhere(const std::string& x) const {
  SharingContext g;
  for (const auto& [name, e] : entries_) {
    Entry ne = e;
    if (name != x) ne.sharing.insert(x);
    g.entries_[name] = std::move(ne);
  }
  return g;
}

SharingContext SharingContext::without(const std::string& x) const {
  SharingContext g;
  for (const auto& [name, e] : entries_) {
    if (name == x) continue;
    Entry ne = e;
    ne.sharing.erase(x);
    g.entries_[name] = std::move(ne);
  }
  return g;
}

SharingContext SharingContext::restrictTo(const std::set<std::string>& keep) const {
  SharingContext g;
  for (const auto& [name, e] : entries_)
    if (keep.count(name)) g.entries_[name] = e;
  return g;
}

std::string SharingContext::str() const {
  std::ostringstream o;
  o << "{";
  bool first = true;
  for (const auto& [name, e] : entries_) {
    if (!first) o << ", ";
    first = false;
    o << name << "^{";
    bool f2 = true;
    for (const auto& s : e.sharing) {
      if (!f2) o << ",";
      o << s;
      f2 = false;
    }
    o << "}: " << pretty(e.type);
  }
  o << "}";
  return o.str();
}

std::optional<std::string> SharingContext::validate() const {
  for (const auto& [name, e] : entries_) {
    if (e.sharing.count(name))
      return "reflexive self-edge stored on " + name;
    for (const auto& y : e.sharing) {
      auto it = entries_.find(y);
      if (it != entries_.end() && !it->second.sharing.count(name))
        return "sharing not symmetric between " + name + " and " + y;
    }
  }
  return std::nullopt;
}

bool SharingContext::operator==(const SharingContext& o) const {
  if (entries_.size() != o.entries_.size()) return false;
  for (const auto& [name, e] : entries_) {
    auto it = o.entries_.find(name);
    if (it == o.entries_.end()) return false;
    if (e.sharing != it->second.sharing) return false;
    if (!typeEq(e.type, it->second.type)) return false;
  }
  return true;
}

SharingContext joinContexts(const SharingContext& g, const SharingContext& h) {
  SharingContext out = g;
  for (const auto& [name, e] : h.entries()) {
    if (!out.hasVar(name)) {
      out = out.withEntry(name, e.sharing, e.type);
      continue;
    }
    const auto& mine = out.entry(name);
    if (!typeEq(mine.type, e.type))
      throw TypeError(ErrorCode::TypeMismatch,
                      "variable " + name + " joined at two different types");
    std::set<std::string> sh = mine.sharing;
    sh.insert(e.sharing.begin(), e.sharing.end());
    SharingContext rebuilt;
    for (const auto& [n2, e2] : out.entries()) {
      if (n2 == name) continue;
      rebuilt = rebuilt.withEntry(n2, e2.sharing, e2.type);
    }
    out = rebuilt.withEntry(name, sh, mine.type);
  }
  return out;
}

namespace {
bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b,
              std::string* witness) {
  for (const auto& x : a)
    if (b.count(x)) {
      if (witness) *witness = x;
      return false;
    }
  return true;
}
}  // namespace

CombineResult combineDisjoint(const SharingContext& g, const SharingContext& h) {
  std::string w;
  if (!disjoint(g.vars(), h.used(), &w) || !disjoint(h.vars(), g.used(), &w)) {
    ContextError e;
    e.k = ContextError::K::NotDisjoint;
    e.witness = w;
    return {std::nullopt, e};
  }
  // vars are disjoint, so the join cannot hit the overlap path
  return {joinContexts(g, h), std::nullopt};
}

CombineResult combineSharing(const SharingContext& g, const SharingContext& h) {
  if (g.used() != h.used()) {
    ContextError e;
    e.k = ContextError::K::NotCompleteSharing;
    e.lhsUsed = g.used();
    e.rhsUsed = h.used();
    return {std::nullopt, e};
  }
  for (const auto& [name, entry] : g.entries()) {
    if (h.hasVar(name) && !typeEq(entry.type, h.entry(name).type)) {
      ContextError e;
      e.k = ContextError::K::TypeMismatch;
      e.witness = name;
      return {std::nullopt, e};
    }
  }
  return {joinContexts(g, h), std::nullopt};
}

}  // namespace qub
