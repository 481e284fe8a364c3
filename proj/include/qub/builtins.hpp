#ifndef QUB_BUILTINS_HPP
#define QUB_BUILTINS_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qub/type.hpp"

namespace qub {

// Runtime dispatch class of a builtin.
enum class BuiltinSem {
  OpenFile,
  CloseFile,
  ReadLine,   // also readFile, kept as a distinct name with the same type
  WriteFile,
  Throw,
  Catch,
  CatchSep,   // catch with a separating handler position; mutation-testing aid
  BindIO,
  BindIOF,
  ReturnIO,
  ReturnIOF,
  Lift,
  Caps,
  Left,
  Right,
  MkException,
  MkPair,
  Unpair,
};

struct BuiltinSig {
  std::string name;
  Scheme scheme;
  BuiltinSem sem;
  int arity;  // arguments until the runtime primitive fires
};

// The built-in environment: the file/exception API plus the desugarer's
// helpers. Signatures are kind-checked once at startup.
const std::map<std::string, BuiltinSig>& stdlibEnv();

bool isBuiltinName(const std::string& n);
const std::vector<std::string>& builtinNames();

// `bind` and `return` are generic: elaboration picks bindIO/bindIOF and
// returnIO/returnIOF from types. They are valid Builtin node names but not
// stdlibEnv entries.
bool isGenericBuiltin(const std::string& n);

std::string stdlibListing();  // printable signatures for the CLI

}  // namespace qub

#endif
