#include "qub/builtins.hpp"

#include <sstream>

#include "qub/pretty.hpp"

namespace qub {

namespace {

Quantifier tq(const std::string& n) { return {n, VarKind::TypeVar}; }

TypePtr sep(TypePtr d, TypePtr c) { return tArrow(sepRestricted(), std::move(d), std::move(c)); }
TypePtr shr(TypePtr d, TypePtr c) { return tArrow(shRestricted(), std::move(d), std::move(c)); }

std::map<std::string, BuiltinSig> makeEnv() {
  std::map<std::string, BuiltinSig> env;
  auto add = [&](const std::string& name, Scheme sch, BuiltinSem sem, int arity) {
    kindCheck(sch.body);
    env[name] = BuiltinSig{name, std::move(sch), sem, arity};
  };

  TypePtr a = tVar("a"), b = tVar("b"), c = tVar("c");

  add("openFile", Scheme(sep(tFilePath(), tIO(tFileHandle()))), BuiltinSem::OpenFile, 1);
  add("closeFile", Scheme(sep(tFileHandle(), tIO(tUnit()))), BuiltinSem::CloseFile, 1);
  add("readFile", Scheme(sep(tFileHandle(), tIOF(tPair(tString(), tFileHandle())))),
      BuiltinSem::ReadLine, 1);
  add("readLine", Scheme(sep(tFileHandle(), tIOF(tPair(tString(), tFileHandle())))),
      BuiltinSem::ReadLine, 1);
  add("writeFile", Scheme(sep(tString(), sep(tFileHandle(), tIOF(tPair(tUnit(), tFileHandle()))))),
      BuiltinSem::WriteFile, 2);
  add("throw", Scheme({tq("a")}, {}, sep(tException(), tIO(a))), BuiltinSem::Throw, 1);
  // the handler position is the one sharing arrow in the library
  add("catch",
      Scheme({tq("a")}, {}, sep(tIOF(a), shr(sep(tException(), tIO(a)), tIO(a)))),
      BuiltinSem::Catch, 2);
  add("catchSep",
      Scheme({tq("a")}, {}, sep(tIOF(a), sep(sep(tException(), tIO(a)), tIO(a)))),
      BuiltinSem::CatchSep, 2);
  add("bindIO",
      Scheme({tq("a"), tq("b")}, {}, sep(tIO(a), sep(sep(a, tIO(b)), tIO(b)))),
      BuiltinSem::BindIO, 2);
  add("bindIOF",
      Scheme({tq("a"), tq("b")}, {}, sep(tIOF(a), sep(sep(a, tIOF(b)), tIOF(b)))),
      BuiltinSem::BindIOF, 2);
  add("returnIO", Scheme({tq("a")}, {}, sep(a, tIO(a))), BuiltinSem::ReturnIO, 1);
  add("returnIOF", Scheme({tq("a")}, {}, sep(a, tIOF(a))), BuiltinSem::ReturnIOF, 1);
  add("lift", Scheme({tq("a")}, {}, sep(tIO(a), tIOF(a))), BuiltinSem::Lift, 1);
  add("caps", Scheme(sep(tString(), tString())), BuiltinSem::Caps, 1);
  add("Left", Scheme({tq("a"), tq("b")}, {}, sep(a, tEither(a, b))), BuiltinSem::Left, 1);
  add("Right", Scheme({tq("a"), tq("b")}, {}, sep(b, tEither(a, b))), BuiltinSem::Right, 1);
  add("mkException", Scheme(sep(tString(), tException())), BuiltinSem::MkException, 1);
  add("mkPair", Scheme({tq("a"), tq("b")}, {}, sep(a, sep(b, tPair(a, b)))),
      BuiltinSem::MkPair, 2);
  add("unpair",
      Scheme({tq("a"), tq("b"), tq("c")}, {},
             sep(tPair(a, b), sep(sep(a, sep(b, c)), c))),
      BuiltinSem::Unpair, 2);
  return env;
}

}  // namespace

const std::map<std::string, BuiltinSig>& stdlibEnv() {
  static const std::map<std::string, BuiltinSig> env = makeEnv();
  return env;
}

bool isGenericBuiltin(const std::string& n) { return n == "bind" || n == "return"; }

bool isBuiltinName(const std::string& n) {
  return isGenericBuiltin(n) || stdlibEnv().count(n) != 0;
}

const std::vector<std::string>& builtinNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, sig] : stdlibEnv()) out.push_back(n);
    out.push_back("bind");
    out.push_back("return");
    return out;
  }();
  return names;
}

std::string stdlibListing() {
  std::ostringstream o;
  for (const auto& [n, sig] : stdlibEnv())
    o << n << " :: " << pretty(sig.scheme) << "\n";
  return o.str();
}

}  // namespace qub
