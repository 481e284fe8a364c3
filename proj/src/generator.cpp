#include "qub/generator.hpp"

#include <random>
#include <sstream>
#include <vector>

namespace qub {

namespace {

const char* kPaths[] = {"a.txt", "b.txt", "log.txt"};

struct Gen {
  std::mt19937_64 rng;
  int varCounter = 0;

  explicit Gen(uint64_t seed) : rng(seed) {}

  int pick(int lo, int hi) {  // inclusive
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
  }
  bool coin() { return pick(0, 1) == 1; }
  std::string freshVar(const std::string& base) {
    return base + std::to_string(varCounter++);
  }

  // A guarded section: open, a few reads/writes threading the handle inside a
  // catch-wrapped IOF block that closes the threaded handle; the handler
  // closes the original alias. Returns the statements for the enclosing do.
  void section(std::ostringstream& out, bool& first) {
    auto stmt = [&](const std::string& s) {
      if (!first) out << "; ";
      first = false;
      out << s;
    };
    std::string fh = freshVar("fh");
    std::string path = kPaths[pick(0, 2)];
    stmt(fh + " <- openFile \"" + path + "\"");

    int ops = pick(0, 3);
    if (ops == 0) {
      // nothing can throw: close directly in IO
      std::string u = freshVar("u");
      stmt(u + " <- closeFile " + fh);
      return;
    }
    // IOF block with ops reads/writes, handle threaded h0 -> h1 -> ...
    std::ostringstream block;
    block << "(do ";
    std::string cur = fh;
    bool bfirst = true;
    auto bstmt = [&](const std::string& s) {
      if (!bfirst) block << "; ";
      bfirst = false;
      block << s;
    };
    std::string lastStr;
    for (int i = 0; i < ops; ++i) {
      std::string nh = freshVar("h");
      if (coin()) {
        std::string sv = freshVar("s");
        bstmt("(" + sv + ", " + nh + ") <- readLine " + cur);
        lastStr = sv;
      } else {
        std::string uv = freshVar("w");
        bstmt("(" + uv + ", " + nh + ") <- writeFile \"out\" " + cur);
      }
      cur = nh;
    }
    if (!lastStr.empty() && coin()) {
      std::string lv = freshVar("l");
      bstmt("let " + lv + " = caps " + lastStr);
      lastStr = lv;
    }
    std::string uc = freshVar("u");
    bstmt(uc + " <- lift (closeFile " + cur + ")");
    bstmt(lastStr.empty() ? "return \"done\"" : "return " + (lastStr.empty() ? "\"done\"" : lastStr));
    block << ")";

    std::string r = freshVar("r");
    std::string e = freshVar("e");
    std::string uh = freshVar("u");
    stmt(r + " <- " + block.str() + " `catch` (\\-* " + e + " . do " + uh +
         " <- closeFile " + fh + "; return \"caught\")");
  }
};

}  // namespace

std::string generateWellTypedProgram(uint64_t seed) {
  Gen g(seed);
  std::ostringstream out;
  out << "-- generated program, seed " << seed << "\n";
  out << "main = do ";
  bool first = true;
  int sections = g.pick(1, 2);
  for (int i = 0; i < sections; ++i) g.section(out, first);
  if (!first) out << "; ";
  out << "return ()\n";
  return out.str();
}

FsModel generatorFixtureFull() {
  FsModel fs;
  for (const char* p : kPaths)
    fs.files[p] = {"alpha", "beta", "gamma", "delta"};
  return fs;
}

FsModel generatorFixtureEmpty() {
  FsModel fs;
  for (const char* p : kPaths) fs.files[p] = {};
  return fs;
}

}  // namespace qub
