#ifndef QUB_GENERATOR_HPP
#define QUB_GENERATOR_HPP

#include <cstdint>
#include <string>

#include "qub/runtime.hpp"

namespace qub {

// Seeded generation of well-typed file-API programs: handle lifetimes are
// opened, threaded through reads/writes and closed; every section that can
// throw is catch-guarded with a handler that closes the section's handle, so
// a well-typed run is audit-clean under any single-throw injection schedule.
std::string generateWellTypedProgram(uint64_t seed);

// Companion fixtures: one with content behind every generated path, one with
// empty files (so reads hit end-of-file and take the handler path).
FsModel generatorFixtureFull();
FsModel generatorFixtureEmpty();

}  // namespace qub

#endif
