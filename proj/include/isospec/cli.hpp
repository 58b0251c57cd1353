#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isospec {

// Runs one subcommand. JSON report on `out`, human summary on `err`.
// Returns 0 on success, 1 on infeasible / none-found / failed-verification
// results, 2 on usage or parse errors.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isospec
