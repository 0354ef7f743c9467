// Command-line entry point, callable in-process for tests. Exit codes:
// 0 success (including a `false` verdict or a found witness), 1 a semantic
// check failed, 2 usage/parse/input errors, 3 internal invariant violations.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace buchi {

int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace buchi
