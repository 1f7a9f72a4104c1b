#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coverlab {

// Entry point behind the `coverlab` binary, separated so the test suite
// can drive commands in-process. Exit codes: 0 definitive answer, 2
// inconclusive, 3 invalid input, 4 resource cap exceeded.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace coverlab
