#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace supercell {

// Command front end, separated from main() so tests can drive it.
// Exit codes: 0 success, 1 validation/parse error, 2 runtime error.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout,
                 std::ostream& err = std::cerr);

}  // namespace supercell
