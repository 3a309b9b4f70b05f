#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alexgeo::cli {

// Exit codes: 0 ok, 1 a verifier reported a breach, 2 bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alexgeo::cli
