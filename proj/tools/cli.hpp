#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bogrape::cli {

/// Exit codes: 0 success, 1 usage error, 2 runtime error.
int dispatch(int argc, char** argv);
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bogrape::cli
