#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pchc {

/// Exit codes: 0 success / exists, 1 not-exists / failure, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pchc
