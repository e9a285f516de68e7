#pragma once

#include <string>
#include <vector>

namespace ballbasis {

/// Command-line front end.  Returns 0 on success, 1 when a verified
/// invariant failed, 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace ballbasis
