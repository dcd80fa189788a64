#pragma once

#include <string>
#include <vector>

namespace returnlab {

// Entry point behind the `returnlab` binary. Exit codes: 0 success,
// 1 usage/validation error, 2 data error.
int run(const std::vector<std::string>& args);

}  // namespace returnlab
