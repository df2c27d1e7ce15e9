#pragma once

#include <string>
#include <vector>

namespace scto::cli {

/// Entry point shared by the binary and the tests. Exit codes: 0 success,
/// 2 validation/config failure, 3 non-convergence (partial outputs written).
int run(const std::vector<std::string>& args);

}  // namespace scto::cli
