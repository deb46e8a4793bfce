#pragma once

#include <string>
#include <vector>

namespace ptfhard::cli {

// Dispatches one command line. Returns the process exit code:
// 0 success, 1 verdict failure (lemma violation or missed threshold),
// 2 usage or input error.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

} // namespace ptfhard::cli
