#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jastrow_dyn::cli {

// Entry point shared by the executable and the tests. `args` excludes the
// program name. Results go to the --out file when given, else to `out`;
// errors are written to `err` as one JSON object.
// Returns 0 on success, 1 on validation failure, 2 on numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// FNV-1a 64 of the text, as 16 hex digits.
std::string config_hash(const std::string& text);

}  // namespace jastrow_dyn::cli
