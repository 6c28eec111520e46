#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kgon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one command line. `args` excludes the program name. Results go to
/// `out` or to files named by flags; failures are reported on `err` as one
/// line per problem, "error code=<Code>: <reason>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Category implied by a file stem: trailing digits and separators removed,
/// so "dog12" and "fish1-3" give "dog" and "fish1".
std::string infer_category(const std::string& stem);

}  // namespace kgon::cli
