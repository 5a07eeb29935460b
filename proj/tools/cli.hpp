#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arkvoc::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on a domain error, 2 on a usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arkvoc::cli
