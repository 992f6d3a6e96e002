#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hcpf/ntcore.hpp"

namespace hcpf::cli {

/// Runs one command line (without the program name). JSON goes to `out`;
/// returns 0 on success, 1 on usage or validation errors, 2 when a sweep
/// reports a MISMATCH.
int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err);

/// "a..b" -> (min, max). Throws InvalidArgument.
std::pair<i64, i64> parse_range(std::string const & s);

} // namespace hcpf::cli
