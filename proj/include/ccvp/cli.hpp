// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccvp::cli {

/// Runs the tool on the given arguments (program name excluded).
/// Exit codes: 0 = requested condition holds, 1 = condition checked and
/// fails, 2 = usage/parse/dimension error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccvp::cli
