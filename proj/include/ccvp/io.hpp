// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <iosfwd>
#include <string>

#include "ccvp/certify.hpp"
#include "ccvp/problem.hpp"

namespace ccvp {

/// Problem file format (.ccvp): line-oriented UTF-8, `#` comments, blank
/// lines ignored.
///   vars <name>+                    exactly once, fixes variable order
///   objective <expr>                one per objective, in order
///   constraint <expr>               one per constraint component, in order
///   cone <orthant|zero|soc> <dim>   stacked left-to-right into a product
///   convex <true|false>             optional, default false
///   point <name> <real>{n}          optional named points
Problem read_problem(std::istream& in, const std::string& source_name = "<stream>");
Problem read_problem_file(const std::string& path);

/// Certificate file format (.cert):
///   lambda <real>{m}
///   limit <real>{n}
///   step <real>{n} ; <real>{p}      one line per trajectory step
AkktCertificate read_certificate(std::istream& in,
                                 const std::string& source_name = "<stream>");
AkktCertificate read_certificate_file(const std::string& path);

void write_certificate(std::ostream& out, const AkktCertificate& cert);
void write_certificate_file(const std::string& path, const AkktCertificate& cert);

}  // namespace ccvp
