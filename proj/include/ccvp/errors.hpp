// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ccvp {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Caller violated an interface contract (dimension mismatch, bad argument).
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

/// Input text could not be parsed; carries 1-based line/column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Requested operation is not available for the given cone or problem shape.
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& msg) : Error(msg) {}
};

/// A documented precondition does not hold for the supplied data.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

/// A certificate failed a structural validity check (not a tolerance miss).
class CertificateError : public Error {
 public:
  explicit CertificateError(const std::string& msg) : Error(msg) {}
};

/// Non-finite values or divergence encountered during a numerical run.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

}  // namespace ccvp
