#pragma once

#include <stdexcept>
#include <string>

namespace sentirec {

// Error taxonomy shared by the library and the CLI. The CLI maps these to
// process exit codes: UsageError -> 1, DataError -> 2, NumericError -> 3.

// Bad arguments, bad flag combinations, calls that violate an API contract.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Anything wrong with input data or files: CSV schema mismatches, invalid
// cells, duplicate ids, unreadable/unwritable paths, corrupt model files.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values encountered during numeric computation.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sentirec
