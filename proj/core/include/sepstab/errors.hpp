#pragma once

#include <stdexcept>
#include <string>

namespace sepstab {

// Bad user input: malformed words, invalid generator indices, broken configs.
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A search or numeric test hit a budget/tolerance boundary and cannot decide.
class UndeterminedError : public std::runtime_error {
public:
  explicit UndeterminedError(const std::string& what) : std::runtime_error(what) {}
};

// Operation requested on a shape whose semantics are not implemented
// (connect sum of two trivial I-bundles).
class UnsupportedShapeError : public std::runtime_error {
public:
  explicit UnsupportedShapeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sepstab
