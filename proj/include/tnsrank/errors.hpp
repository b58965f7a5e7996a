#pragma once

#include <stdexcept>
#include <string>

namespace tnsrank {

/// Malformed or inconsistent input (bad tree text, unknown labels, invalid model).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation would exceed one of the hard size caps.
class ResourceError : public std::length_error {
 public:
  explicit ResourceError(const std::string& what) : std::length_error(what) {}
};

/// An internal consistency check failed, e.g. the exponent of an almost
/// perfect binary tree falls outside its landmark interval.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tnsrank
