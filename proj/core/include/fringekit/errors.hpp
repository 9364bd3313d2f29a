#pragma once

#include <stdexcept>
#include <string>

namespace fringekit {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A physical or numeric argument is outside its valid domain.
class domain_error : public error {
 public:
  explicit domain_error(const std::string& what) : error(what) {}
};

/// File or stream content could not be read or parsed.
class io_error : public error {
 public:
  explicit io_error(const std::string& what) : error(what) {}
};

/// A trace did not contain the structure an algorithm needs
/// (for example: too few fringes for feature extraction).
class extraction_error : public error {
 public:
  explicit extraction_error(const std::string& what) : error(what) {}
};

}  // namespace fringekit
