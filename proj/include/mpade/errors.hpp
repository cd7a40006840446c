#pragma once

#include <stdexcept>
#include <string>

namespace mpade {

// Bad input: malformed intervals, points on a cut without a side, etc.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical stage failed; module() names where.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

}  // namespace mpade
