#pragma once

#include <stdexcept>
#include <string>

namespace pdc {

// Base class for everything thrown by this library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A physical precondition was violated (negative intensity, vanishing
// denominator, zero detuning on a gain path, ...).
class domain_error : public error {
public:
  using error::error;
};

// The signal/idler pair does not satisfy the requested sum rule.
class phase_matching_error : public domain_error {
public:
  using domain_error::domain_error;
};

// A scenario document was rejected; carries the offending key and line
// when known (line 0 means "whole document").
class parse_error : public error {
public:
  explicit parse_error(const std::string& message, std::string key = {}, int line = 0)
      : error(line > 0 ? message + " (line " + std::to_string(line) + ")" : message),
        key_(std::move(key)),
        line_(line) {}

  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

private:
  std::string key_;
  int line_;
};

// Numerical propagation failed; carries the last z with finite amplitudes.
class integration_error : public domain_error {
public:
  integration_error(const std::string& message, double last_valid_z)
      : domain_error(message + " [last valid z = " + std::to_string(last_valid_z) + " cm]"),
        last_valid_z_(last_valid_z) {}

  double last_valid_z() const noexcept { return last_valid_z_; }

private:
  double last_valid_z_;
};

class io_error : public error {
public:
  using error::error;
};

}  // namespace pdc
