#pragma once

#include <stdexcept>
#include <string>

namespace coshare {

/// Failure categories; the CLI maps them onto process exit codes.
enum class ErrorKind { config, data, insufficient_data };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class InsufficientDataError : public Error {
 public:
  explicit InsufficientDataError(const std::string& what)
      : Error(ErrorKind::insufficient_data, what) {}
};

}  // namespace coshare
