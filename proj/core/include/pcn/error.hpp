#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pcn {

/// Failure classes. The numeric values double as process exit codes.
enum class ErrorKind : int { validation = 1, computation = 2, io = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Bad input. Carries one entry per violated field or precondition.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

class ComputationError : public Error {
 public:
  explicit ComputationError(const std::string& what) : Error(ErrorKind::computation, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace pcn
