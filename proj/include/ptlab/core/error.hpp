#pragma once

#include <stdexcept>
#include <string>

namespace ptlab {

enum class ErrorCode {
  invalid_argument = 1,
  resource_limit = 2,
  contract_violation = 3,
  unsupported = 4,
  io = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::invalid_argument, what) {}
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& what) : Error(ErrorCode::resource_limit, what) {}
};

class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what) : Error(ErrorCode::contract_violation, what) {}
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what) : Error(ErrorCode::unsupported, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace ptlab
