#pragma once

#include <stdexcept>
#include <string>

namespace contracts {

struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RangeError : ContractError {
  using ContractError::ContractError;
};
struct ParameterError : ContractError {
  using ContractError::ContractError;
};
struct PrecisionError : ContractError {
  PrecisionError(const std::string& what, int required_bits)
      : ContractError(what + " (need at least " + std::to_string(required_bits) + " bits)"),
        required_bits(required_bits) {}
  int required_bits;
};
struct BudgetError : ContractError {
  using ContractError::ContractError;
};
// A construction produced something its defining properties rule out.
struct IntegrityError : ContractError {
  using ContractError::ContractError;
};
struct InvariantError : ContractError {
  using ContractError::ContractError;
};
struct ProtocolError : ContractError {
  using ContractError::ContractError;
};

}  // namespace contracts
