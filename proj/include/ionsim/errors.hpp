#pragma once
#include <stdexcept>
#include <string>

namespace ionsim {

// invalid user-facing configuration (bad flag value, missing field)
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// caller violated a documented operation precondition
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// numerical machinery failed (eigensolver breakdown, series non-convergence)
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ionsim
