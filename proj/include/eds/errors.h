#pragma once

#include <stdexcept>
#include <string>

namespace eds {

// Bad argument or configuration value (CLI exit code 1).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or unusable input data (CLI exit code 2).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The simulation reached a state it cannot continue from (CLI exit code 3).
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eds
