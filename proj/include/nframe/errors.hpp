#pragma once

#include <stdexcept>
#include <string>

namespace nframe {

// Shape or size mismatch between operands.  Thrown before any work happens.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input that is well-formed but mathematically unusable: dependent fixing
// vectors, a singular frame operator, a non-unitary transport operator,
// or a malformed field in a JSON document.
class InvalidInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal numerical contract violated (non-Hermitian input to the
// eigensolver, a singular system handed to solve, failed convergence).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nframe
