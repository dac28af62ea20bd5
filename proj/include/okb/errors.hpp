#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace okb {

// Raised when vector or constraint lengths disagree.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A polyhedron that had to be bounded turned out to have a recession direction.
struct UnboundedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidCone : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Filtration data that violates the per-cone splitting condition.
struct IncompatibleData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundedSupport : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The C-family product would exceed the configured number of admissible sets.
struct CapExceeded : std::runtime_error {
  CapExceeded(std::uint64_t count, std::uint64_t cap)
      : std::runtime_error("admissible C-family has " + std::to_string(count) +
                           " sets, cap is " + std::to_string(cap)),
        count(count),
        cap(cap) {}
  std::uint64_t count;
  std::uint64_t cap;
};

}  // namespace okb
