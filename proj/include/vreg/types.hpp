#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vreg {

#ifdef VREG_SINGLE
using Real = float;
#else
using Real = double;
#endif

using index_t = std::int64_t;

// Errors map to CLI exit codes: config/dimension/parameter -> 2,
// numerical -> 3, io -> 4.
struct dimension_error : std::runtime_error {
  explicit dimension_error(const std::string& m) : std::runtime_error(m) {}
};

struct parameter_error : std::runtime_error {
  explicit parameter_error(const std::string& m) : std::runtime_error(m) {}
};

struct config_error : std::runtime_error {
  explicit config_error(const std::string& m) : std::runtime_error(m) {}
};

struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& m) : std::runtime_error(m) {}
};

struct io_error : std::runtime_error {
  explicit io_error(const std::string& m) : std::runtime_error(m) {}
};

struct input_error : std::runtime_error {
  explicit input_error(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace vreg
