#pragma once

#include <stdexcept>
#include <string>

namespace spca {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
  using Error::Error;
};

struct ShapeError : Error {
  using Error::Error;
};

// A loading column collapsed to all zeros; usually means the sparsity
// knob was calibrated too aggressively.
struct DegenerateComponent : Error {
  DegenerateComponent(const std::string& msg, int comp)
      : Error(msg + " (component " + std::to_string(comp + 1) + ")"),
        component(comp) {}
  int component;
};

struct RankExhausted : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct MissingData : Error {
  using Error::Error;
};

}  // namespace spca
