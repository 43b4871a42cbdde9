#pragma once

#include <stdexcept>
#include <string>

namespace bgk {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonPositiveDensity : Error {
  using Error::Error;
};
struct NonPositiveTemperature : Error {
  using Error::Error;
};
struct SingularGram : Error {
  using Error::Error;
};
struct GridMismatch : Error {
  using Error::Error;
};
struct UnsupportedDegree : Error {
  using Error::Error;
};
struct ZeroVelocityGrid : Error {
  using Error::Error;
};
struct RunawayGrid : Error {
  using Error::Error;
};

// Failure inside a time step, carrying the pipeline stage and cell index.
struct StepFailure : Error {
  StepFailure(const std::string& stage_, long cell_, const std::string& msg)
      : Error("stage '" + stage_ + "', cell " + std::to_string(cell_) + ": " + msg),
        stage(stage_),
        cell(cell_) {}
  std::string stage;
  long cell;
};

struct ParseError : Error {
  ParseError(int line_, const std::string& msg)
      : Error("config line " + std::to_string(line_) + ": " + msg), line(line_) {}
  int line;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace bgk
