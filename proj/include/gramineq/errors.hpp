#pragma once

#include <stdexcept>
#include <string>

namespace gramineq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct IndexError : Error {
  using Error::Error;
};

struct NotEmbeddable : Error {
  using Error::Error;
};

struct ParamError : Error {
  using Error::Error;
};

struct ZeroVectorRow : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace gramineq
