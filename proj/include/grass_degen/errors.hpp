#pragma once

#include <stdexcept>
#include <string>

namespace grass_degen {

/** Base class of every error raised by the library. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** An index lies outside [n], or a multi-index is malformed. */
class InvalidIndex : public Error {
 public:
  using Error::Error;
};

/** The ambient size n is outside the range an operation supports. */
class InvalidSize : public Error {
 public:
  using Error::Error;
};

/** A pair (i, j) does not describe a positive root eps_i - eps_j. */
class InvalidRoot : public Error {
 public:
  using Error::Error;
};

/** Vector or matrix lengths do not agree. */
class DimensionError : public Error {
 public:
  using Error::Error;
};

/** The open cone cut out by a set of strict inequalities is empty. */
class Infeasible : public Error {
 public:
  using Error::Error;
};

/** A lookup key (e.g. a sequence label) has no associated entry. */
class NotFound : public Error {
 public:
  using Error::Error;
};

/** The requested parameter combination is not implemented. */
class Unsupported : public Error {
 public:
  using Error::Error;
};

/** Text input could not be parsed. */
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace grass_degen
