#pragma once

#include <stdexcept>
#include <string>

namespace hyperratio {

// Every library failure derives from Error so callers can map the family onto
// exit codes without enumerating it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the function's domain (negative x, x >= 1 for p = q + 1,
// nonpositive parameters on the evaluation path).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The tail-bound or enclosure-separation criterion was not met with the
// resources allowed (iteration cap, escalation limit).
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// A checked precondition of a certificate or lemma failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed textual input (rationals, grids, ranges).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperratio
