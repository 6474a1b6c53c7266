#pragma once

#include <stdexcept>
#include <string>

namespace relay {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two points closer than the bearing threshold.
class CoincidentPoints : public Error {
 public:
  using Error::Error;
};

/// FoV half-angle outside (0, pi/2].
class InvalidAngle : public Error {
 public:
  using Error::Error;
};

/// Transient margin requested with T_r * v_M > eps.
class MarginInfeasible : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a scalar function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Derivative requested at a kink of q_gamma.
class NotDifferentiable : public Error {
 public:
  using Error::Error;
};

/// Collision avoidance needs gamma < pi/2 (and n_r . g* > 0).
class GammaDegenerate : public Error {
 public:
  using Error::Error;
};

/// Relay and an agent (numerically) collided.
class CollisionError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario document. `where` is "line N" or a field path.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Well-formed document describing an invalid scenario.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace relay
