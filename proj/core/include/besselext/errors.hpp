#pragma once

#include <stdexcept>
#include <string>

namespace besselext {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// ODE step-count exhaustion; carries the abscissa where stepping stalled.
class SingularityError : public Error {
public:
  SingularityError(const std::string& what, double where)
      : Error(what), where_(where) {}
  double where() const { return where_; }

private:
  double where_;
};

/// Quadrature level refinement failed to settle; carries the last two levels.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double last, double previous)
      : Error(what), last_(last), previous_(previous) {}
  double last_level() const { return last_; }
  double previous_level() const { return previous_; }

private:
  double last_;
  double previous_;
};

class BracketError : public Error {
public:
  using Error::Error;
};

/// Extrapolation samples do not follow the declared asymptotic model.
class ModelMismatchError : public Error {
public:
  ModelMismatchError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

class PoleError : public Error {
public:
  using Error::Error;
};

class ParameterError : public Error {
public:
  using Error::Error;
};

class DivergenceError : public Error {
public:
  using Error::Error;
};

/// Requested frame member does not exist (limit point endpoint).
class FrameError : public Error {
public:
  using Error::Error;
};

/// Trial function fails the variant's admissibility (decay) requirements.
class AdmissibilityError : public Error {
public:
  using Error::Error;
};

/// Quadratic-form integrals diverge: f is outside the form domain.
class FormDomainError : public Error {
public:
  using Error::Error;
};

/// Mathematical unavailability, e.g. Krein extension with epsilon <= 0.
class UnavailableError : public Error {
public:
  using Error::Error;
};

}  // namespace besselext
