#pragma once

#include <stdexcept>
#include <string>

namespace carnot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Structure constants fail [[e_i,e_j],e_k] + cyclic = 0.
class JacobiViolation : public Error {
public:
  JacobiViolation(int i, int j, int k, double residual);
  int i, j, k;
  double residual;
};

/// A bracket leaves the layer structure, or [g_1, g_i] does not span g_{i+1}.
class GradingViolation : public Error {
public:
  using Error::Error;
};

class AntisymmetryViolation : public Error {
public:
  using Error::Error;
};

class NonPositiveLambda : public Error {
public:
  explicit NonPositiveLambda(double lambda);
};

class NonPositiveRadius : public Error {
public:
  using Error::Error;
};

class ZeroNormal : public Error {
public:
  ZeroNormal() : Error("half-space normal is zero") {}
};

class NotHorizontal : public Error {
public:
  using Error::Error;
};

class EmptyWindow : public Error {
public:
  using Error::Error;
};

class BadGrid : public Error {
public:
  using Error::Error;
};

class DegenerateBall : public Error {
public:
  using Error::Error;
};

class PerturbationTouchesBoundary : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Malformed group, set or experiment definition.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace carnot
