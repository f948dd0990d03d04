#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uavmec {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// An input violates a documented invariant or model validity range.
class ValidationError : public Error
{
  public:
    using Error::Error;
};

class AltitudeOutOfModelRange : public ValidationError
{
  public:
    using ValidationError::ValidationError;
};

class FrequencyOutsideFitRange : public ValidationError
{
  public:
    using ValidationError::ValidationError;
};

class InvalidPropulsionParams : public ValidationError
{
  public:
    using ValidationError::ValidationError;
};

class InvalidComputeParams : public ValidationError
{
  public:
    using ValidationError::ValidationError;
};

/// Refining the sphere quadrature moved the array gain by more than the tolerance.
class IntegrationNotConverged : public Error
{
  public:
    using Error::Error;
};

/// Hovering with R_tot = 0 never finishes.
class ZeroTotalRate : public Error
{
  public:
    using Error::Error;
};

/// The move-and-return time equation has no root (rate identically zero).
class NoSolution : public Error
{
  public:
    using Error::Error;
};

/// Malformed configuration text. `line` is 1-based, 0 when unknown.
class ParseError : public Error
{
  public:
    ParseError(const std::string& what, std::size_t line, std::string field)
        : Error(what), line_(line), field_(std::move(field))
    {
    }

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

  private:
    std::size_t line_;
    std::string field_;
};

} // namespace uavmec
