#pragma once

#include <stdexcept>
#include <string>

namespace cvtele {

//! Precondition violated by the caller (bad mode index, empty mode set, ...).
class InvalidArgument : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

//! Thermal noise factor below the vacuum level (n < 1).
class UnphysicalNoise : public InvalidArgument
{
public:
  using InvalidArgument::InvalidArgument;
};

//! Operands of incompatible size.
class DimensionMismatch : public InvalidArgument
{
public:
  using InvalidArgument::InvalidArgument;
};

//! A numerical routine did not produce a trustworthy result.
class NumericalFailure : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace cvtele
