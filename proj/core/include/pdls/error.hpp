// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace pdls {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument, inconsistent dimensions or an unknown configuration value.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Singular field evaluations and diverging integrations.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// File system and format errors.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdls
