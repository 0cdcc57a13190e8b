// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <stdexcept>
#include <string>

namespace affwave {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on caller-supplied data was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iterative or numerical procedure failed (divergence, non-convergence,
/// degenerate input that only shows up during computation).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace affwave
