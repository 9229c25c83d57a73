#pragma once

#include <stdexcept>
#include <string>

namespace awb {

/// Malformed input data: unreadable files, bad scalars, shape mismatches.
class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input is well-formed but violates the precondition of an operation
/// (e.g. a universal central extension requested for a non-perfect algebra).
class PreconditionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A property that holds by theorem failed on concrete data. Either the
/// implementation is wrong or the input silently broke an invariant.
class VerificationFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace awb
