#pragma once

#include <stdexcept>
#include <string>

namespace solhup {

/// A self-check of the library failed: an invariant that the math guarantees
/// was violated numerically (indefinite Gram matrix, identity mismatch,
/// non-monotone Rayleigh sequence, Richardson disagreement, ...).
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace solhup
