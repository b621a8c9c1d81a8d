#pragma once

#include <stdexcept>
#include <string>

namespace qrt {

/// Input lies outside an operation's stated domain (non-positive coordinate,
/// level below the invariant minimum, parameter out of range, ...).
class domain_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// The computation cannot produce a numerically meaningful result
/// (drift past tolerance, degenerate solve, collapsed projective image, ...).
class precision_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace qrt
