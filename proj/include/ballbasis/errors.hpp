#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ballbasis {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument value (exponent out of range, alpha outside (0,1), ...).
class parameter_error : public error {
 public:
  using error::error;
};

/// Malformed input data (index out of range, nonpositive weights,
/// non-nested partitions, coordinate collisions, ...).
class structural_error : public error {
 public:
  using error::error;
};

/// Operation applied to an argument outside its mathematical domain
/// (oscillation of an empty set, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// Request exceeds the configured desk-scale guardrails.
class resource_error : public error {
 public:
  using error::error;
};

/// A documented precondition does not hold (measure too large, basis not
/// doubling, point not a density point, ...).
class precondition_error : public error {
 public:
  using error::error;
};

/// Weight measure vanishes on a ball, so ratio-based checks degenerate.
class degenerate_weight_error : public error {
 public:
  using error::error;
};

/// A constructive procedure failed to reach its postcondition.  Carries the
/// partial result so callers can inspect what was built.
class algorithm_failure : public error {
 public:
  algorithm_failure(const std::string& msg, std::vector<int> partial = {},
                    int offending = -1)
      : error(msg), partial_selection(std::move(partial)), offending_ball(offending) {}

  std::vector<int> partial_selection;
  int offending_ball;
};

}  // namespace ballbasis
