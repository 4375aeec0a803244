#pragma once

#include <stdexcept>
#include <string>

namespace longcycle {

/// Gram matrix too ill-conditioned to invert reliably.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Persisted table missing, corrupt, or written by an incompatible version.
class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lookup outside the tabulated grid.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed or unusable input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace longcycle
