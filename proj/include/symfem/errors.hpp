#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace symfem {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Degenerate or otherwise unusable simplex geometry.
class GeometryError : public Error {
public:
  using Error::Error;
};

class QuadratureError : public Error {
public:
  using Error::Error;
};

/// A DOF matrix that is (numerically) singular on the given cell.
class UnisolvenceError : public Error {
public:
  using Error::Error;
};

/// A constrained space came out with the wrong dimension or an
/// inconsistent linear system.
class ConstructionError : public Error {
public:
  using Error::Error;
};

class SingularSystemError : public Error {
public:
  SingularSystemError(const std::string& what, long rank, long size)
      : Error(what), rank_(rank), size_(size) {}
  long rank() const noexcept { return rank_; }
  long size() const noexcept { return size_; }

private:
  long rank_;
  long size_;
};

class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& residual_history() const noexcept { return history_; }

private:
  std::vector<double> history_;
};

} // namespace symfem
