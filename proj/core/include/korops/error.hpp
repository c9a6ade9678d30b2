#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace korops {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a domain invariant (point outside H, radius out of (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual);
  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

/// Evaluation of an expression failed (division by ~0, branch cut, overflow).
/// `coordinate()` is the 0-based index of the first coordinate the failing
/// subexpression depends on, when there is one.
class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& what,
                           std::optional<std::size_t> coordinate = std::nullopt);
  std::optional<std::size_t> coordinate() const noexcept { return coordinate_; }

 private:
  std::optional<std::size_t> coordinate_;
};

class BranchCutError : public EvaluationError {
 public:
  BranchCutError(double re, double im, std::optional<std::size_t> coordinate = std::nullopt);
  double re() const noexcept { return re_; }
  double im() const noexcept { return im_; }

 private:
  double re_;
  double im_;
};

/// A self-map component image left the upper half-plane.
class NotSelfMapAt : public Error {
 public:
  NotSelfMapAt(std::vector<double> point_re, std::vector<double> point_im, std::size_t component,
               double image_im);
  std::size_t component() const noexcept { return component_; }
  double image_im() const noexcept { return image_im_; }
  const std::vector<double>& point_re() const noexcept { return re_; }
  const std::vector<double>& point_im() const noexcept { return im_; }

 private:
  std::vector<double> re_;
  std::vector<double> im_;
  std::size_t component_;
  double image_im_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t component, std::size_t position,
             std::vector<std::string> expected = {});
  std::size_t component() const noexcept { return component_; }
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t component_;
  std::size_t position_;
  std::vector<std::string> expected_;
};

class EmptyRegion : public Error {
 public:
  using Error::Error;
};

/// A ratio or functional is undefined at the given inputs (rho = 0, S = 0, ...).
class UndefinedRatio : public Error {
 public:
  using Error::Error;
};

}  // namespace korops
