#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace dynsamp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class ErrorCode {
  DegenerateInput,
  NotDiagonalizable,
  IllConditionedSimilarity,
  UntrustedFactorization,
  NotFound,
  SearchSpaceTooLarge,
  Infeasible,
  HypothesisViolated,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Tolerance policy shared by every module. Zero means "use the default for
/// the problem size" (see resolve()).
struct Tolerances {
  double rank = 0.0;     // relative singular-value threshold
  double cluster = 0.0;  // eigenvalue merge distance, absolute
  double condition_cap = 1e8;

  /// Default relative rank threshold: d * eps * 1e4.
  static double default_rank(std::size_t d);
  /// Default cluster tolerance: 1e-8 * ||A||_2 (floored at 1e-8 for A = 0).
  static double default_cluster(double operator_norm);
};

}  // namespace dynsamp
