#include "dynsamp/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

namespace dynsamp {

void require_finite(const ComplexMatrix& m, std::string_view what) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::DegenerateInput,
                    std::string(what) + " has a non-finite entry at (" + std::to_string(i) +
                        ", " + std::to_string(j) + ")");
      }
    }
  }
}

void require_square(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DegenerateInput,
                std::string(what) + " must be square and nonempty, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

RealVector singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return RealVector();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

std::size_t rank_with_tol(const ComplexMatrix& m, double rank_tol,
                          std::optional<double> reference) {
  require_finite(m, "rank input");
  if (m.size() == 0) return 0;
  const RealVector s = singular_values(m);
  const double scale = reference.value_or(s.size() > 0 ? s(0) : 0.0);
  if (scale <= 0.0) return 0;
  const double threshold = rank_tol * scale;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++r;
  }
  return r;
}

ComplexMatrix trailing_right_singular_vectors(const ComplexMatrix& m, std::size_t dim) {
  const auto n = m.cols();
  if (dim == 0) return ComplexMatrix(n, 0);
  // Pad to square so the full right singular basis is available.
  ComplexMatrix padded = m;
  if (padded.rows() < n) {
    padded.conservativeResize(n, n);
    padded.bottomRows(n - m.rows()).setZero();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(padded, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(static_cast<Eigen::Index>(dim));
}

ComplexMatrix matrix_power(const ComplexMatrix& m, std::size_t k) {
  ComplexMatrix result = ComplexMatrix::Identity(m.rows(), m.cols());
  for (std::size_t i = 0; i < k; ++i) result = m * result;
  return result;
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double condition_number(const ComplexMatrix& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  const RealVector s = singular_values(m);
  const double smin = s(s.size() - 1);
  if (m.rows() < m.cols() || smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

ComplexMatrix normalize_columns(ComplexMatrix m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double n = m.col(j).norm();
    if (n > 0.0) m.col(j) /= n;
  }
  return m;
}

}  // namespace dynsamp
