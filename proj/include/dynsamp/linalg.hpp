#pragma once

#include <optional>

#include "dynsamp/types.hpp"

namespace dynsamp {

/// Throws DegenerateInput if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, std::string_view what);
void require_square(const ComplexMatrix& m, std::string_view what);

/// Singular values in descending order.
RealVector singular_values(const ComplexMatrix& m);

/// Numerical rank: number of singular values strictly above
/// rank_tol * reference, where reference defaults to sigma_max(m).
/// Passing an explicit reference lets callers decide rank against the scale
/// of a larger object that m was extracted from (an all-noise block then has
/// rank 0 instead of rank 1).
std::size_t rank_with_tol(const ComplexMatrix& m, double rank_tol,
                          std::optional<double> reference = std::nullopt);

/// Orthonormal basis of the `dim` right singular vectors belonging to the
/// smallest singular values of m.
ComplexMatrix trailing_right_singular_vectors(const ComplexMatrix& m, std::size_t dim);

ComplexMatrix matrix_power(const ComplexMatrix& m, std::size_t k);

double spectral_norm(const ComplexMatrix& m);
/// sigma_max / sigma_min; infinity for singular or empty input.
double condition_number(const ComplexMatrix& m);

/// Scales every nonzero column to unit Euclidean norm. Leaves rank intact.
ComplexMatrix normalize_columns(ComplexMatrix m);

}  // namespace dynsamp
