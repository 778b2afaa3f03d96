#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dynsamp/linalg.hpp"
#include "dynsamp/types.hpp"

namespace dynsamp {

/// Diagonalization A* = B^{-1} D B with eigenvalues grouped into clusters.
/// Rows [offsets[j], offsets[j] + multiplicities[j]) of B belong to
/// eigenvalue j; the matching columns of basis_inverse span its eigenspace.
struct SpectralData {
  std::vector<Complex> eigenvalues;
  std::vector<std::size_t> multiplicities;
  std::vector<std::size_t> offsets;
  ComplexMatrix basis;          // B
  ComplexMatrix basis_inverse;  // B^{-1}, columns are eigenvectors of A*
  double residual = 0.0;        // ||A* - B^{-1} D B||_F
  double condition = 1.0;       // cond_2(B)
  bool trusted = true;
  std::vector<std::string> warnings;
  Tolerances tol;

  std::size_t dim() const { return static_cast<std::size_t>(basis.rows()); }
  std::size_t count() const { return eigenvalues.size(); }
  ComplexMatrix diagonal() const;
  /// Spectral projector onto the j-th eigenspace in the original coordinates.
  ComplexMatrix projection(std::size_t j) const;
  /// Rows of B that belong to eigenvalue j.
  ComplexMatrix basis_rows(std::size_t j) const;
};

struct JordanEigenvalue {
  Complex value;
  std::size_t offset = 0;                // first row of J_s inside J
  std::vector<std::size_t> block_sizes;  // t_1 >= t_2 >= ...
  std::vector<std::size_t> cyclic_rows;  // k_j: first row of each block
  /// rank((A* - value I)^k), k = 0..multiplicity, measured on the input.
  std::vector<std::size_t> input_ranks;

  std::size_t multiplicity() const;
  std::size_t block_count() const { return block_sizes.size(); }
};

/// Jordan factorization A* = B^{-1} J B with per-eigenvalue block structure.
struct JordanStructure {
  std::vector<JordanEigenvalue> eigenvalues;
  ComplexMatrix basis;          // B
  ComplexMatrix basis_inverse;  // B^{-1}, columns are Jordan chains
  double residual = 0.0;
  double condition = 1.0;
  bool trusted = true;
  bool supplied = false;  // true when (B, J) came from the caller
  std::vector<std::string> warnings;
  Tolerances tol;

  std::size_t dim() const { return static_cast<std::size_t>(basis.rows()); }
  std::size_t max_block_count() const;
  ComplexMatrix jordan_matrix() const;
  /// Diagonal 0/1 projector onto W_s = span{e_k : k cyclic row of eigenvalue s}.
  ComplexMatrix cyclic_projector(std::size_t s) const;
  /// rank((J - lambda_s I)^k) for k = 0..h_s, derived from the block sizes.
  std::vector<std::size_t> structural_ranks(std::size_t s) const;
};

SpectralData eigendecompose(const ComplexMatrix& a, Tolerances tol = {});

JordanStructure jordan_structure(const ComplexMatrix& a, Tolerances tol = {});

/// Accepts a caller-supplied pair with A* = B^{-1} J B. J must be in Jordan
/// layout: blocks lambda I + N with ones on the subdiagonal, blocks of one
/// eigenvalue contiguous with non-increasing sizes. If `a` is nonempty the
/// residual against A* is reported. Eigenvalue groups are reordered into the
/// canonical report order.
JordanStructure jordan_from_factorization(const ComplexMatrix& b, const ComplexMatrix& j,
                                          const ComplexMatrix& a = {}, Tolerances tol = {});

/// Degree of the T-annihilator of b: rank of [b, Tb, ..., T^d b].
std::size_t annihilator_degree(const ComplexMatrix& t, const ComplexVector& b,
                               double rank_tol = 0.0);

/// Annihilator degree of a vector given in Jordan coordinates, read off the
/// block structure: sum over eigenvalues of the largest nilpotent height.
/// Entries with modulus <= zero_tol count as zero.
std::size_t annihilator_degree_jordan(const JordanStructure& js, const ComplexVector& coords,
                                      double zero_tol);
/// Per-eigenvalue zero thresholds, one entry per js.eigenvalues.
std::size_t annihilator_degree_jordan(const JordanStructure& js, const ComplexVector& coords,
                                      std::span<const double> zero_tol);

/// Canonical report order: descending modulus, then ascending (Re, Im).
/// Moduli closer than `tie_tol` count as equal.
bool report_order_less(Complex a, Complex b, double tie_tol);

/// Fills zero entries of tol with the defaults for `a`.
Tolerances resolve_tolerances(const ComplexMatrix& a, Tolerances tol);

}  // namespace dynsamp
