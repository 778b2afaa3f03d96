#pragma once

// Internal: eigenvalue clustering shared by the diagonal and Jordan paths.

#include <cstddef>
#include <vector>

#include "dynsamp/types.hpp"

namespace dynsamp::detail {

struct Cluster {
  Complex mean;
  std::vector<Eigen::Index> members;  // indices into the eigensolver output
  /// nullity of (A* - mean I)^k for k = 1..size, measured on the full matrix.
  std::vector<std::size_t> nullities;
  bool consistent = true;

  std::size_t size() const { return members.size(); }
};

/// nullity((A* - mu I)^k), k = 1..m. Rank decided against ||A* - mu I||^k.
std::vector<std::size_t> power_nullities(const ComplexMatrix& astar, Complex mu, std::size_t m,
                                         double rank_tol);

/// A nullity profile describes a single eigenvalue of algebraic multiplicity m
/// iff it starts at >= 1, has non-increasing increments and ends at m.
bool weyr_consistent(const std::vector<std::size_t>& nullities, std::size_t m);

inline constexpr std::size_t kMaxDefectiveCluster = 8;

/// Groups eigenvalues: single linkage at tol.cluster, then merges of a
/// cluster with its nearest neighbours when the group radius is below
/// min(100 eps^(1/m), 1e-3) * ||A|| for merged size m <= 8 and the merged
/// nullity profile is consistent. The second stage catches defective
/// eigenvalues, which a backward-stable eigensolver splits by roughly
/// eps^(1/m).
std::vector<Cluster> cluster_spectrum(const ComplexMatrix& astar, const ComplexVector& eigs,
                                      const Tolerances& tol);

}  // namespace dynsamp::detail
