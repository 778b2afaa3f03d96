#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dynsamp/feasibility.hpp"

namespace dynsamp {

struct NoiseMeta {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Samples (A^j f)(i), site-major and time-minor, in scheme order.
struct TimeSpaceSamples {
  SamplingScheme scheme;
  ComplexVector values;
  std::optional<NoiseMeta> noise;
};

struct FrameReport {
  double lower = 0.0;  // c1 = sigma_min(M)^2
  double upper = 0.0;  // c2 = sigma_max(M)^2
  double condition = 0.0;  // sqrt(c2 / c1), infinite when c1 = 0
  bool feasible = false;
  RealVector singular_values;  // descending
};

/// Row (i, j) is e_i^T A^j, the conjugate transpose of A*^j e_i, so that
/// M f lists the samples of f.
ComplexMatrix build_sampling_matrix(const ComplexMatrix& a, const SamplingScheme& scheme);

/// Frame bounds of the rows of M. `feasible` uses the same rule as
/// rank_with_tol: sigma_min > rank_tol * sigma_max with at least as many rows
/// as columns.
FrameReport frame_bounds(const ComplexMatrix& m, double rank_tol = 0.0);

/// M f plus i.i.d. circular complex Gaussian noise (sigma / sqrt 2 per real
/// component), reproducible for a given seed. noise is recorded only when
/// sigma > 0.
TimeSpaceSamples simulate_samples(const ComplexMatrix& a, const SamplingScheme& scheme,
                                  const ComplexVector& f, double sigma = 0.0,
                                  std::uint64_t seed = 0);

struct Reconstruction {
  ComplexVector signal;
  double residual = 0.0;  // ||M f_hat - y||
  FrameReport frame;
  bool underdetermined = false;
  std::string warning;
};

/// Minimum-norm least-squares solution through the SVD. When the scheme is
/// not a frame the result is still returned, with underdetermined set.
Reconstruction reconstruct(const ComplexMatrix& a, const TimeSpaceSamples& samples,
                           double rank_tol = 0.0);

}  // namespace dynsamp
