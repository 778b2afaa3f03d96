#include "dynsamp/sampling.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/SVD>

namespace dynsamp {

ComplexMatrix build_sampling_matrix(const ComplexMatrix& a, const SamplingScheme& scheme) {
  require_square(a, "operator");
  require_finite(a, "operator");
  const auto d = a.rows();
  scheme.validate(static_cast<std::size_t>(d));
  ComplexMatrix m(static_cast<Eigen::Index>(scheme.sample_count()), d);
  Eigen::Index row = 0;
  for (std::size_t k = 0; k < scheme.sites.size(); ++k) {
    Eigen::RowVectorXcd r = Eigen::RowVectorXcd::Unit(d, static_cast<Eigen::Index>(scheme.sites[k]));
    for (std::size_t j = 0; j <= scheme.budgets[k]; ++j) {
      m.row(row++) = r;
      r = r * a;
    }
  }
  return m;
}

FrameReport frame_bounds(const ComplexMatrix& m, double rank_tol) {
  FrameReport r;
  if (m.size() == 0) return r;
  if (rank_tol <= 0.0) rank_tol = Tolerances::default_rank(static_cast<std::size_t>(m.cols()));
  r.singular_values = singular_values(m);
  const double smax = r.singular_values(0);
  const double smin = m.rows() >= m.cols() ? r.singular_values(r.singular_values.size() - 1) : 0.0;
  r.upper = smax * smax;
  r.lower = smin * smin;
  r.condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  r.feasible = smax > 0.0 && smin > rank_tol * smax;
  return r;
}

TimeSpaceSamples simulate_samples(const ComplexMatrix& a, const SamplingScheme& scheme,
                                  const ComplexVector& f, double sigma, std::uint64_t seed) {
  if (f.size() != a.rows()) {
    throw Error(ErrorCode::DegenerateInput, "signal length does not match operator");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::DegenerateInput, "noise level must be finite and nonnegative");
  }
  require_finite(f, "signal");
  TimeSpaceSamples out;
  out.scheme = scheme;
  out.values = build_sampling_matrix(a, scheme) * f;
  if (sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma / std::sqrt(2.0));
    for (Eigen::Index i = 0; i < out.values.size(); ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      out.values(i) += Complex(re, im);
    }
    out.noise = NoiseMeta{sigma, seed};
  }
  return out;
}

Reconstruction reconstruct(const ComplexMatrix& a, const TimeSpaceSamples& samples,
                           double rank_tol) {
  const ComplexMatrix m = build_sampling_matrix(a, samples.scheme);
  if (samples.values.size() != m.rows()) {
    throw Error(ErrorCode::DegenerateInput, "sample count does not match the scheme");
  }
  require_finite(samples.values, "samples");
  if (rank_tol <= 0.0) rank_tol = Tolerances::default_rank(static_cast<std::size_t>(a.rows()));

  Reconstruction out;
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const double cutoff = rank_tol * (s.size() > 0 ? s(0) : 0.0);
  ComplexVector coeffs = svd.matrixU().adjoint() * samples.values;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    coeffs(i) = s(i) > cutoff ? coeffs(i) / s(i) : Complex(0.0);
  }
  out.signal = svd.matrixV() * coeffs;
  out.residual = (m * out.signal - samples.values).norm();
  out.frame = frame_bounds(m, rank_tol);
  if (!out.frame.feasible) {
    out.underdetermined = true;
    out.warning = "Underdetermined: samples do not form a frame; minimum-norm solution returned";
  }
  return out;
}

}  // namespace dynsamp
