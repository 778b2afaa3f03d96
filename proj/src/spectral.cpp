#include "dynsamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "cluster.hpp"

namespace dynsamp {

namespace detail {

std::vector<std::size_t> power_nullities(const ComplexMatrix& astar, Complex mu, std::size_t m,
                                         double rank_tol) {
  const auto d = astar.rows();
  const ComplexMatrix shifted = astar - mu * ComplexMatrix::Identity(d, d);
  const double base = spectral_norm(shifted);
  std::vector<std::size_t> out;
  out.reserve(m);
  ComplexMatrix power = ComplexMatrix::Identity(d, d);
  double ref = 1.0;
  for (std::size_t k = 1; k <= m; ++k) {
    power = shifted * power;
    ref *= base;
    const std::size_t r = ref > 0.0 ? rank_with_tol(power, rank_tol, ref) : 0;
    out.push_back(static_cast<std::size_t>(d) - r);
  }
  return out;
}

bool weyr_consistent(const std::vector<std::size_t>& nullities, std::size_t m) {
  if (nullities.size() != m || m == 0) return false;
  if (nullities.front() < 1 || nullities.back() != m) return false;
  std::size_t prev_count = nullities.front();
  for (std::size_t k = 1; k < m; ++k) {
    if (nullities[k] < nullities[k - 1]) return false;
    const std::size_t count = nullities[k] - nullities[k - 1];
    if (count > prev_count) return false;
    prev_count = count;
  }
  return true;
}

namespace {

Complex mean_of(const ComplexVector& eigs, const std::vector<Eigen::Index>& members) {
  Complex sum{0.0, 0.0};
  for (auto i : members) sum += eigs(i);
  return sum / static_cast<double>(members.size());
}

}  // namespace

std::vector<Cluster> cluster_spectrum(const ComplexMatrix& astar, const ComplexVector& eigs,
                                      const Tolerances& tol) {
  const auto n = eigs.size();
  // single linkage via union-find
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(eigs(i) - eigs(j)) <= tol.cluster) parent[find(j)] = find(i);
    }
  }
  std::vector<Cluster> clusters;
  {
    std::vector<Eigen::Index> slot(static_cast<std::size_t>(n), -1);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto root = find(i);
      if (slot[root] < 0) {
        slot[root] = static_cast<Eigen::Index>(clusters.size());
        clusters.emplace_back();
      }
      clusters[slot[root]].members.push_back(i);
    }
  }
  for (auto& c : clusters) {
    c.mean = mean_of(eigs, c.members);
    if (c.size() > 1) {
      c.nullities = power_nullities(astar, c.mean, c.size(), tol.rank);
      c.consistent = weyr_consistent(c.nullities, c.size());
    } else {
      c.nullities = {1};
    }
  }

  const double scale = std::max(spectral_norm(astar), std::numeric_limits<double>::min());
  const double eps = std::numeric_limits<double>::epsilon();
  auto gate = [&](std::size_t m) {
    const double spread = std::min(100.0 * std::pow(eps, 1.0 / static_cast<double>(m)), 1e-3);
    return std::max(tol.cluster, spread * scale);
  };
  const std::size_t cap = std::min<std::size_t>(static_cast<std::size_t>(n), kMaxDefectiveCluster);

  // A defective eigenvalue of multiplicity m is split by roughly eps^(1/m);
  // grow each cluster by its nearest neighbours and accept the first tight
  // group whose nullity profile is that of a single eigenvalue.
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t a = 0; a < clusters.size() && !merged; ++a) {
      std::vector<std::pair<double, std::size_t>> near;
      for (std::size_t b = 0; b < clusters.size(); ++b) {
        if (b != a) near.emplace_back(std::abs(clusters[a].mean - clusters[b].mean), b);
      }
      std::sort(near.begin(), near.end());
      Cluster joined = clusters[a];
      std::vector<std::size_t> absorbed;
      for (const auto& [dist, b] : near) {
        const std::size_t m = joined.size() + clusters[b].size();
        if (m > cap || dist > 2.0 * gate(cap)) break;
        joined.members.insert(joined.members.end(), clusters[b].members.begin(),
                              clusters[b].members.end());
        absorbed.push_back(b);
        std::sort(joined.members.begin(), joined.members.end());
        joined.mean = mean_of(eigs, joined.members);
        double radius = 0.0;
        for (auto i : joined.members) radius = std::max(radius, std::abs(eigs(i) - joined.mean));
        if (radius > gate(m)) continue;
        joined.nullities = power_nullities(astar, joined.mean, joined.size(), tol.rank);
        joined.consistent = weyr_consistent(joined.nullities, joined.size());
        if (!joined.consistent) continue;
        clusters[a] = joined;
        std::sort(absorbed.rbegin(), absorbed.rend());
        for (auto b2 : absorbed) clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b2));
        merged = true;
        break;
      }
    }
  }

  std::sort(clusters.begin(), clusters.end(), [&](const Cluster& x, const Cluster& y) {
    return report_order_less(x.mean, y.mean, tol.cluster);
  });
  return clusters;
}

}  // namespace detail

bool report_order_less(Complex a, Complex b, double tie_tol) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (std::abs(ma - mb) > tie_tol) return ma > mb;
  if (std::abs(a.real() - b.real()) > tie_tol) return a.real() < b.real();
  return a.imag() < b.imag();
}

Tolerances resolve_tolerances(const ComplexMatrix& a, Tolerances tol) {
  if (tol.rank <= 0.0) tol.rank = Tolerances::default_rank(static_cast<std::size_t>(a.rows()));
  if (tol.cluster <= 0.0) tol.cluster = Tolerances::default_cluster(spectral_norm(a));
  if (tol.condition_cap <= 0.0) tol.condition_cap = 1e8;
  return tol;
}

ComplexMatrix SpectralData::diagonal() const {
  const auto d = static_cast<Eigen::Index>(dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
    for (std::size_t k = 0; k < multiplicities[j]; ++k) {
      const auto i = static_cast<Eigen::Index>(offsets[j] + k);
      out(i, i) = eigenvalues[j];
    }
  }
  return out;
}

ComplexMatrix SpectralData::basis_rows(std::size_t j) const {
  return basis.middleRows(static_cast<Eigen::Index>(offsets[j]),
                          static_cast<Eigen::Index>(multiplicities[j]));
}

ComplexMatrix SpectralData::projection(std::size_t j) const {
  const auto off = static_cast<Eigen::Index>(offsets[j]);
  const auto h = static_cast<Eigen::Index>(multiplicities[j]);
  return basis_inverse.middleCols(off, h) * basis.middleRows(off, h);
}

SpectralData eigendecompose(const ComplexMatrix& a, Tolerances tol) {
  require_square(a, "operator");
  require_finite(a, "operator");
  tol = resolve_tolerances(a, tol);
  const ComplexMatrix astar = a.adjoint();
  const auto d = astar.rows();

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(astar, true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::DegenerateInput, "eigendecomposition did not converge");
  }
  const auto clusters = detail::cluster_spectrum(astar, solver.eigenvalues(), tol);

  SpectralData out;
  out.tol = tol;
  out.basis_inverse.resize(d, d);
  Eigen::Index col = 0;
  for (const auto& c : clusters) {
    const auto m = c.size();
    if (m == 1) {
      out.basis_inverse.col(col) = solver.eigenvectors().col(c.members.front()).normalized();
    } else {
      if (c.nullities.front() < m) {
        throw Error(ErrorCode::NotDiagonalizable,
                    "eigenvalue cluster of size " + std::to_string(m) +
                        " has geometric multiplicity " + std::to_string(c.nullities.front()));
      }
      const ComplexMatrix shifted = astar - c.mean * ComplexMatrix::Identity(d, d);
      out.basis_inverse.middleCols(col, static_cast<Eigen::Index>(m)) =
          trailing_right_singular_vectors(shifted, m);
    }
    out.eigenvalues.push_back(c.mean);
    out.multiplicities.push_back(m);
    out.offsets.push_back(static_cast<std::size_t>(col));
    col += static_cast<Eigen::Index>(m);
  }

  if (rank_with_tol(out.basis_inverse, tol.rank) < static_cast<std::size_t>(d)) {
    throw Error(ErrorCode::NotDiagonalizable, "eigenvector matrix is rank deficient");
  }
  out.basis = out.basis_inverse.fullPivLu().inverse();
  out.condition = condition_number(out.basis_inverse);
  out.residual = (astar - out.basis_inverse * out.diagonal() * out.basis).norm();
  if (!(out.condition <= tol.condition_cap)) {
    out.trusted = false;
    out.warnings.push_back("eigenvector matrix condition number exceeds cap");
  }
  return out;
}

std::size_t annihilator_degree(const ComplexMatrix& t, const ComplexVector& b, double rank_tol) {
  require_square(t, "operator");
  require_finite(t, "operator");
  require_finite(b, "vector");
  if (b.size() != t.rows()) {
    throw Error(ErrorCode::DegenerateInput, "vector length does not match operator");
  }
  const auto d = t.rows();
  if (rank_tol <= 0.0) rank_tol = Tolerances::default_rank(static_cast<std::size_t>(d));
  const double bn = b.norm();
  if (bn == 0.0) return 0;
  // Arnoldi on the Krylov space of b: the step at which the new direction
  // collapses below rank_tol * ||T|| is the numerical rank of [b, Tb, ...].
  const double tnorm = spectral_norm(t);
  ComplexMatrix q(d, d);
  q.col(0) = b / bn;
  std::size_t degree = 1;
  for (Eigen::Index k = 1; k < d; ++k) {
    ComplexVector w = t * q.col(k - 1);
    for (int pass = 0; pass < 2; ++pass) {
      const ComplexVector h = q.leftCols(k).adjoint() * w;
      w -= q.leftCols(k) * h;
    }
    const double wn = w.norm();
    if (wn <= rank_tol * tnorm) break;
    q.col(k) = w / wn;
    ++degree;
  }
  return degree;
}

}  // namespace dynsamp
