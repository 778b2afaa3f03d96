#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "cluster.hpp"
#include "dynsamp/spectral.hpp"

namespace dynsamp {

std::size_t JordanEigenvalue::multiplicity() const {
  std::size_t h = 0;
  for (auto t : block_sizes) h += t;
  return h;
}

std::size_t JordanStructure::max_block_count() const {
  std::size_t g = 0;
  for (const auto& ev : eigenvalues) g = std::max(g, ev.block_count());
  return g;
}

ComplexMatrix JordanStructure::jordan_matrix() const {
  const auto d = static_cast<Eigen::Index>(dim());
  ComplexMatrix j = ComplexMatrix::Zero(d, d);
  for (const auto& ev : eigenvalues) {
    auto row = static_cast<Eigen::Index>(ev.offset);
    for (auto t : ev.block_sizes) {
      for (std::size_t k = 0; k < t; ++k) {
        j(row + static_cast<Eigen::Index>(k), row + static_cast<Eigen::Index>(k)) = ev.value;
        if (k + 1 < t) {
          j(row + static_cast<Eigen::Index>(k) + 1, row + static_cast<Eigen::Index>(k)) = 1.0;
        }
      }
      row += static_cast<Eigen::Index>(t);
    }
  }
  return j;
}

ComplexMatrix JordanStructure::cyclic_projector(std::size_t s) const {
  const auto d = static_cast<Eigen::Index>(dim());
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  for (auto k : eigenvalues[s].cyclic_rows) {
    p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return p;
}

std::vector<std::size_t> JordanStructure::structural_ranks(std::size_t s) const {
  const auto& ev = eigenvalues[s];
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k <= ev.multiplicity(); ++k) {
    std::size_t nullity = 0;
    for (auto t : ev.block_sizes) nullity += std::min(k, t);
    ranks.push_back(dim() - nullity);
  }
  return ranks;
}

namespace {

// Block sizes (non-increasing) from the nullity profile n_k = nullity(N^k),
// k = 1..m, of an m-dimensional nilpotent. Returns false if the profile had
// to be repaired.
bool blocks_from_nullities(std::vector<std::size_t> nullities, std::size_t m,
                           std::vector<std::size_t>& blocks) {
  bool clean = detail::weyr_consistent(nullities, m);
  std::vector<std::size_t> at_least;  // at_least[k-1] = #blocks of size >= k
  std::size_t prev = 0;
  std::size_t total = 0;
  for (std::size_t k = 0; k < m && total < m; ++k) {
    const std::size_t nk = std::min(std::max(nullities[k], prev), m);
    std::size_t c = nk - prev;
    if (!at_least.empty()) c = std::min(c, at_least.back());
    if (k == 0) c = std::max<std::size_t>(c, 1);
    c = std::min(c, m - total);
    if (c == 0) break;
    at_least.push_back(c);
    total += c;
    prev += c;
  }
  if (total < m) {
    clean = false;
    // leftover dimension becomes 1x1 blocks
    if (at_least.empty()) at_least.push_back(0);
    at_least.front() += m - total;
  }
  blocks.clear();
  for (std::size_t k = at_least.size(); k >= 1; --k) {
    const std::size_t here = at_least[k - 1] - (k < at_least.size() ? at_least[k] : 0);
    for (std::size_t i = 0; i < here; ++i) blocks.push_back(k);
  }
  return clean;
}

ComplexMatrix orthonormal_basis(const ComplexMatrix& s) {
  if (s.cols() == 0) return ComplexMatrix(s.rows(), 0);
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(s);
  const auto r = qr.rank();
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(s.rows(), r);
  return q;
}

// Jordan chains of an m x m nilpotent with the given block sizes. Columns of
// the result are grouped by block in the given (non-increasing) order; each
// group is g, Ng, ..., N^{t-1} g.
ComplexMatrix jordan_chains(const ComplexMatrix& n, const std::vector<std::size_t>& blocks) {
  const auto m = n.rows();
  const std::size_t tmax = blocks.empty() ? 0 : blocks.front();
  // kernels[k] spans ker N^k, dimension from the block sizes
  std::vector<ComplexMatrix> kernels(tmax + 1);
  ComplexMatrix power = ComplexMatrix::Identity(m, m);
  kernels[0] = ComplexMatrix(m, 0);
  for (std::size_t k = 1; k <= tmax; ++k) {
    power = n * power;
    std::size_t dim = 0;
    for (auto t : blocks) dim += std::min(k, t);
    kernels[k] = trailing_right_singular_vectors(power, dim);
  }

  struct Chain {
    ComplexVector generator;
    std::size_t length;
  };
  std::vector<Chain> chains;
  for (std::size_t k = tmax; k >= 1; --k) {
    const auto exact = static_cast<std::size_t>(std::count(blocks.begin(), blocks.end(), k));
    if (exact == 0) continue;
    ComplexMatrix span(m, kernels[k - 1].cols() + static_cast<Eigen::Index>(chains.size()));
    span.leftCols(kernels[k - 1].cols()) = kernels[k - 1];
    Eigen::Index col = kernels[k - 1].cols();
    for (const auto& c : chains) {
      ComplexVector v = c.generator;
      for (std::size_t i = 0; i < c.length - k; ++i) v = n * v;
      span.col(col++) = v;
    }
    const ComplexMatrix q = orthonormal_basis(span);
    ComplexMatrix complement = kernels[k];
    if (q.cols() > 0) complement -= q * (q.adjoint() * complement);
    Eigen::JacobiSVD<ComplexMatrix> svd(complement, Eigen::ComputeThinU);
    for (std::size_t i = 0; i < exact; ++i) {
      chains.push_back({svd.matrixU().col(static_cast<Eigen::Index>(i)), k});
    }
  }
  std::stable_sort(chains.begin(), chains.end(),
                   [](const Chain& a, const Chain& b) { return a.length > b.length; });

  ComplexMatrix out(m, m);
  Eigen::Index col = 0;
  for (const auto& c : chains) {
    ComplexVector v = c.generator;
    for (std::size_t i = 0; i < c.length; ++i) {
      out.col(col++) = v;
      v = n * v;
    }
  }
  return out;
}

void finish(JordanStructure& js, const ComplexMatrix& astar) {
  js.basis = js.basis_inverse.fullPivLu().inverse();
  js.condition = condition_number(js.basis_inverse);
  if (astar.size() > 0) {
    js.residual = (astar - js.basis_inverse * js.jordan_matrix() * js.basis).norm();
  }
  if (!(js.condition <= js.tol.condition_cap)) {
    js.trusted = false;
    js.warnings.push_back("similarity condition number exceeds cap");
  }
}

}  // namespace

JordanStructure jordan_structure(const ComplexMatrix& a, Tolerances tol) {
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

  JordanStructure js;
  js.tol = tol;
  js.basis_inverse.resize(d, d);
  const bool measure_simple = d <= 300;
  Eigen::Index offset = 0;
  for (const auto& c : clusters) {
    const auto m = c.size();
    JordanEigenvalue ev;
    ev.value = c.mean;
    ev.offset = static_cast<std::size_t>(offset);
    ev.input_ranks.push_back(static_cast<std::size_t>(d));
    if (m == 1) {
      ev.block_sizes = {1};
      js.basis_inverse.col(offset) = solver.eigenvectors().col(c.members.front()).normalized();
      const std::size_t n1 = measure_simple
                                 ? detail::power_nullities(astar, c.mean, 1, tol.rank).front()
                                 : 1;
      ev.input_ranks.push_back(static_cast<std::size_t>(d) - n1);
    } else {
      for (auto n : c.nullities) ev.input_ranks.push_back(static_cast<std::size_t>(d) - n);
      const ComplexMatrix shifted = astar - c.mean * ComplexMatrix::Identity(d, d);
      const ComplexMatrix u = trailing_right_singular_vectors(matrix_power(shifted, m), m);
      const ComplexMatrix nil =
          u.adjoint() * astar * u - c.mean * ComplexMatrix::Identity(u.cols(), u.cols());
      // nullity profile of the restricted nilpotent, ranks judged on the scale
      // of the full shifted operator
      const double base = spectral_norm(shifted);
      std::vector<std::size_t> nullities;
      ComplexMatrix power = ComplexMatrix::Identity(nil.rows(), nil.cols());
      double ref = 1.0;
      for (std::size_t k = 1; k <= m; ++k) {
        power = nil * power;
        ref *= base;
        nullities.push_back(m - (ref > 0.0 ? rank_with_tol(power, tol.rank, ref) : 0));
      }
      if (!blocks_from_nullities(nullities, m, ev.block_sizes) || !c.consistent) {
        js.trusted = false;
        js.warnings.push_back("inconsistent rank profile near eigenvalue cluster of size " +
                              std::to_string(m));
      }
      js.basis_inverse.middleCols(offset, static_cast<Eigen::Index>(m)) =
          u * jordan_chains(nil, ev.block_sizes);
    }
    std::size_t row = ev.offset;
    for (auto t : ev.block_sizes) {
      ev.cyclic_rows.push_back(row);
      row += t;
    }
    offset += static_cast<Eigen::Index>(m);
    js.eigenvalues.push_back(std::move(ev));
  }
  finish(js, astar);
  return js;
}

JordanStructure jordan_from_factorization(const ComplexMatrix& b, const ComplexMatrix& j,
                                          const ComplexMatrix& a, Tolerances tol) {
  require_square(b, "B");
  require_square(j, "J");
  require_finite(b, "B");
  require_finite(j, "J");
  if (b.rows() != j.rows()) throw Error(ErrorCode::DegenerateInput, "B and J sizes differ");
  if (a.size() > 0 && a.rows() != b.rows()) {
    throw Error(ErrorCode::DegenerateInput, "operator and factorization sizes differ");
  }
  const auto d = j.rows();
  tol = resolve_tolerances(a.size() > 0 ? a : j, tol);
  const double exact_tol = 1e-12 * std::max(1.0, j.cwiseAbs().maxCoeff());

  auto bad = [](const std::string& what) {
    throw Error(ErrorCode::DegenerateInput, "J is not in Jordan layout: " + what);
  };
  // only the diagonal and subdiagonal may be nonzero
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      if (r != c && r != c + 1 && std::abs(j(r, c)) > exact_tol) {
        bad("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") off the band");
      }
    }
  }
  struct Block {
    Complex value;
    Eigen::Index start, size;
  };
  std::vector<Block> blocks;
  for (Eigen::Index r = 0; r < d; ++r) {
    const bool continues = r > 0 && std::abs(j(r, r - 1) - Complex(1.0)) <= exact_tol;
    if (r > 0 && !continues && std::abs(j(r, r - 1)) > exact_tol) {
      bad("subdiagonal entry at row " + std::to_string(r) + " is neither 0 nor 1");
    }
    if (continues) {
      if (std::abs(j(r, r) - blocks.back().value) > exact_tol) {
        bad("diagonal changes inside a block at row " + std::to_string(r));
      }
      ++blocks.back().size;
    } else {
      blocks.push_back({j(r, r), r, 1});
    }
  }
  // group blocks into eigenvalues: contiguous runs, sizes non-increasing
  struct Group {
    Complex value;
    std::vector<Block> blocks;
  };
  std::vector<Group> groups;
  for (const auto& blk : blocks) {
    if (!groups.empty() && std::abs(groups.back().value - blk.value) <= exact_tol) {
      if (blk.size > groups.back().blocks.back().size) bad("block sizes must be non-increasing");
      groups.back().blocks.push_back(blk);
    } else {
      for (const auto& g : groups) {
        if (std::abs(g.value - blk.value) <= exact_tol) bad("eigenvalue blocks not contiguous");
      }
      groups.push_back({blk.value, {blk}});
    }
  }
  std::stable_sort(groups.begin(), groups.end(), [&](const Group& x, const Group& y) {
    return report_order_less(x.value, y.value, tol.cluster);
  });

  // permutation into canonical order: new row -> old row
  std::vector<Eigen::Index> order;
  JordanStructure js;
  js.tol = tol;
  js.supplied = true;
  for (const auto& g : groups) {
    JordanEigenvalue ev;
    ev.value = g.value;
    ev.offset = order.size();
    for (const auto& blk : g.blocks) {
      ev.cyclic_rows.push_back(order.size());
      ev.block_sizes.push_back(static_cast<std::size_t>(blk.size));
      for (Eigen::Index k = 0; k < blk.size; ++k) order.push_back(blk.start + k);
    }
    js.eigenvalues.push_back(std::move(ev));
  }
  ComplexMatrix permuted_b(d, d);
  for (Eigen::Index r = 0; r < d; ++r) permuted_b.row(r) = b.row(order[r]);
  js.basis_inverse = permuted_b.fullPivLu().inverse();
  if (rank_with_tol(permuted_b, tol.rank) < static_cast<std::size_t>(d)) {
    throw Error(ErrorCode::DegenerateInput, "B is singular");
  }
  const ComplexMatrix astar = a.size() > 0 ? ComplexMatrix(a.adjoint()) : ComplexMatrix();
  for (auto& ev : js.eigenvalues) {
    if (astar.size() > 0) {
      ev.input_ranks.push_back(static_cast<std::size_t>(d));
      for (auto n : detail::power_nullities(astar, ev.value, ev.multiplicity(), tol.rank)) {
        ev.input_ranks.push_back(static_cast<std::size_t>(d) - n);
      }
    }
  }
  finish(js, astar);
  js.basis = permuted_b;
  if (astar.size() > 0) {
    js.residual = (astar - js.basis_inverse * js.jordan_matrix() * js.basis).norm();
  }
  for (std::size_t s = 0; s < js.eigenvalues.size(); ++s) {
    auto& ev = js.eigenvalues[s];
    if (!ev.input_ranks.empty() && ev.input_ranks != js.structural_ranks(s)) {
      js.trusted = false;
      js.warnings.push_back("supplied J disagrees with the rank profile of the operator");
    }
  }
  return js;
}

std::size_t annihilator_degree_jordan(const JordanStructure& js, const ComplexVector& coords,
                                      double zero_tol) {
  const std::vector<double> tols(js.eigenvalues.size(), zero_tol);
  return annihilator_degree_jordan(js, coords, tols);
}

std::size_t annihilator_degree_jordan(const JordanStructure& js, const ComplexVector& coords,
                                      std::span<const double> zero_tol) {
  std::size_t degree = 0;
  for (std::size_t s = 0; s < js.eigenvalues.size(); ++s) {
    const auto& ev = js.eigenvalues[s];
    std::size_t height = 0;
    std::size_t row = ev.offset;
    for (auto t : ev.block_sizes) {
      for (std::size_t p = 0; p < t; ++p) {
        if (std::abs(coords(static_cast<Eigen::Index>(row + p))) > zero_tol[s]) {
          height = std::max(height, t - p);
          break;
        }
      }
      row += t;
    }
    degree += height;
  }
  return degree;
}

}  // namespace dynsamp
