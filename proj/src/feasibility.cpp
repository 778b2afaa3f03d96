#include "dynsamp/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace dynsamp {

SamplingScheme SamplingScheme::with_uniform_budget(std::vector<std::size_t> sites, std::size_t L) {
  SamplingScheme s;
  s.budgets.assign(sites.size(), L);
  s.sites = std::move(sites);
  s.uniform = L;
  return s;
}

SamplingScheme SamplingScheme::with_budgets(std::vector<std::size_t> sites,
                                            std::vector<std::size_t> budgets) {
  SamplingScheme s;
  s.sites = std::move(sites);
  s.budgets = std::move(budgets);
  return s;
}

SamplingScheme SamplingScheme::saturated(std::vector<std::size_t> sites, std::size_t d) {
  return with_uniform_budget(std::move(sites), d > 0 ? d - 1 : 0);
}

void SamplingScheme::validate(std::size_t d) const {
  if (sites.empty()) throw Error(ErrorCode::DegenerateInput, "sampling set is empty");
  if (budgets.size() != sites.size()) {
    throw Error(ErrorCode::DegenerateInput, "budget count does not match site count");
  }
  std::set<std::size_t> seen;
  for (auto i : sites) {
    if (i >= d) {
      throw Error(ErrorCode::DegenerateInput,
                  "site " + std::to_string(i + 1) + " outside 1.." + std::to_string(d));
    }
    if (!seen.insert(i).second) {
      throw Error(ErrorCode::DegenerateInput, "site " + std::to_string(i + 1) + " repeated");
    }
  }
}

std::size_t SamplingScheme::sample_count() const {
  std::size_t n = 0;
  for (auto l : budgets) n += l + 1;
  return n;
}

namespace {

void check_sites(std::span<const std::size_t> sites, std::size_t d) {
  SamplingScheme::with_uniform_budget({sites.begin(), sites.end()}, 0).validate(d);
}

ComplexMatrix select_columns(const ComplexMatrix& m, std::span<const std::size_t> cols) {
  ComplexMatrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = m.col(static_cast<Eigen::Index>(cols[k]));
  }
  return out;
}

ComplexMatrix select_rows(const ComplexMatrix& m, std::span<const std::size_t> rows) {
  ComplexMatrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = m.row(static_cast<Eigen::Index>(rows[k]));
  }
  return out;
}

// Sites whose column of B vanishes; they contribute no vectors.
std::vector<std::size_t> inert_of(const ComplexMatrix& basis, std::span<const std::size_t> sites,
                                  double rank_tol) {
  const double ref = spectral_norm(basis);
  std::vector<std::size_t> out;
  for (auto i : sites) {
    if (basis.col(static_cast<Eigen::Index>(i)).norm() <= rank_tol * ref) out.push_back(i);
  }
  return out;
}

void finalize(FeasibilityReport& r) {
  r.feasible = true;
  for (const auto& c : r.per_eigenvalue) {
    if (!c.satisfied()) {
      r.feasible = false;
      r.witness.push_back(c.value);
    }
  }
}

}  // namespace

FeasibilityReport check_diagonalizable(const SpectralData& spec,
                                       std::span<const std::size_t> sites) {
  check_sites(sites, spec.dim());
  FeasibilityReport r;
  r.sites.assign(sites.begin(), sites.end());
  r.inert_sites = inert_of(spec.basis, sites, spec.tol.rank);
  r.warnings = spec.warnings;

  std::vector<double> block_scale;
  for (std::size_t j = 0; j < spec.count(); ++j) {
    const ComplexMatrix rows = spec.basis_rows(j);
    const double ref = spectral_norm(rows);
    block_scale.push_back(ref);
    EigenvalueCheck c;
    c.value = spec.eigenvalues[j];
    c.required = spec.multiplicities[j];
    c.achieved = rank_with_tol(select_columns(rows, sites), spec.tol.rank, ref);
    r.per_eigenvalue.push_back(c);
  }
  for (auto i : sites) {
    if (std::find(r.inert_sites.begin(), r.inert_sites.end(), i) != r.inert_sites.end()) {
      r.used_budgets.emplace_back();
      continue;
    }
    std::size_t degree = 0;
    for (std::size_t j = 0; j < spec.count(); ++j) {
      const double n = spec.basis_rows(j).col(static_cast<Eigen::Index>(i)).norm();
      if (n > spec.tol.rank * block_scale[j]) ++degree;
    }
    r.used_budgets.emplace_back(degree > 0 ? degree - 1 : 0);
  }
  finalize(r);
  return r;
}

namespace {

std::vector<double> jordan_zero_tolerances(const JordanStructure& js) {
  std::vector<double> out;
  for (const auto& ev : js.eigenvalues) {
    const ComplexMatrix rows = js.basis.middleRows(static_cast<Eigen::Index>(ev.offset),
                                                   static_cast<Eigen::Index>(ev.multiplicity()));
    out.push_back(js.tol.rank * spectral_norm(rows));
  }
  return out;
}

}  // namespace

FeasibilityReport check_jordan(const JordanStructure& js, std::span<const std::size_t> sites) {
  check_sites(sites, js.dim());
  FeasibilityReport r;
  r.sites.assign(sites.begin(), sites.end());
  r.inert_sites = inert_of(js.basis, sites, js.tol.rank);
  r.warnings = js.warnings;
  if (!js.trusted) r.warnings.push_back("UntrustedFactorization: verdict may be unreliable");

  for (const auto& ev : js.eigenvalues) {
    const ComplexMatrix w_rows = select_rows(js.basis, ev.cyclic_rows);
    EigenvalueCheck c;
    c.value = ev.value;
    c.required = ev.block_count();
    c.achieved = rank_with_tol(select_columns(w_rows, sites), js.tol.rank, spectral_norm(w_rows));
    r.per_eigenvalue.push_back(c);
  }
  const auto zero_tol = jordan_zero_tolerances(js);
  for (auto i : sites) {
    if (std::find(r.inert_sites.begin(), r.inert_sites.end(), i) != r.inert_sites.end()) {
      r.used_budgets.emplace_back();
      continue;
    }
    const std::size_t degree =
        annihilator_degree_jordan(js, js.basis.col(static_cast<Eigen::Index>(i)), zero_tol);
    r.used_budgets.emplace_back(degree > 0 ? degree - 1 : 0);
  }
  finalize(r);
  return r;
}

FixedBudgetResult check_fixed_L(const JordanStructure& js, std::span<const std::size_t> sites,
                                std::size_t L) {
  FixedBudgetResult out;
  out.report = check_jordan(js, sites);
  const ComplexMatrix j = js.jordan_matrix();
  // a common per-power scale keeps columns comparable without changing ranks
  const double scale = std::max(1.0, spectral_norm(j));
  std::vector<std::size_t> active;
  for (auto i : sites) {
    if (std::find(out.report.inert_sites.begin(), out.report.inert_sites.end(), i) ==
        out.report.inert_sites.end()) {
      active.push_back(i);
    }
  }
  const auto d = static_cast<Eigen::Index>(js.dim());
  const auto per_site = static_cast<Eigen::Index>(L + 1);
  const auto n_active = static_cast<Eigen::Index>(active.size());
  ComplexMatrix all(d, n_active * (per_site + 1));
  for (Eigen::Index k = 0; k < n_active; ++k) {
    ComplexVector v = js.basis.col(static_cast<Eigen::Index>(active[k]));
    for (Eigen::Index l = 0; l <= per_site; ++l) {
      const Eigen::Index col = l < per_site ? k * per_site + l : n_active * per_site + k;
      all.col(col) = v;
      v = (j * v) / scale;
    }
  }
  if (n_active == 0) return out;
  const double ref = spectral_norm(all);
  const std::size_t span_rank = rank_with_tol(all.leftCols(n_active * per_site), js.tol.rank, ref);
  const std::size_t extended = rank_with_tol(all, js.tol.rank, ref);
  out.span_rank = span_rank;
  out.feasible = out.report.feasible && span_rank == extended;
  return out;
}

std::optional<std::size_t> minimal_uniform_L(const JordanStructure& js,
                                             std::span<const std::size_t> sites,
                                             std::size_t L_max) {
  if (!check_jordan(js, sites).feasible) return std::nullopt;
  if (!check_fixed_L(js, sites, L_max).feasible) return std::nullopt;
  // (L + 1) |sites| >= d is necessary
  const std::size_t n = sites.size();
  std::size_t lo = (js.dim() + n - 1) / n;
  lo = lo > 0 ? lo - 1 : 0;
  std::size_t hi = L_max;
  if (lo > hi) return std::nullopt;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (check_fixed_L(js, sites, mid).feasible) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

bool brute_force_feasible(const ComplexMatrix& a, const SamplingScheme& scheme, double rank_tol) {
  require_square(a, "operator");
  require_finite(a, "operator");
  const auto d = a.rows();
  scheme.validate(static_cast<std::size_t>(d));
  if (rank_tol <= 0.0) rank_tol = Tolerances::default_rank(static_cast<std::size_t>(d));
  const ComplexMatrix astar = a.adjoint();
  ComplexMatrix vectors(d, static_cast<Eigen::Index>(scheme.sample_count()));
  Eigen::Index col = 0;
  for (std::size_t k = 0; k < scheme.sites.size(); ++k) {
    ComplexVector v = ComplexVector::Unit(d, static_cast<Eigen::Index>(scheme.sites[k]));
    for (std::size_t j = 0; j <= scheme.budgets[k]; ++j) {
      vectors.col(col++) = v;
      v = astar * v;
    }
  }
  return rank_with_tol(vectors, rank_tol) == static_cast<std::size_t>(d);
}

OperatorCheck check_operator(const ComplexMatrix& a, std::span<const std::size_t> sites,
                             Tolerances tol) {
  OperatorCheck out;
  try {
    SpectralData spec = eigendecompose(a, tol);
    out.report = check_diagonalizable(spec, sites);
    out.trusted = spec.trusted;
    out.spectral = std::move(spec);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotDiagonalizable) throw;
    JordanStructure js = jordan_structure(a, tol);
    out.report = check_jordan(js, sites);
    out.jordan_path = true;
    out.trusted = js.trusted;
    out.jordan = std::move(js);
  }
  return out;
}

namespace {

// det[b, Mb, ..., M^{d-1} b]
Complex krylov_det(const ComplexMatrix& m, const ComplexVector& b) {
  const auto d = m.rows();
  ComplexMatrix k(d, d);
  ComplexVector v = b;
  for (Eigen::Index j = 0; j < d; ++j) {
    k.col(j) = v;
    v = m * v;
  }
  return k.fullPivLu().determinant();
}

}  // namespace

ComplexVector rational_form_counterexample(const ComplexMatrix& m, std::uint64_t seed,
                                           std::size_t attempts, double rank_tol) {
  require_square(m, "operator");
  require_finite(m, "operator");
  const auto d = m.rows();
  if (d < 2) throw Error(ErrorCode::DegenerateInput, "need dimension >= 2");
  if (rank_tol <= 0.0) rank_tol = Tolerances::default_rank(static_cast<std::size_t>(d));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);

  const Eigen::Index degree = d;  // det is homogeneous of degree d in b
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    // b = (1, random..., x): det is a polynomial of degree <= d in x
    ComplexVector base = ComplexVector::Zero(d);
    base(0) = 1.0;
    for (Eigen::Index i = 1; i + 1 < d; ++i) base(i) = coord(rng);
    auto at = [&](Complex x) {
      ComplexVector b = base;
      b(d - 1) = x;
      return b;
    };
    // interpolate on the unit circle: coefficients by discrete Fourier sums
    const Eigen::Index n = degree + 1;
    ComplexVector samples(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex x = std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n));
      samples(k) = krylov_det(m, at(x));
    }
    ComplexVector coeffs = ComplexVector::Zero(n);
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index k = 0; k < n; ++k) {
        coeffs(p) += samples(k) *
                     std::polar(1.0, -2.0 * M_PI * static_cast<double>(p * k) / static_cast<double>(n));
      }
      coeffs(p) /= static_cast<double>(n);
    }
    const double cmax = coeffs.cwiseAbs().maxCoeff();
    Eigen::Index top = n - 1;
    while (top > 0 && std::abs(coeffs(top)) <= 1e-10 * cmax) --top;
    if (top == 0) continue;  // constant in x: no zero on this slice

    ComplexMatrix companion = ComplexMatrix::Zero(top, top);
    for (Eigen::Index i = 1; i < top; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < top; ++i) companion(i, top - 1) = -coeffs(i) / coeffs(top);
    Eigen::ComplexEigenSolver<ComplexMatrix> roots(companion, false);

    std::vector<Complex> candidates;
    for (Eigen::Index i = 0; i < top; ++i) candidates.push_back(roots.eigenvalues()(i));
    // prefer real roots so that real input yields a real counterexample
    std::stable_sort(candidates.begin(), candidates.end(), [](Complex a, Complex b) {
      return std::abs(a.imag()) < std::abs(b.imag());
    });
    for (Complex x : candidates) {
      if (std::abs(x.imag()) <= 1e-9 * (1.0 + std::abs(x))) x = x.real();
      // Newton polish on the polynomial
      for (int it = 0; it < 5; ++it) {
        Complex p = 0.0, dp = 0.0;
        for (Eigen::Index i = top; i >= 0; --i) {
          dp = dp * x + p;
          p = p * x + coeffs(i);
        }
        if (std::abs(dp) == 0.0) break;
        x -= p / dp;
      }
      const ComplexVector b = at(x);
      ComplexMatrix k(d, d);
      ComplexVector v = b;
      for (Eigen::Index j = 0; j < d; ++j) {
        k.col(j) = v;
        v = m * v;
      }
      if (rank_with_tol(k, rank_tol) < static_cast<std::size_t>(d)) return b;
    }
  }
  throw Error(ErrorCode::NotFound, "no dependent Krylov vector found within the search budget");
}

}  // namespace dynsamp
