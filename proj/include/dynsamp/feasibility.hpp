#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dynsamp/spectral.hpp"

namespace dynsamp {

/// Spatial sites (0-based, in caller order) with a time budget l_i per site:
/// site i contributes the samples (A^j f)(i), j = 0..l_i.
struct SamplingScheme {
  std::vector<std::size_t> sites;
  std::vector<std::size_t> budgets;
  std::optional<std::size_t> uniform;  // set when every budget is the same L

  static SamplingScheme with_uniform_budget(std::vector<std::size_t> sites, std::size_t L);
  static SamplingScheme with_budgets(std::vector<std::size_t> sites,
                                     std::vector<std::size_t> budgets);
  /// Every site sampled up to d - 1, which is lossless by Cayley-Hamilton.
  static SamplingScheme saturated(std::vector<std::size_t> sites, std::size_t d);

  /// Throws DegenerateInput unless sites are nonempty, distinct, below d and
  /// budgets match sites one to one.
  void validate(std::size_t d) const;
  std::size_t sample_count() const;
};

struct EigenvalueCheck {
  Complex value;
  std::size_t required = 0;  // gamma_s (Jordan) or dim E_j (diagonal)
  std::size_t achieved = 0;  // rank of the projected sensor vectors
  bool satisfied() const { return achieved == required; }
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<EigenvalueCheck> per_eigenvalue;
  std::vector<Complex> witness;  // eigenvalues whose projections fail to span
  std::vector<std::size_t> sites;
  /// r_i - 1 per site in `sites` order; empty for inert sites (b_i = 0).
  std::vector<std::optional<std::size_t>> used_budgets;
  std::vector<std::size_t> inert_sites;
  std::vector<std::string> warnings;
};

/// Recoverability with per-site budgets l_i = r_i - 1 for a diagonalizable
/// operator: every eigenspace must be spanned by {P_j b_i : i in sites}.
FeasibilityReport check_diagonalizable(const SpectralData& spec, std::span<const std::size_t> sites);

/// Same criterion for a general operator: the projections of the Jordan
/// vectors onto W_s (the cyclic rows of eigenvalue s) must span W_s.
FeasibilityReport check_jordan(const JordanStructure& js, std::span<const std::size_t> sites);

struct FixedBudgetResult {
  bool feasible = false;
  FeasibilityReport report;
  std::size_t span_rank = 0;  // rank of E = {J^l b_i : l <= L}
};

/// Recoverability with one budget L for every site: spanning condition plus
/// J^{L+1} b_i in span{J^l b_i : l <= L} for every non-inert site.
FixedBudgetResult check_fixed_L(const JordanStructure& js, std::span<const std::size_t> sites,
                                std::size_t L);

/// Smallest L <= L_max for which check_fixed_L holds.
std::optional<std::size_t> minimal_uniform_L(const JordanStructure& js,
                                             std::span<const std::size_t> sites,
                                             std::size_t L_max);

/// Factorization-free oracle: rank of {A*^j e_i : i in sites, j <= l_i} == d.
bool brute_force_feasible(const ComplexMatrix& a, const SamplingScheme& scheme,
                          double rank_tol = 0.0);

/// Structural verdict for saturated budgets, choosing the diagonal path
/// when the operator is diagonalizable and the Jordan path otherwise.
struct OperatorCheck {
  FeasibilityReport report;
  bool jordan_path = false;
  bool trusted = true;
  std::optional<SpectralData> spectral;  // set on the diagonal path
  std::optional<JordanStructure> jordan;  // set on the Jordan path
};
OperatorCheck check_operator(const ComplexMatrix& a, std::span<const std::size_t> sites,
                             Tolerances tol = {});

/// For a cyclic (companion-form) matrix, finds b with b_1 = 1 whose Krylov
/// vectors b, Mb, ..., M^{d-1} b are linearly dependent, even though b has a
/// nonzero component along the cyclic vector e_1. Throws NotFound when no
/// such b turns up within `attempts` random slices.
ComplexVector rational_form_counterexample(const ComplexMatrix& m, std::uint64_t seed = 7,
                                           std::size_t attempts = 64, double rank_tol = 0.0);

}  // namespace dynsamp
