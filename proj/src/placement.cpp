#include "dynsamp/placement.hpp"

#include <algorithm>

#include "dynsamp/kernels.hpp"

namespace dynsamp {

std::string_view to_string(PlacementMethod m) {
  return m == PlacementMethod::Exhaustive ? "exhaustive" : "greedy";
}

namespace {

struct Targets {
  std::vector<ComplexMatrix> blocks;  // rows of B at the cyclic rows of each eigenvalue
  std::vector<std::size_t> required;
  std::vector<double> refs;
};

Targets targets_of(const JordanStructure& js) {
  Targets t;
  for (const auto& ev : js.eigenvalues) {
    ComplexMatrix rows(static_cast<Eigen::Index>(ev.cyclic_rows.size()), js.basis.cols());
    for (std::size_t k = 0; k < ev.cyclic_rows.size(); ++k) {
      rows.row(static_cast<Eigen::Index>(k)) = js.basis.row(static_cast<Eigen::Index>(ev.cyclic_rows[k]));
    }
    t.refs.push_back(spectral_norm(rows));
    t.required.push_back(ev.block_count());
    t.blocks.push_back(std::move(rows));
  }
  return t;
}

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::size_t total_rank(const Targets& t, const std::vector<std::size_t>& cols, double rank_tol) {
  std::size_t sum = 0;
  for (std::size_t s = 0; s < t.blocks.size(); ++s) {
    ComplexMatrix sub(t.blocks[s].rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      sub.col(static_cast<Eigen::Index>(k)) = t.blocks[s].col(static_cast<Eigen::Index>(cols[k]));
    }
    sum += std::min(rank_with_tol(sub, rank_tol, t.refs[s]), t.required[s]);
  }
  return sum;
}

}  // namespace

std::optional<PlacementResult> minimal_placement_exhaustive(const JordanStructure& js,
                                                            std::size_t size_cap,
                                                            std::size_t limit) {
  const std::size_t d = js.dim();
  if (d > limit) {
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "exhaustive placement limited to d <= " + std::to_string(limit) + ", got " +
                    std::to_string(d));
  }
  const Targets t = targets_of(js);
  const std::size_t lower = std::max<std::size_t>(1, js.max_block_count());
  for (std::size_t k = lower; k <= std::min(size_cap, d); ++k) {
    const auto cands = combinations(d, k);
    const auto ok = kernels::subsets_spanning(t.blocks, t.required, t.refs, cands, js.tol.rank);
    const auto hit = std::find(ok.begin(), ok.end(), 1);
    if (hit == ok.end()) continue;
    PlacementResult r;
    r.omega = cands[static_cast<std::size_t>(hit - ok.begin())];
    r.certificate = check_jordan(js, r.omega);
    r.method = PlacementMethod::Exhaustive;
    r.optimal = true;
    return r;
  }
  return std::nullopt;
}

PlacementResult greedy_placement(const JordanStructure& js) {
  const std::size_t d = js.dim();
  const Targets t = targets_of(js);
  std::size_t goal = 0;
  for (auto r : t.required) goal += r;

  std::vector<std::size_t> chosen;
  std::size_t current = 0;
  while (current < goal) {
    std::size_t best_site = d;
    std::size_t best_rank = current;
    for (std::size_t i = 0; i < d; ++i) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      auto trial = chosen;
      trial.push_back(i);
      const std::size_t r = total_rank(t, trial, js.tol.rank);
      if (r > best_rank) {
        best_rank = r;
        best_site = i;
      }
    }
    if (best_site == d) {
      throw Error(ErrorCode::Infeasible, "no site increases the spanned rank; the full set fails");
    }
    chosen.push_back(best_site);
    current = best_rank;
  }
  std::sort(chosen.begin(), chosen.end());
  PlacementResult r;
  r.omega = chosen;
  r.certificate = check_jordan(js, r.omega);
  r.method = PlacementMethod::Greedy;
  r.optimal = false;
  return r;
}

}  // namespace dynsamp
