#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynsamp/feasibility.hpp"

namespace dynsamp {

/// Points of the open unit disk stored as complements a_k = 1 - lambda_k, so
/// that points within 2^-53 of 1 keep their distance to the boundary.
class DiskSequence {
 public:
  DiskSequence() = default;

  static DiskSequence from_lambdas(std::span<const Complex> lambdas);
  static DiskSequence from_complements(std::vector<Complex> complements);
  /// lambda_k = 1 - rate^k, k = 1..K.
  static DiskSequence geometric(double rate, std::size_t K);
  /// lambda_k = 1 - k^-power, k = 1..K.
  static DiskSequence polynomial(double power, std::size_t K);

  std::size_t size() const { return a_.size(); }
  const std::vector<Complex>& complements() const { return a_; }
  Complex lambda(std::size_t k) const { return 1.0 - a_[k]; }
  std::vector<Complex> lambdas() const;
  /// 1 - |lambda_k|^2 without cancellation.
  double gap(std::size_t k) const;
  DiskSequence prefix(std::size_t K) const;

 private:
  explicit DiskSequence(std::vector<Complex> a);
  std::vector<Complex> a_;
};

/// b_k = sqrt(1 - |lambda_k|^2), i.e. m_k = 1.
ComplexVector standard_weights(const DiskSequence& seq);
/// m_k = b_k / sqrt(1 - |lambda_k|^2).
RealVector weight_moduli(const DiskSequence& seq, const ComplexVector& b);

struct CarlesonReport {
  std::vector<double> products;  // one per point, in [0, 1]
  double infimum = 1.0;
  std::size_t argmin = 0;
  std::vector<std::pair<std::size_t, std::size_t>> coincident;
};

inline constexpr double kLogUnderflow = -700.0;

/// prod_{k != n} |lambda_n - lambda_k| / |1 - conj(lambda_n) lambda_k|, formed
/// in log space; products below exp(-700) are reported as 0.
CarlesonReport carleson_products(const DiskSequence& seq);

struct GramianReport {
  std::size_t K = 0;
  ComplexMatrix gramian;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double condition = 0.0;
  /// max entry deviation from the power-series evaluation, when requested.
  std::optional<double> series_residual;
};

/// Normalized kernel Gramian by the closed form. With `series_check` each
/// entry is also summed as sum_l (lambda_s conj lambda_t)^l in extended
/// precision and the worst deviation is reported.
GramianReport truncated_gramian(const DiskSequence& seq, bool series_check = true);

/// sum_{l>=0} (lambda_s conj lambda_t)^l normalized by the norms of the two
/// power sequences, summed to tail below 1e-16 in 100-digit arithmetic.
Complex gramian_series_entry(Complex a_s, Complex a_t);

struct VerdictOptions {
  double delta = 1e-3;          // (iii) Carleson infimum floor
  double trend_ratio = 0.1;     // (ii) last-decile / first-decile distance-to-boundary
  double weight_lower = 1e-3;   // (iv) C1
  double weight_upper = 1e3;    // (iv) C2
};

struct OnePointVerdict {
  std::size_t K = 0;
  bool inside_disk = false;   // (i)
  double trend = 0.0;         // (ii) statistic
  bool accumulates = false;   // (ii)
  double carleson_infimum = 0.0;
  bool carleson = false;      // (iii)
  double weight_min = 0.0;
  double weight_max = 0.0;
  bool weights_bounded = false;  // (iv)
  bool overall = false;
  VerdictOptions options;
  std::string note = "truncation-level evidence, not a proof";
};

OnePointVerdict one_point_frame_verdict(const DiskSequence& seq, const ComplexVector& b,
                                        const VerdictOptions& opt = {});

/// Verdict and Gramian eigenvalues at each prefix length in `Ks` (ascending).
struct TrendRow {
  OnePointVerdict verdict;
  double gramian_min = 0.0;
  double gramian_max = 0.0;
};
std::vector<TrendRow> verdict_trend(const DiskSequence& seq, const ComplexVector& b,
                                    std::span<const std::size_t> Ks,
                                    const VerdictOptions& opt = {});

/// Completeness of {D^l b_i} in the truncated model D = diag(lambdas) with
/// sensor vectors as the columns of `sensors`: each eigenspace (equal
/// lambdas pooled) must be spanned by the sensor coordinates it carries.
FeasibilityReport completeness_truncated(std::span<const Complex> lambdas,
                                         const ComplexMatrix& sensors, double rank_tol = 0.0,
                                         double cluster_tol = 0.0);
/// Same criterion for a computed or supplied diagonalization.
FeasibilityReport completeness_truncated(const SpectralData& spec,
                                         std::span<const std::size_t> sites);

struct MuntzDefect {
  double distance = 0.0;
  double target_norm = 0.0;  // ||D^l b||
};

/// Least-squares distance from D^l b to span{D^n b : n in exponents}.
MuntzDefect muntz_defect(const DiskSequence& seq, const ComplexVector& b,
                         std::span<const std::size_t> exponents, std::size_t target);

struct FrameProfileRow {
  std::size_t K = 0;
  double lower = 0.0;  // smallest eigenvalue of the frame operator
  double upper = 0.0;
};

/// For each K, frame bounds of {D^l b : l = 0..K-1} on the first K
/// coordinates; with `normalized` every iterate is scaled to unit norm.
/// Throws HypothesisViolated if some |lambda_k| >= 1 - gap_tol.
std::vector<FrameProfileRow> frame_failure_profile(const DiskSequence& seq, const ComplexVector& b,
                                                   std::span<const std::size_t> Ks,
                                                   bool normalized = false, double gap_tol = 1e-3);

struct CirculantDemo {
  std::size_t m = 0;
  std::size_t dimension = 0;
  std::size_t rank = 0;
  double condition = 0.0;
  bool basis = false;
};

/// Operator B^{-1} D B of size 3m with B circulant (1 on the diagonal, 1/4 on
/// both neighbours, wrapped) and D = diag(2, 1, -1, 2, 1, -1, ...), sampled at
/// sites 0, step, 2 step, ... with budget 2.
CirculantDemo circulant_riesz_demo(std::size_t m, std::size_t step = 3);

/// lambda^n for lambda = 1 - a, accurate when a is tiny.
Complex power_from_complement(Complex a, std::size_t n);

}  // namespace dynsamp
