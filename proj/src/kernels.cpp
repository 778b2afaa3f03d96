#include "dynsamp/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include <omp.h>

#include "dynsamp/linalg.hpp"

namespace dynsamp::kernels {

int apply_thread_cap_from_env() {
  const char* env = std::getenv("DYNSAMP_THREADS");
  if (env == nullptr) return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || n <= 0) return 0;
  omp_set_num_threads(static_cast<int>(n));
  return static_cast<int>(n);
}

double pseudo_hyperbolic_numerator(Complex a_n, Complex a_k) { return std::abs(a_k - a_n); }

double pseudo_hyperbolic_denominator(Complex a_n, Complex a_k) {
  return std::abs(std::conj(a_n) + a_k - std::conj(a_n) * a_k);
}

double one_minus_modulus_sq(Complex a) { return 2.0 * a.real() - std::norm(a); }

namespace {

double log_product_at(std::span<const Complex> a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k == n) continue;
    const double num = pseudo_hyperbolic_numerator(a[n], a[k]);
    if (num == 0.0) return -std::numeric_limits<double>::infinity();
    sum += std::log(num) - std::log(pseudo_hyperbolic_denominator(a[n], a[k]));
  }
  return sum;
}

Complex gramian_entry(std::span<const Complex> a, std::size_t s, std::size_t t) {
  const double num = std::sqrt(one_minus_modulus_sq(a[s]) * one_minus_modulus_sq(a[t]));
  // 1 - l_s conj(l_t) = a_s + conj(a_t) - a_s conj(a_t)
  const Complex den = a[s] + std::conj(a[t]) - a[s] * std::conj(a[t]);
  return num / den;
}

bool subset_ok(std::span<const ComplexMatrix> blocks, std::span<const std::size_t> required,
               std::span<const double> refs, const std::vector<std::size_t>& cols,
               double rank_tol) {
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    const ComplexMatrix& b = blocks[s];
    ComplexMatrix sub(b.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      sub.col(static_cast<Eigen::Index>(k)) = b.col(static_cast<Eigen::Index>(cols[k]));
    }
    if (rank_with_tol(sub, rank_tol, refs[s]) != required[s]) return false;
  }
  return true;
}

double energy_ratio(const ComplexMatrix& m, const ComplexMatrix& signals, Eigen::Index k) {
  const double fn = signals.col(k).squaredNorm();
  return (m * signals.col(k)).squaredNorm() / fn;
}

}  // namespace

std::vector<double> carleson_log_products(std::span<const Complex> complements) {
  const auto n = static_cast<std::ptrdiff_t>(complements.size());
  std::vector<double> out(complements.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = log_product_at(complements, static_cast<std::size_t>(i));
  }
  return out;
}

ComplexMatrix kernel_gramian(std::span<const Complex> complements) {
  const auto n = static_cast<Eigen::Index>(complements.size());
  ComplexMatrix g(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index t = 0; t < n; ++t) {
    for (Eigen::Index s = 0; s < n; ++s) {
      g(s, t) = gramian_entry(complements, static_cast<std::size_t>(s), static_cast<std::size_t>(t));
    }
  }
  return g;
}

std::vector<char> subsets_spanning(std::span<const ComplexMatrix> blocks,
                                   std::span<const std::size_t> required,
                                   std::span<const double> refs,
                                   std::span<const std::vector<std::size_t>> candidates,
                                   double rank_tol) {
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());
  std::vector<char> out(candidates.size(), 0);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = subset_ok(blocks, required, refs, candidates[k], rank_tol) ? 1 : 0;
  }
  return out;
}

RealVector energy_ratios(const ComplexMatrix& m, const ComplexMatrix& signals) {
  RealVector out(signals.cols());
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < signals.cols(); ++k) out(k) = energy_ratio(m, signals, k);
  return out;
}

namespace serial {

std::vector<double> carleson_log_products(std::span<const Complex> complements) {
  std::vector<double> out(complements.size());
  for (std::size_t i = 0; i < complements.size(); ++i) out[i] = log_product_at(complements, i);
  return out;
}

ComplexMatrix kernel_gramian(std::span<const Complex> complements) {
  const auto n = static_cast<Eigen::Index>(complements.size());
  ComplexMatrix g(n, n);
  for (Eigen::Index t = 0; t < n; ++t) {
    for (Eigen::Index s = 0; s < n; ++s) {
      g(s, t) = gramian_entry(complements, static_cast<std::size_t>(s), static_cast<std::size_t>(t));
    }
  }
  return g;
}

std::vector<char> subsets_spanning(std::span<const ComplexMatrix> blocks,
                                   std::span<const std::size_t> required,
                                   std::span<const double> refs,
                                   std::span<const std::vector<std::size_t>> candidates,
                                   double rank_tol) {
  std::vector<char> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(subset_ok(blocks, required, refs, c, rank_tol) ? 1 : 0);
  return out;
}

RealVector energy_ratios(const ComplexMatrix& m, const ComplexMatrix& signals) {
  RealVector out(signals.cols());
  for (Eigen::Index k = 0; k < signals.cols(); ++k) out(k) = energy_ratio(m, signals, k);
  return out;
}

}  // namespace serial

}  // namespace dynsamp::kernels
