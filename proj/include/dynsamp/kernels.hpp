#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version and a serial
// reference in kernels::serial with identical per-element arithmetic, so the
// two agree bit for bit regardless of the thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "dynsamp/types.hpp"

namespace dynsamp::kernels {

/// Caps the OpenMP team size from DYNSAMP_THREADS if it is set to a positive
/// integer. Returns the cap in effect (0 = runtime default).
int apply_thread_cap_from_env();

/// log prod_{k != n} |l_n - l_k| / |1 - conj(l_n) l_k| for every n, with the
/// points given as complements a_k = 1 - l_k. Coincident points give -inf.
std::vector<double> carleson_log_products(std::span<const Complex> complements);

/// Normalized kernel Gramian sqrt((1-|l_s|^2)(1-|l_t|^2)) / (1 - l_s conj(l_t)).
ComplexMatrix kernel_gramian(std::span<const Complex> complements);

/// For each candidate site subset: does every block of rows reach its
/// required rank on those columns? blocks[s] is a row block of B, refs[s]
/// its rank reference scale.
std::vector<char> subsets_spanning(std::span<const ComplexMatrix> blocks,
                                   std::span<const std::size_t> required,
                                   std::span<const double> refs,
                                   std::span<const std::vector<std::size_t>> candidates,
                                   double rank_tol);

/// ||M f_k||^2 / ||f_k||^2 for every column f_k of `signals`.
RealVector energy_ratios(const ComplexMatrix& m, const ComplexMatrix& signals);

namespace serial {

std::vector<double> carleson_log_products(std::span<const Complex> complements);
ComplexMatrix kernel_gramian(std::span<const Complex> complements);
std::vector<char> subsets_spanning(std::span<const ComplexMatrix> blocks,
                                   std::span<const std::size_t> required,
                                   std::span<const double> refs,
                                   std::span<const std::vector<std::size_t>> candidates,
                                   double rank_tol);
RealVector energy_ratios(const ComplexMatrix& m, const ComplexMatrix& signals);

}  // namespace serial

/// Pseudo-hyperbolic pieces in complement form (exact for points near 1).
double pseudo_hyperbolic_numerator(Complex a_n, Complex a_k);    // |l_n - l_k|
double pseudo_hyperbolic_denominator(Complex a_n, Complex a_k);  // |1 - conj(l_n) l_k|
/// 1 - |l|^2 for l = 1 - a.
double one_minus_modulus_sq(Complex a);

}  // namespace dynsamp::kernels
