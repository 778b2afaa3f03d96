#include "dynsamp/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dynsamp/kernels.hpp"

namespace dynsamp {

DiskSequence::DiskSequence(std::vector<Complex> a) : a_(std::move(a)) {
  for (std::size_t k = 0; k < a_.size(); ++k) {
    if (!std::isfinite(a_[k].real()) || !std::isfinite(a_[k].imag())) {
      throw Error(ErrorCode::DegenerateInput, "non-finite disk point");
    }
    if (!(kernels::one_minus_modulus_sq(a_[k]) > 0.0)) {
      throw Error(ErrorCode::DegenerateInput,
                  "point " + std::to_string(k + 1) + " is not inside the open unit disk");
    }
  }
}

DiskSequence DiskSequence::from_lambdas(std::span<const Complex> lambdas) {
  std::vector<Complex> a;
  a.reserve(lambdas.size());
  for (auto l : lambdas) a.push_back(1.0 - l);
  return DiskSequence(std::move(a));
}

DiskSequence DiskSequence::from_complements(std::vector<Complex> complements) {
  return DiskSequence(std::move(complements));
}

DiskSequence DiskSequence::geometric(double rate, std::size_t K) {
  if (!(rate > 0.0 && rate < 1.0)) throw Error(ErrorCode::DegenerateInput, "rate must lie in (0, 1)");
  std::vector<Complex> a;
  for (std::size_t k = 1; k <= K; ++k) a.emplace_back(std::pow(rate, static_cast<double>(k)), 0.0);
  return DiskSequence(std::move(a));
}

DiskSequence DiskSequence::polynomial(double power, std::size_t K) {
  if (!(power > 0.0)) throw Error(ErrorCode::DegenerateInput, "power must be positive");
  std::vector<Complex> a;
  for (std::size_t k = 1; k <= K; ++k) a.emplace_back(std::pow(static_cast<double>(k), -power), 0.0);
  return DiskSequence(std::move(a));
}

std::vector<Complex> DiskSequence::lambdas() const {
  std::vector<Complex> out;
  out.reserve(a_.size());
  for (auto a : a_) out.push_back(1.0 - a);
  return out;
}

double DiskSequence::gap(std::size_t k) const { return kernels::one_minus_modulus_sq(a_[k]); }

DiskSequence DiskSequence::prefix(std::size_t K) const {
  if (K > a_.size()) throw Error(ErrorCode::DegenerateInput, "prefix longer than the sequence");
  return DiskSequence(std::vector<Complex>(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(K)));
}

Complex power_from_complement(Complex a, std::size_t n) {
  if (n == 0) return {1.0, 0.0};
  const double nn = static_cast<double>(n);
  if (a.imag() == 0.0) {
    const double x = a.real();
    if (std::abs(x) < 0.5) return {std::exp(nn * std::log1p(-x)), 0.0};
    return {std::pow(1.0 - x, nn), 0.0};
  }
  if (a == Complex(1.0, 0.0)) return {0.0, 0.0};
  const double log_mod = 0.5 * std::log1p(-2.0 * a.real() + std::norm(a));
  const double arg = std::atan2(-a.imag(), 1.0 - a.real());
  return std::polar(std::exp(nn * log_mod), nn * arg);
}

namespace {

void require_weights(const DiskSequence& seq, const ComplexVector& b) {
  if (static_cast<std::size_t>(b.size()) != seq.size()) {
    throw Error(ErrorCode::DegenerateInput, "weight vector length differs from the sequence length");
  }
  if (!b.allFinite()) throw Error(ErrorCode::DegenerateInput, "non-finite weight");
}

void require_nonempty(const DiskSequence& seq) {
  if (seq.size() == 0) throw Error(ErrorCode::DegenerateInput, "empty disk sequence");
}

}  // namespace

ComplexVector standard_weights(const DiskSequence& seq) {
  ComplexVector b(static_cast<Eigen::Index>(seq.size()));
  for (std::size_t k = 0; k < seq.size(); ++k) b(static_cast<Eigen::Index>(k)) = std::sqrt(seq.gap(k));
  return b;
}

RealVector weight_moduli(const DiskSequence& seq, const ComplexVector& b) {
  require_weights(seq, b);
  RealVector m(b.size());
  for (Eigen::Index k = 0; k < b.size(); ++k) {
    m(k) = std::abs(b(k)) / std::sqrt(seq.gap(static_cast<std::size_t>(k)));
  }
  return m;
}

CarlesonReport carleson_products(const DiskSequence& seq) {
  require_nonempty(seq);
  CarlesonReport r;
  const auto logs = kernels::carleson_log_products(seq.complements());
  r.products.reserve(logs.size());
  bool any_coincident = false;
  for (double l : logs) {
    if (l == -std::numeric_limits<double>::infinity()) any_coincident = true;
    r.products.push_back(l < kLogUnderflow ? 0.0 : std::min(1.0, std::exp(l)));
  }
  const auto it = std::min_element(r.products.begin(), r.products.end());
  r.infimum = *it;
  r.argmin = static_cast<std::size_t>(it - r.products.begin());
  if (any_coincident) {
    const auto& a = seq.complements();
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        if (a[i] == a[j]) r.coincident.emplace_back(i, j);
      }
    }
  }
  return r;
}

namespace {

namespace mp = boost::multiprecision;
using Real = mp::cpp_bin_float_100;

struct HpComplex {
  Real re, im;
};

HpComplex mul(const HpComplex& x, const HpComplex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

// sum_{l>=0} z^l by S_{2n} = S_n (1 + z^n), stopped once |z^n| < 1e-20.
HpComplex geometric_sum(const HpComplex& z) {
  HpComplex s{Real(1), Real(0)};
  HpComplex p = z;
  const Real stop = Real(1e-40);
  for (int iter = 0; iter < 2000; ++iter) {
    if (p.re * p.re + p.im * p.im < stop) break;
    s = mul(s, HpComplex{1 + p.re, p.im});
    p = mul(p, p);
  }
  return s;
}

HpComplex lambda_hp(Complex a) { return {1 - Real(a.real()), -Real(a.imag())}; }

Real modulus_series(Complex a) {
  const HpComplex l = lambda_hp(a);
  return geometric_sum({l.re * l.re + l.im * l.im, Real(0)}).re;
}

Complex series_entry(Complex a_s, Complex a_t, const Real& ns, const Real& nt) {
  const HpComplex ls = lambda_hp(a_s);
  HpComplex lt = lambda_hp(a_t);
  lt.im = -lt.im;
  const HpComplex s = geometric_sum(mul(ls, lt));
  const Real scale = mp::sqrt(ns * nt);
  return {static_cast<double>(s.re / scale), static_cast<double>(s.im / scale)};
}

}  // namespace

Complex gramian_series_entry(Complex a_s, Complex a_t) {
  return series_entry(a_s, a_t, modulus_series(a_s), modulus_series(a_t));
}

GramianReport truncated_gramian(const DiskSequence& seq, bool series_check) {
  require_nonempty(seq);
  GramianReport r;
  r.K = seq.size();
  r.gramian = kernels::kernel_gramian(seq.complements());
  const ComplexMatrix h = (r.gramian + r.gramian.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = std::max(0.0, es.eigenvalues()(0));
  r.max_eigenvalue = es.eigenvalues()(es.eigenvalues().size() - 1);
  r.condition = r.min_eigenvalue > 0.0 ? r.max_eigenvalue / r.min_eigenvalue
                                       : std::numeric_limits<double>::infinity();
  if (series_check) {
    const auto& a = seq.complements();
    const auto n = static_cast<std::ptrdiff_t>(a.size());
    std::vector<Real> norms(a.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < n; ++k) norms[static_cast<std::size_t>(k)] = modulus_series(a[static_cast<std::size_t>(k)]);
    std::vector<double> worst(a.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < n; ++t) {
      const auto tt = static_cast<std::size_t>(t);
      for (std::size_t s = 0; s <= tt; ++s) {
        const Complex e = series_entry(a[s], a[tt], norms[s], norms[tt]);
        const double dev = std::abs(e - r.gramian(static_cast<Eigen::Index>(s), t));
        worst[tt] = std::max(worst[tt], dev);
      }
    }
    r.series_residual = *std::max_element(worst.begin(), worst.end());
  }
  return r;
}

OnePointVerdict one_point_frame_verdict(const DiskSequence& seq, const ComplexVector& b,
                                        const VerdictOptions& opt) {
  require_nonempty(seq);
  require_weights(seq, b);
  OnePointVerdict v;
  v.K = seq.size();
  v.options = opt;

  v.inside_disk = true;
  std::vector<double> dist(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const double g = seq.gap(k);
    if (!(g > 0.0)) v.inside_disk = false;
    dist[k] = g / (1.0 + std::abs(seq.lambda(k)));
  }

  const std::size_t decile = std::max<std::size_t>(1, seq.size() / 10);
  const double head = *std::max_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(decile));
  const double tail = *std::max_element(dist.end() - static_cast<std::ptrdiff_t>(decile), dist.end());
  v.trend = tail / head;
  v.accumulates = seq.size() > 1 && v.trend <= opt.trend_ratio;

  v.carleson_infimum = carleson_products(seq).infimum;
  v.carleson = v.carleson_infimum >= opt.delta;

  const RealVector m = weight_moduli(seq, b);
  v.weight_min = m.minCoeff();
  v.weight_max = m.maxCoeff();
  v.weights_bounded = v.weight_min > 0.0 && v.weight_min >= opt.weight_lower &&
                      v.weight_max <= opt.weight_upper;

  v.overall = v.inside_disk && v.accumulates && v.carleson && v.weights_bounded;
  return v;
}

std::vector<TrendRow> verdict_trend(const DiskSequence& seq, const ComplexVector& b,
                                    std::span<const std::size_t> Ks, const VerdictOptions& opt) {
  require_weights(seq, b);
  std::vector<TrendRow> out;
  std::size_t last = 0;
  for (auto K : Ks) {
    if (K == 0 || K <= last) throw Error(ErrorCode::DegenerateInput, "K list must be ascending and positive");
    last = K;
    const DiskSequence p = seq.prefix(K);
    const ComplexVector bp = b.head(static_cast<Eigen::Index>(K));
    TrendRow row;
    row.verdict = one_point_frame_verdict(p, bp, opt);
    const GramianReport g = truncated_gramian(p, false);
    row.gramian_min = g.min_eigenvalue;
    row.gramian_max = g.max_eigenvalue;
    out.push_back(std::move(row));
  }
  return out;
}

FeasibilityReport completeness_truncated(std::span<const Complex> lambdas,
                                         const ComplexMatrix& sensors, double rank_tol,
                                         double cluster_tol) {
  const std::size_t K = lambdas.size();
  if (K == 0 || static_cast<std::size_t>(sensors.rows()) != K || sensors.cols() == 0) {
    throw Error(ErrorCode::DegenerateInput, "sensor matrix must have one row per eigenvalue");
  }
  require_finite(sensors, "sensors");
  if (rank_tol <= 0.0) rank_tol = Tolerances::default_rank(K);
  if (cluster_tol <= 0.0) {
    double scale = 0.0;
    for (auto l : lambdas) scale = std::max(scale, std::abs(l));
    cluster_tol = Tolerances::default_cluster(scale);
  }

  // single-linkage groups of equal eigenvalues
  std::vector<std::size_t> group(K);
  std::iota(group.begin(), group.end(), 0);
  const auto find = [&](std::size_t i) {
    while (group[i] != i) i = group[i] = group[group[i]];
    return i;
  };
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = i + 1; j < K; ++j) {
      if (std::abs(lambdas[i] - lambdas[j]) <= cluster_tol) group[find(j)] = find(i);
    }
  }
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::size_t> root_of;
  for (std::size_t i = 0; i < K; ++i) {
    const std::size_t r = find(i);
    auto it = std::find(root_of.begin(), root_of.end(), r);
    if (it == root_of.end()) {
      root_of.push_back(r);
      members.push_back({i});
    } else {
      members[static_cast<std::size_t>(it - root_of.begin())].push_back(i);
    }
  }
  std::vector<Complex> values;
  for (const auto& g : members) {
    Complex sum = 0.0;
    for (auto i : g) sum += lambdas[i];
    values.push_back(sum / static_cast<double>(g.size()));
  }
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return report_order_less(values[x], values[y], cluster_tol);
  });

  const double ref = spectral_norm(sensors);
  FeasibilityReport r;
  for (Eigen::Index c = 0; c < sensors.cols(); ++c) {
    r.sites.push_back(static_cast<std::size_t>(c));
    if (sensors.col(c).norm() <= rank_tol * ref) r.inert_sites.push_back(static_cast<std::size_t>(c));
  }
  std::vector<std::size_t> hits(static_cast<std::size_t>(sensors.cols()), 0);
  for (auto g : order) {
    ComplexMatrix rows(static_cast<Eigen::Index>(members[g].size()), sensors.cols());
    for (std::size_t k = 0; k < members[g].size(); ++k) {
      rows.row(static_cast<Eigen::Index>(k)) = sensors.row(static_cast<Eigen::Index>(members[g][k]));
    }
    for (Eigen::Index c = 0; c < sensors.cols(); ++c) {
      if (rows.col(c).norm() > rank_tol * ref) ++hits[static_cast<std::size_t>(c)];
    }
    EigenvalueCheck chk;
    chk.value = values[g];
    chk.required = members[g].size();
    chk.achieved = rank_with_tol(rows, rank_tol, ref);
    r.per_eigenvalue.push_back(chk);
  }
  for (std::size_t c = 0; c < hits.size(); ++c) {
    if (hits[c] == 0) r.used_budgets.emplace_back();
    else r.used_budgets.emplace_back(hits[c] - 1);
  }
  r.feasible = true;
  for (const auto& chk : r.per_eigenvalue) {
    if (!chk.satisfied()) {
      r.feasible = false;
      r.witness.push_back(chk.value);
    }
  }
  return r;
}

FeasibilityReport completeness_truncated(const SpectralData& spec,
                                         std::span<const std::size_t> sites) {
  return check_diagonalizable(spec, sites);
}

namespace {

ComplexVector iterate(const DiskSequence& seq, const ComplexVector& b, std::size_t n) {
  ComplexVector v(b.size());
  for (Eigen::Index k = 0; k < b.size(); ++k) {
    v(k) = power_from_complement(seq.complements()[static_cast<std::size_t>(k)], n) * b(k);
  }
  return v;
}

}  // namespace

MuntzDefect muntz_defect(const DiskSequence& seq, const ComplexVector& b,
                         std::span<const std::size_t> exponents, std::size_t target) {
  require_nonempty(seq);
  require_weights(seq, b);
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k] == target) {
      throw Error(ErrorCode::DegenerateInput, "target exponent appears in the exponent list");
    }
    if (k > 0 && exponents[k] <= exponents[k - 1]) {
      throw Error(ErrorCode::DegenerateInput, "exponents must be strictly increasing");
    }
  }
  MuntzDefect out;
  const ComplexVector t = iterate(seq, b, target);
  out.target_norm = t.norm();
  if (exponents.empty()) {
    out.distance = out.target_norm;
    return out;
  }
  ComplexMatrix v(b.size(), static_cast<Eigen::Index>(exponents.size()));
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    v.col(static_cast<Eigen::Index>(k)) = iterate(seq, b, exponents[k]);
  }
  const Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(v);
  const ComplexVector x = cod.solve(t);
  out.distance = (v * x - t).norm();
  return out;
}

std::vector<FrameProfileRow> frame_failure_profile(const DiskSequence& seq, const ComplexVector& b,
                                                   std::span<const std::size_t> Ks,
                                                   bool normalized, double gap_tol) {
  require_nonempty(seq);
  require_weights(seq, b);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (std::abs(seq.lambda(k)) >= 1.0 - gap_tol) {
      throw Error(ErrorCode::HypothesisViolated,
                  "|lambda_" + std::to_string(k + 1) + "| is within gap_tol of the unit circle");
    }
  }
  std::vector<FrameProfileRow> out;
  for (auto K : Ks) {
    if (K == 0) throw Error(ErrorCode::DegenerateInput, "K must be positive");
    const DiskSequence p = seq.prefix(K);
    const ComplexVector bp = b.head(static_cast<Eigen::Index>(K));
    ComplexMatrix v(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
    for (std::size_t l = 0; l < K; ++l) v.col(static_cast<Eigen::Index>(l)) = iterate(p, bp, l);
    if (normalized) v = normalize_columns(v);
    const RealVector s = singular_values(v);
    FrameProfileRow row;
    row.K = K;
    row.upper = s(0) * s(0);
    row.lower = s(s.size() - 1) * s(s.size() - 1);
    out.push_back(row);
  }
  return out;
}

CirculantDemo circulant_riesz_demo(std::size_t m, std::size_t step) {
  if (m < 1 || step < 1) throw Error(ErrorCode::DegenerateInput, "block count and step must be positive");
  const auto n = static_cast<Eigen::Index>(3 * m);
  Eigen::MatrixXd bmat = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    bmat(i, (i + 1) % n) += 0.25;
    bmat(i, (i + n - 1) % n) += 0.25;
  }
  Eigen::VectorXd diag(n);
  const double pattern[3] = {2.0, 1.0, -1.0};
  for (Eigen::Index i = 0; i < n; ++i) diag(i) = pattern[i % 3];
  const Eigen::MatrixXd a = bmat.partialPivLu().solve(diag.asDiagonal() * bmat);

  std::vector<Eigen::Index> sites;
  for (Eigen::Index i = 0; i < n; i += static_cast<Eigen::Index>(step)) sites.push_back(i);
  ComplexMatrix v(n, static_cast<Eigen::Index>(3 * sites.size()));
  Eigen::Index col = 0;
  for (auto i : sites) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(n, i);
    for (int l = 0; l < 3; ++l) {
      v.col(col++) = e.cast<Complex>();
      e = a * e;
    }
  }
  CirculantDemo out;
  out.m = m;
  out.dimension = static_cast<std::size_t>(n);
  out.rank = rank_with_tol(v, Tolerances::default_rank(out.dimension));
  const RealVector s = singular_values(v);
  out.condition = (v.cols() >= n && s(n - 1) > 0.0) ? s(0) / s(n - 1)
                                                      : std::numeric_limits<double>::infinity();
  out.basis = out.rank == out.dimension && v.cols() == n;
  return out;
}

}  // namespace dynsamp
