// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <unistd.h>
#include <string>
#include <vector>

#include "dynsamp/cli.hpp"
#include "dynsamp/fixtures.hpp"
#include "dynsamp/hardy.hpp"
#include "dynsamp/io.hpp"
#include "dynsamp/kernels.hpp"
#include "dynsamp/sampling.hpp"
#include "oracles/frozen.hpp"

using namespace dynsamp;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string sites_str(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "}";
}

std::vector<std::size_t> zero_based(std::vector<std::size_t> s) {
  for (auto& i : s) --i;
  return s;
}

class Workdir {
 public:
  Workdir() : root_(fs::temp_directory_path() / ("dynsamp_acceptance_" + std::to_string(::getpid()))) {
    fs::create_directories(root_);
  }
  ~Workdir() { fs::remove_all(root_); }

  std::string write(const std::string& name, const io::Json& j) const {
    const auto p = root_ / name;
    io::write_atomically(p, io::dump(j));
    return p.string();
  }

 private:
  fs::path root_;
};

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dynsamp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

// analyze through the CLI; true iff exit code 0
int analyze_exit(const Workdir& w, const std::string& matrix, const SamplingScheme& s) {
  static int counter = 0;
  const std::string scheme = w.write("scheme" + std::to_string(counter++) + ".json", io::to_json(s));
  return run_cli({"analyze", matrix, scheme});
}

bool feasible_at(const ComplexMatrix& a, const SamplingScheme& s) {
  return frame_bounds(build_sampling_matrix(a, s)).feasible;
}

ComplexMatrix random_signals(std::size_t d, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix f(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(count));
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    for (Eigen::Index r = 0; r < f.rows(); ++r) f(r, c) = Complex(g(rng), g(rng));
  }
  return f;
}

Verdict criterion1(const Workdir& w) {
  Verdict v;
  const ComplexMatrix p = fixtures::matrix_P();
  const std::string pfile = w.write("P.json", io::to_json(p));

  const auto s1 = SamplingScheme::with_uniform_budget({1}, 4);
  v.require(analyze_exit(w, pfile, s1) == 0, "Omega={2} L=4 not feasible");
  const ComplexMatrix f = random_signals(5, 100, 1);
  double worst = 0.0;
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    const auto samples = simulate_samples(p, s1, f.col(c));
    const auto r = reconstruct(p, samples);
    worst = std::max(worst, (r.signal - f.col(c)).norm() / f.col(c).norm());
  }
  v.require(worst <= 1e-8, "reconstruction error " + fmt(worst));

  v.require(analyze_exit(w, pfile, SamplingScheme::with_uniform_budget({2}, 20)) == 2,
            "Omega={3} L=20 not infeasible");
  v.require(analyze_exit(w, pfile, SamplingScheme::with_budgets({2, 3, 4}, {1, 1, 1})) == 0,
            "Omega={3,4,5} budgets 1 not feasible");
  v.require(analyze_exit(w, pfile, SamplingScheme::with_uniform_budget({2, 3}, 20)) == 2,
            "Omega={3,4} L=20 not infeasible");
  if (v.pass) v.detail = "4 analyze verdicts as stated; worst recovery error " + fmt(worst);
  return v;
}

Verdict criterion2(const Workdir& w) {
  Verdict v;
  const ComplexMatrix q = fixtures::matrix_Q();
  const std::string qfile = w.write("Q.json", io::to_json(q));
  std::size_t small = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i; j < 5; ++j) {
      std::vector<std::size_t> sites = i == j ? std::vector<std::size_t>{i} : std::vector<std::size_t>{i, j};
      const auto s = SamplingScheme::with_uniform_budget(sites, 20);
      ++small;
      v.require(analyze_exit(w, qfile, s) == 2, "Omega=" + sites_str({i + 1, j + 1}) + " feasible");
    }
  }
  v.require(analyze_exit(w, qfile, SamplingScheme::with_budgets({0, 1, 3}, {4, 4, 1})) == 0,
            "Omega={1,2,4} budgets (4,4,1) not feasible");
  v.require(analyze_exit(w, qfile, SamplingScheme::with_uniform_budget({0, 1, 2}, 20)) == 2,
            "Omega={1,2,3} L=20 not infeasible");
  if (v.pass) v.detail = std::to_string(small) + " sets of size <= 2 infeasible; {1,2,4} feasible; {1,2,3} infeasible";
  return v;
}

Verdict criterion3(const Workdir& w) {
  Verdict v;
  const ComplexMatrix r = fixtures::matrix_R();
  const std::string rfile = w.write("R.json", io::to_json(r));
  for (std::size_t i = 0; i < 5; ++i) {
    v.require(analyze_exit(w, rfile, SamplingScheme::with_uniform_budget({i}, 20)) == 2,
              "singleton {" + std::to_string(i + 1) + "} feasible at L=20");
  }
  bool some_L = false;
  for (std::size_t L = 0; L <= 5 && !some_L; ++L) {
    some_L = analyze_exit(w, rfile, SamplingScheme::with_uniform_budget({0, 2}, L)) == 0;
  }
  v.require(some_L, "Omega={1,3} infeasible for every L <= 5");
  v.require(analyze_exit(w, rfile, SamplingScheme::with_uniform_budget({0, 1}, 20)) == 2,
            "Omega={1,2} feasible at L=20");
  if (v.pass) v.detail = "singletons infeasible; {1,3} feasible; {1,2} infeasible";
  return v;
}

Verdict criterion4() {
  Verdict v;
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<int> dim(2, 6);
  std::size_t flagged = 0, mismatched = 0, jordan = 0;
  const std::size_t runs = 500;
  for (std::size_t run = 0; run < runs; ++run) {
    const int d = dim(rng);
    ComplexMatrix a(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) a(i, j) = entry(rng);
    }
    std::vector<std::size_t> sites;
    while (sites.empty()) {
      for (int i = 0; i < d; ++i) {
        if (rng() % 2) sites.push_back(static_cast<std::size_t>(i));
      }
    }
    const OperatorCheck oc = check_operator(a, sites);
    if (oc.jordan_path) ++jordan;
    if (!oc.trusted) {
      ++flagged;
      continue;
    }
    const bool oracle = brute_force_feasible(a, SamplingScheme::saturated(sites, static_cast<std::size_t>(d)));
    if (oracle != oc.report.feasible) ++mismatched;
  }
  const double share = static_cast<double>(flagged) / static_cast<double>(runs);
  v.require(mismatched == 0, std::to_string(mismatched) + " verdicts disagree with the oracle");
  v.require(share < 0.05, "flagged share " + fmt(100 * share) + "%");
  v.detail = (v.pass ? "" : v.detail + "; ") + std::to_string(runs) + " matrices, " +
             std::to_string(jordan) + " via Jordan path, " + std::to_string(flagged) +
             " flagged (" + fmt(100 * share) + "%), " + std::to_string(mismatched) + " mismatches";
  return v;
}

Verdict criterion5() {
  Verdict v;
  struct Case {
    std::string name;
    ComplexMatrix a;
    SamplingScheme s;
  };
  std::vector<Case> cases = {
      {"P{2}L4", fixtures::matrix_P(), SamplingScheme::with_uniform_budget({1}, 4)},
      {"P{3,4,5}L1", fixtures::matrix_P(), SamplingScheme::with_uniform_budget({2, 3, 4}, 1)},
      {"P{3}L20", fixtures::matrix_P(), SamplingScheme::with_uniform_budget({2}, 20)},
      {"Q{1,2,4}", fixtures::matrix_Q(), SamplingScheme::with_budgets({0, 1, 3}, {4, 4, 1})},
      {"Q{1,2,3}L20", fixtures::matrix_Q(), SamplingScheme::with_uniform_budget({0, 1, 2}, 20)},
      {"R{1,3}L5", fixtures::matrix_R(), SamplingScheme::with_uniform_budget({0, 2}, 5)},
      {"R{1,2}L20", fixtures::matrix_R(), SamplingScheme::with_uniform_budget({0, 1}, 20)},
      {"M{1}L2", fixtures::companion_M(), SamplingScheme::with_uniform_budget({0}, 2)},
  };
  double worst = 0.0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    const ComplexMatrix m = build_sampling_matrix(c.a, c.s);
    const FrameReport fr = frame_bounds(m);
    const ComplexMatrix f = random_signals(static_cast<std::size_t>(c.a.rows()), 1000, 100 + k);
    const RealVector ratio = kernels::energy_ratios(m, f);
    for (Eigen::Index i = 0; i < ratio.size(); ++i) {
      const double below = (fr.lower - ratio(i)) / fr.upper;
      const double above = (ratio(i) - fr.upper) / fr.upper;
      worst = std::max({worst, below, above});
    }
  }
  v.require(worst <= 1e-10, "bound violated by relative " + fmt(worst));
  v.detail = (v.pass ? "" : v.detail + "; ") + std::to_string(cases.size()) +
             " fixtures x 1000 signals, worst relative excess " + fmt(std::max(worst, 0.0));
  return v;
}

Verdict criterion6() {
  Verdict v;
  const auto g = truncated_gramian(DiskSequence::geometric(0.5, 50));
  const auto p = truncated_gramian(DiskSequence::polynomial(2.0, 50));
  v.require(g.series_residual && *g.series_residual <= 1e-10, "geometric deviation " + fmt(*g.series_residual));
  v.require(p.series_residual && *p.series_residual <= 1e-10, "polynomial deviation " + fmt(*p.series_residual));
  if (v.pass) {
    v.detail = "max entry deviation geometric " + fmt(*g.series_residual) + ", polynomial " +
               fmt(*p.series_residual);
  }
  return v;
}

Verdict criterion7() {
  Verdict v;
  const auto geo = DiskSequence::geometric(0.5, 100);
  const double c50 = carleson_products(geo.prefix(50)).infimum;
  const double c100 = carleson_products(geo).infimum;
  const double g50 = truncated_gramian(geo.prefix(50), false).min_eigenvalue;
  const double g100 = truncated_gramian(geo, false).min_eigenvalue;
  const double dc = std::abs(c100 - c50) / c50;
  const double dg = std::abs(g100 - g50) / g50;
  v.require(dc < 0.1, "Carleson infimum moved " + fmt(100 * dc) + "%");
  v.require(dg < 0.1, "Gramian floor moved " + fmt(100 * dg) + "%");
  v.require(std::abs(c50 - frozen::kCarlesonGeometricK50) <= 1e-12 &&
                std::abs(c100 - frozen::kCarlesonGeometricK100) <= 1e-12,
            "Carleson infimum differs from the frozen oracle");
  v.require(std::abs(g50 - frozen::kGramianMinGeometricK50) <= 1e-6 * frozen::kGramianMinGeometricK50 &&
                std::abs(g100 - frozen::kGramianMinGeometricK100) <= 1e-6 * frozen::kGramianMinGeometricK100,
            "Gramian floor differs from the frozen oracle");

  const auto poly = DiskSequence::polynomial(2.0, 40);
  const double p10 = truncated_gramian(poly.prefix(10), false).min_eigenvalue;
  const double p40 = truncated_gramian(poly, false).min_eigenvalue;
  v.require(p40 <= 0.5 * p10, "polynomial min eigenvalue shrank only to " + fmt(p40 / p10));
  v.require(std::abs(p10 - frozen::kGramianMinPolynomialK10) <= 1e-4 * frozen::kGramianMinPolynomialK10,
            "polynomial K=10 floor differs from the frozen oracle");
  if (v.pass) {
    v.detail = "geometric: Carleson change " + fmt(100 * dc) + "%, Gramian change " + fmt(100 * dg) +
               "%; polynomial: min eig " + fmt(p10) + " -> " + fmt(p40);
  }
  return v;
}

Verdict criterion8() {
  Verdict v;
  const auto seq = DiskSequence::geometric(0.5, 40);
  const ComplexVector b = standard_weights(seq);
  std::vector<std::size_t> exps = {0};
  for (std::size_t n = 2; n <= 60; ++n) exps.push_back(n);
  const MuntzDefect m = muntz_defect(seq, b, exps, 1);
  v.require(m.distance < 1e-6 * m.target_norm, "distance " + fmt(m.distance / m.target_norm) + " x ||Db||");
  if (v.pass) v.detail = "distance / ||Db|| = " + fmt(m.distance / m.target_norm);
  return v;
}

Verdict criterion9() {
  Verdict v;
  std::vector<Complex> lambdas;
  for (std::size_t k = 0; k < 30; ++k) lambdas.emplace_back(0.5 * (1.0 - static_cast<double>(k) / 30.0), 0.0);
  const auto seq = DiskSequence::from_lambdas(lambdas);
  const ComplexVector b = standard_weights(seq);
  const std::vector<std::size_t> ks = {30};
  const double raw = frame_failure_profile(seq, b, ks, false).front().lower;
  const double unit = frame_failure_profile(seq, b, ks, true).front().lower;
  v.require(raw < 1e-6, "raw lower bound " + fmt(raw));
  v.require(unit < 1e-6, "normalized lower bound " + fmt(unit));
  if (v.pass) v.detail = "K=30 lower bound raw " + fmt(raw) + ", normalized " + fmt(unit);
  return v;
}

Verdict criterion10() {
  Verdict v;
  double lo = INFINITY, hi = 0.0;
  for (std::size_t m : {2, 4, 10}) {
    const auto d = circulant_riesz_demo(m);
    v.require(d.rank == 3 * m && d.basis, "m=" + std::to_string(m) + " rank " + std::to_string(d.rank));
    lo = std::min(lo, d.condition);
    hi = std::max(hi, d.condition);
  }
  v.require(hi <= 2.0 * lo, "condition numbers spread " + fmt(hi / lo));
  const auto sparse = circulant_riesz_demo(4, 4);
  v.require(sparse.rank < sparse.dimension, "every-4th variant has full rank");
  if (v.pass) {
    v.detail = "rank 3m for m=2,4,10, condition " + fmt(lo) + ".." + fmt(hi) + "; every-4th rank " +
               std::to_string(sparse.rank) + "/12";
  }
  return v;
}

Verdict criterion11() {
  Verdict v;
  const ComplexMatrix m = fixtures::companion_M();
  try {
    const ComplexVector b = rational_form_counterexample(m);
    ComplexMatrix k(3, 3);
    ComplexVector x = b;
    for (int j = 0; j < 3; ++j) {
      k.col(j) = x;
      x = m * x;
    }
    const std::size_t r = rank_with_tol(k, Tolerances::default_rank(3));
    v.require(std::abs(b(0)) > 0.0, "b_1 = 0");
    v.require(r == 2, "Krylov rank " + std::to_string(r));
    if (v.pass) {
      v.detail = "b = (" + fmt(b(0).real()) + ", " + fmt(b(1).real()) + ", " + fmt(b(2).real()) +
                 "), rank[b, Mb, M^2 b] = 2";
    }
  } catch (const Error& e) {
    v.require(false, e.what());
  }
  return v;
}

}  // namespace

int main() {
  const Workdir w;
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria = {
      {1, [&] { return criterion1(w); }},  {2, [&] { return criterion2(w); }},
      {3, [&] { return criterion3(w); }},  {4, criterion4},
      {5, criterion5},                     {6, criterion6},
      {7, criterion7},                     {8, criterion8},
      {9, criterion9},                     {10, criterion10},
      {11, criterion11},
  };
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::printf("criterion %2d [PRIMARY] %s: %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
