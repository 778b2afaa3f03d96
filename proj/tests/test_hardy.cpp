#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "dynsamp/hardy.hpp"
#include "oracles/frozen.hpp"

using namespace dynsamp;

namespace {

using LComplex = std::complex<long double>;

// direct product in long double, no log space
std::vector<long double> carleson_oracle(const std::vector<Complex>& lambdas) {
  std::vector<long double> out;
  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    const LComplex ln(lambdas[n].real(), lambdas[n].imag());
    long double p = 1.0L;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      if (k == n) continue;
      const LComplex lk(lambdas[k].real(), lambdas[k].imag());
      p *= std::abs(ln - lk) / std::abs(1.0L - std::conj(ln) * lk);
    }
    out.push_back(p);
  }
  return out;
}

// truncated geometric series, normalized, in long double
LComplex series_oracle(Complex ls, Complex lt) {
  const LComplex s(ls.real(), ls.imag());
  const LComplex t(lt.real(), lt.imag());
  const auto sum = [](LComplex z) {
    LComplex acc = 0.0L;
    LComplex term = 1.0L;
    while (std::abs(term) > 1e-22L) {
      acc += term;
      term *= z;
    }
    return acc;
  };
  const long double ns = std::sqrt(sum(s * std::conj(s)).real());
  const long double nt = std::sqrt(sum(t * std::conj(t)).real());
  return sum(s * std::conj(t)) / (ns * nt);
}

double min_eig(const ComplexMatrix& g) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

std::vector<Complex> reals(std::initializer_list<double> xs) {
  std::vector<Complex> out;
  for (double x : xs) out.emplace_back(x, 0.0);
  return out;
}

}  // namespace

TEST_CASE("disk sequences validate and keep complements") {
  CHECK_THROWS_AS(DiskSequence::from_lambdas(reals({0.5, 1.0})), Error);
  CHECK_THROWS_AS(DiskSequence::from_lambdas(reals({-1.0})), Error);
  CHECK_THROWS_AS(DiskSequence::geometric(1.0, 4), Error);
  CHECK_THROWS_AS(DiskSequence::polynomial(0.0, 4), Error);
  const auto g = DiskSequence::geometric(0.5, 60);
  CHECK(g.size() == 60);
  CHECK(g.complements()[59].real() == std::ldexp(1.0, -60));
  CHECK(g.gap(59) > 0.0);
  CHECK(g.gap(59) == doctest::Approx(std::ldexp(2.0, -60)).epsilon(1e-12));
  CHECK(g.prefix(3).size() == 3);
  CHECK(g.lambda(0) == Complex(0.5, 0.0));
  const auto p = DiskSequence::polynomial(2.0, 4);
  CHECK(p.lambda(1).real() == doctest::Approx(0.75));
}

TEST_CASE("powers from complements") {
  CHECK(power_from_complement({0.5, 0.0}, 0) == Complex(1.0, 0.0));
  CHECK(power_from_complement({0.25, 0.0}, 3).real() == doctest::Approx(0.421875));
  const Complex a(0.3, -0.2);
  const Complex direct = std::pow(1.0 - a, 7);
  CHECK(std::abs(power_from_complement(a, 7) - direct) < 1e-14);
  const double tiny = std::ldexp(1.0, -60);
  CHECK(power_from_complement({tiny, 0.0}, 1u << 20).real() ==
        doctest::Approx(std::exp(-std::ldexp(1.0, -40))).epsilon(1e-15));
}

TEST_CASE("Carleson products examples") {
  const auto one = carleson_products(DiskSequence::from_lambdas(reals({0.3})));
  CHECK(one.infimum == 1.0);
  const auto two = carleson_products(DiskSequence::from_lambdas(reals({0.0, 0.5})));
  CHECK(two.infimum == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(two.products[0] == doctest::Approx(0.5).epsilon(1e-15));

  const auto dup = carleson_products(DiskSequence::from_lambdas(reals({0.2, 0.5, 0.2})));
  CHECK(dup.infimum == 0.0);
  REQUIRE(dup.coincident.size() == 1);
  CHECK(dup.coincident[0] == std::pair<std::size_t, std::size_t>{0, 2});
}

TEST_CASE("Carleson infimum for the geometric family") {
  struct Row { std::size_t K; double expected; };
  for (auto row : {Row{30, frozen::kCarlesonGeometricK30}, Row{50, frozen::kCarlesonGeometricK50},
                   Row{60, frozen::kCarlesonGeometricK60}, Row{100, frozen::kCarlesonGeometricK100},
                   Row{120, frozen::kCarlesonGeometricK120}}) {
    const auto r = carleson_products(DiskSequence::geometric(0.5, row.K));
    CHECK(r.infimum == doctest::Approx(row.expected).epsilon(1e-12));
  }
  const double a = carleson_products(DiskSequence::geometric(0.5, 30)).infimum;
  const double b = carleson_products(DiskSequence::geometric(0.5, 120)).infimum;
  CHECK(std::abs(a - b) / b < 1e-3);
}

TEST_CASE("Carleson infimum for the polynomial family decays") {
  const double k10 = carleson_products(DiskSequence::polynomial(2.0, 10)).infimum;
  const double k40 = carleson_products(DiskSequence::polynomial(2.0, 40)).infimum;
  const double k50 = carleson_products(DiskSequence::polynomial(2.0, 50)).infimum;
  CHECK(k10 == doctest::Approx(frozen::kCarlesonPolynomialK10).epsilon(1e-10));
  CHECK(k40 == doctest::Approx(frozen::kCarlesonPolynomialK40).epsilon(1e-8));
  CHECK(k50 == doctest::Approx(frozen::kCarlesonPolynomialK50).epsilon(1e-8));
  CHECK(k40 < k10);
  CHECK(k50 < k40);
}

TEST_CASE("Carleson products agree with a direct long double product") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> r(0.0, 0.95);
  std::uniform_real_distribution<double> th(0.0, 2.0 * std::numbers::pi);
  for (int run = 0; run < 20; ++run) {
    std::vector<Complex> pts;
    for (int k = 0; k < 12; ++k) pts.push_back(std::polar(r(rng), th(rng)));
    const auto lib = carleson_products(DiskSequence::from_lambdas(pts));
    const auto ref = carleson_oracle(pts);
    for (std::size_t n = 0; n < pts.size(); ++n) {
      CHECK(std::abs(lib.products[n] - static_cast<double>(ref[n])) <= 1e-12 * (1.0 + ref[n]));
      CHECK(lib.products[n] >= 0.0);
      CHECK(lib.products[n] <= 1.0);
    }
  }
}

TEST_CASE("Carleson products are non-increasing in the truncation") {
  const auto seq = DiskSequence::polynomial(1.5, 40);
  std::vector<double> prev = carleson_products(seq.prefix(5)).products;
  for (std::size_t K = 6; K <= 40; ++K) {
    const auto cur = carleson_products(seq.prefix(K)).products;
    for (std::size_t n = 0; n < prev.size(); ++n) CHECK(cur[n] <= prev[n] * (1.0 + 1e-14));
    prev = cur;
  }
}

TEST_CASE("Carleson products underflow to zero") {
  std::vector<Complex> pts;
  for (int k = 0; k < 400; ++k) pts.emplace_back(0.001 * k, 0.0);
  const auto r = carleson_products(DiskSequence::from_lambdas(pts));
  CHECK(r.infimum == 0.0);
  CHECK(r.coincident.empty());
}

TEST_CASE("Gramian examples") {
  const auto g1 = truncated_gramian(DiskSequence::from_lambdas(reals({0.0})));
  CHECK(g1.gramian.rows() == 1);
  CHECK(g1.gramian(0, 0) == Complex(1.0, 0.0));
  CHECK(g1.min_eigenvalue == doctest::Approx(1.0));

  const auto g2 = truncated_gramian(DiskSequence::from_lambdas(reals({0.0, 0.5})));
  CHECK(std::abs(g2.gramian(0, 1) - std::sqrt(3.0) / 2.0) < 1e-15);
  CHECK(std::abs(g2.gramian(1, 0) - std::sqrt(3.0) / 2.0) < 1e-15);
  CHECK(std::abs(g2.gramian(1, 1) - 1.0) < 1e-15);
  const auto oracle = series_oracle({0.0, 0.0}, {0.5, 0.0});
  CHECK(std::abs(g2.gramian(0, 1).real() - static_cast<double>(oracle.real())) < 1e-15);
  REQUIRE(g2.series_residual.has_value());
  CHECK(*g2.series_residual < 1e-15);
  CHECK(g2.min_eigenvalue == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(g2.max_eigenvalue == doctest::Approx(1.0 + std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("Gramian closed form matches series sums") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(0.0, 0.999);
  std::uniform_real_distribution<double> th(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> pts;
  for (int k = 0; k < 10; ++k) pts.push_back(std::polar(r(rng), th(rng)));
  pts.emplace_back(0.999, 0.0);
  pts.emplace_back(-0.999, 0.0);
  const auto g = truncated_gramian(DiskSequence::from_lambdas(pts));
  REQUIRE(g.series_residual.has_value());
  CHECK(*g.series_residual < 1e-10);
  for (std::size_t s = 0; s < pts.size(); ++s) {
    for (std::size_t t = 0; t < pts.size(); ++t) {
      const LComplex o = series_oracle(pts[s], pts[t]);
      const Complex e = g.gramian(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
      CHECK(std::abs(e - Complex(static_cast<double>(o.real()), static_cast<double>(o.imag()))) < 1e-10);
    }
  }
  const auto direct = gramian_series_entry({0.5, 0.1}, {0.2, -0.3});
  const LComplex o = series_oracle(1.0 - Complex(0.5, 0.1), 1.0 - Complex(0.2, -0.3));
  CHECK(std::abs(direct - Complex(static_cast<double>(o.real()), static_cast<double>(o.imag()))) < 1e-14);
}

TEST_CASE("Gramian is Hermitian with ordered eigenvalues") {
  const auto g = truncated_gramian(DiskSequence::geometric(0.6, 30), false);
  CHECK((g.gramian - g.gramian.adjoint()).norm() < 1e-14);
  CHECK(g.max_eigenvalue >= g.min_eigenvalue);
  CHECK(g.min_eigenvalue >= 0.0);
  CHECK(g.condition == doctest::Approx(g.max_eigenvalue / g.min_eigenvalue));
  CHECK_FALSE(g.series_residual.has_value());
}

TEST_CASE("Gramian minimum eigenvalue for the two families") {
  const double g25 = truncated_gramian(DiskSequence::geometric(0.5, 25), false).min_eigenvalue;
  const double g50 = truncated_gramian(DiskSequence::geometric(0.5, 50), false).min_eigenvalue;
  const double g100 = truncated_gramian(DiskSequence::geometric(0.5, 100), false).min_eigenvalue;
  CHECK(g25 == doctest::Approx(frozen::kGramianMinGeometricK25).epsilon(1e-6));
  CHECK(g50 == doctest::Approx(frozen::kGramianMinGeometricK50).epsilon(1e-6));
  CHECK(g100 == doctest::Approx(frozen::kGramianMinGeometricK100).epsilon(1e-6));

  const double p10 = truncated_gramian(DiskSequence::polynomial(2.0, 10), false).min_eigenvalue;
  const double p20 = truncated_gramian(DiskSequence::polynomial(2.0, 20), false).min_eigenvalue;
  const double p40 = truncated_gramian(DiskSequence::polynomial(2.0, 40), false).min_eigenvalue;
  CHECK(p10 == doctest::Approx(frozen::kGramianMinPolynomialK10).epsilon(1e-4));
  CHECK(p20 < 1e-15);
  CHECK(p40 < 1e-15);
  CHECK(p20 < p10);
  CHECK(p40 <= p20);
}

TEST_CASE("Gramian agrees with an explicitly assembled long double matrix") {
  const auto seq = DiskSequence::polynomial(2.0, 10);
  const auto g = truncated_gramian(seq, false);
  const auto lam = seq.lambdas();
  for (std::size_t s = 0; s < lam.size(); ++s) {
    for (std::size_t t = 0; t < lam.size(); ++t) {
      const long double ls = lam[s].real();
      const long double lt = lam[t].real();
      const long double e = std::sqrt((1 - ls * ls) * (1 - lt * lt)) / (1 - ls * lt);
      CHECK(std::abs(g.gramian(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)).real() -
                     static_cast<double>(e)) < 1e-13);
    }
  }
}

TEST_CASE("one-point verdict examples") {
  const auto geo = DiskSequence::geometric(0.5, 50);
  const auto v = one_point_frame_verdict(geo, standard_weights(geo));
  CHECK(v.inside_disk);
  CHECK(v.accumulates);
  CHECK(v.carleson);
  CHECK(v.weights_bounded);
  CHECK(v.overall);
  CHECK(v.weight_min == doctest::Approx(1.0));
  CHECK(v.weight_max == doctest::Approx(1.0));
  CHECK(v.note == "truncation-level evidence, not a proof");

  std::vector<Complex> rot;
  for (int k = 1; k <= 50; ++k) rot.push_back(std::polar(0.5, std::numbers::pi / k));
  const auto rs = DiskSequence::from_lambdas(rot);
  const auto vr = one_point_frame_verdict(rs, standard_weights(rs));
  CHECK(vr.inside_disk);
  CHECK_FALSE(vr.accumulates);
  CHECK_FALSE(vr.overall);

  ComplexVector b = standard_weights(geo);
  for (Eigen::Index k = 0; k < b.size(); ++k) b(k) *= std::ldexp(1.0, -static_cast<int>(k + 1));
  const auto vb = one_point_frame_verdict(geo, b);
  CHECK_FALSE(vb.weights_bounded);
  CHECK(vb.weight_min == doctest::Approx(std::ldexp(1.0, -50)));
  CHECK(vb.carleson);
  CHECK_FALSE(vb.overall);

  const auto poly = DiskSequence::polynomial(2.0, 50);
  const auto vp = one_point_frame_verdict(poly, standard_weights(poly));
  CHECK(vp.accumulates);
  CHECK_FALSE(vp.carleson);
  CHECK_FALSE(vp.overall);

  CHECK_THROWS_AS(one_point_frame_verdict(geo, ComplexVector::Ones(3)), Error);
}

TEST_CASE("verdict agrees with a Gramian floor across K") {
  const std::vector<std::size_t> Ks{25, 50, 100};
  const auto geo = DiskSequence::geometric(0.5, 100);
  const auto rows = verdict_trend(geo, standard_weights(geo), Ks);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.verdict.overall);
    CHECK(r.gramian_min > 1e-5);
  }

  const auto poly = DiskSequence::polynomial(2.0, 100);
  const auto prow = verdict_trend(poly, standard_weights(poly), Ks);
  for (const auto& r : prow) {
    CHECK_FALSE(r.verdict.overall);
    CHECK(r.gramian_min < 1e-10);
  }
  CHECK(prow.back().gramian_min <= prow.front().gramian_min);

  const std::vector<std::size_t> bad{50, 25};
  CHECK_THROWS_AS(verdict_trend(geo, standard_weights(geo), bad), Error);
}

TEST_CASE("scaling the weights scales the frame bounds") {
  std::vector<Complex> pts;
  for (int k = 0; k < 12; ++k) pts.emplace_back(-0.8 + 0.13 * k, 0.05 * (k % 3));
  const auto seq = DiskSequence::from_lambdas(pts);
  const ComplexVector b0 = standard_weights(seq);
  std::mt19937_64 rng(5);
  const double c1 = 0.5;
  const double c2 = 3.0;
  std::uniform_real_distribution<double> m(c1, c2);
  std::uniform_real_distribution<double> th(0.0, 2.0 * std::numbers::pi);
  ComplexVector b = b0;
  for (Eigen::Index k = 0; k < b.size(); ++k) b(k) *= std::polar(m(rng), th(rng));
  const std::vector<std::size_t> Ks{4, 8, 12};
  const auto ref = frame_failure_profile(seq, b0, Ks);
  const auto got = frame_failure_profile(seq, b, Ks);
  for (std::size_t i = 0; i < Ks.size(); ++i) {
    CHECK(got[i].lower >= c1 * c1 * ref[i].lower * (1.0 - 1e-9));
    CHECK(got[i].lower <= c2 * c2 * ref[i].lower * (1.0 + 1e-9));
    CHECK(got[i].upper >= c1 * c1 * ref[i].upper * (1.0 - 1e-9));
    CHECK(got[i].upper <= c2 * c2 * ref[i].upper * (1.0 + 1e-9));
  }
}

TEST_CASE("completeness in the truncated diagonal model") {
  const auto lam = reals({0.1, 0.4, 0.7});
  ComplexMatrix dense(3, 1);
  dense << 1.0, 2.0, -1.0;
  CHECK(completeness_truncated(lam, dense).feasible);

  ComplexMatrix hole(3, 1);
  hole << 1.0, 0.0, 3.0;
  const auto r = completeness_truncated(lam, hole);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.witness.size() == 1);
  CHECK(std::abs(r.witness[0] - Complex(0.4, 0.0)) < 1e-15);

  const auto twice = reals({0.3, 0.3, 0.6});
  ComplexMatrix one(3, 1);
  one << 1.0, 1.0, 1.0;
  const auto t = completeness_truncated(twice, one);
  CHECK_FALSE(t.feasible);
  REQUIRE(t.per_eigenvalue.size() == 2);
  for (const auto& chk : t.per_eigenvalue) {
    if (std::abs(chk.value - Complex(0.3, 0.0)) < 1e-12) {
      CHECK(chk.required == 2);
      CHECK(chk.achieved == 1);
    } else {
      CHECK(chk.satisfied());
    }
  }
  ComplexMatrix two(3, 2);
  two << 1.0, 0.0, 0.0, 1.0, 1.0, 1.0;
  CHECK(completeness_truncated(twice, two).feasible);

  ComplexMatrix with_inert(3, 2);
  with_inert << 1.0, 0.0, 2.0, 0.0, 3.0, 0.0;
  const auto ri = completeness_truncated(lam, with_inert);
  CHECK(ri.feasible);
  CHECK(ri.inert_sites == std::vector<std::size_t>{1});
  REQUIRE(ri.used_budgets.size() == 2);
  CHECK(ri.used_budgets[0] == std::optional<std::size_t>{2});
  CHECK_FALSE(ri.used_budgets[1].has_value());

  CHECK_THROWS_AS(completeness_truncated(lam, ComplexMatrix::Ones(2, 1)), Error);
}

TEST_CASE("completeness through a diagonalization") {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a.diagonal() << 1.0, 1.0, 2.0;
  const SpectralData spec = eigendecompose(a);
  const std::vector<std::size_t> single{0};
  const std::vector<std::size_t> pair{0, 1};
  CHECK_FALSE(completeness_truncated(spec, single).feasible);
  CHECK(completeness_truncated(spec, pair).feasible == false);
  const std::vector<std::size_t> all{0, 1, 2};
  CHECK(completeness_truncated(spec, all).feasible);
}

TEST_CASE("Muntz defect") {
  const auto seq = DiskSequence::geometric(0.5, 40);
  const ComplexVector b = standard_weights(seq);
  const std::vector<std::size_t> with_target{0, 1, 2};
  CHECK_THROWS_AS(muntz_defect(seq, b, with_target, 1), Error);
  const std::vector<std::size_t> unordered{0, 3, 2};
  CHECK_THROWS_AS(muntz_defect(seq, b, unordered, 1), Error);

  const auto empty = muntz_defect(seq, b, {}, 3);
  ComplexVector d3(b.size());
  for (Eigen::Index k = 0; k < b.size(); ++k) d3(k) = std::pow(seq.lambda(static_cast<std::size_t>(k)), 3) * b(k);
  CHECK(empty.distance == doctest::Approx(d3.norm()).epsilon(1e-13));
  CHECK(empty.target_norm == empty.distance);

  std::vector<std::size_t> ex{0};
  for (std::size_t n = 2; n <= 60; ++n) ex.push_back(n);
  const auto md = muntz_defect(seq, b, ex, 1);
  CHECK(md.distance < 1e-6 * md.target_norm);

  // Householder QR least squares as an independent residual
  ComplexMatrix v(b.size(), static_cast<Eigen::Index>(ex.size()));
  for (std::size_t c = 0; c < ex.size(); ++c) {
    for (Eigen::Index k = 0; k < b.size(); ++k) {
      v(k, static_cast<Eigen::Index>(c)) = std::pow(seq.lambda(static_cast<std::size_t>(k)), static_cast<int>(ex[c])) * b(k);
    }
  }
  ComplexVector t(b.size());
  for (Eigen::Index k = 0; k < b.size(); ++k) t(k) = seq.lambda(static_cast<std::size_t>(k)) * b(k);
  const ComplexVector x = v.colPivHouseholderQr().solve(t);
  CHECK((v * x - t).norm() < 1e-6 * t.norm());
}

TEST_CASE("geometric tail bound on iterates") {
  std::vector<Complex> pts;
  for (int k = 0; k < 20; ++k) pts.push_back(std::polar(0.3 + 0.02 * k, 0.7 * k));
  const auto seq = DiskSequence::from_lambdas(pts);
  double r = 0.0;
  for (auto p : pts) r = std::max(r, std::abs(p));
  const ComplexVector b = ComplexVector::Ones(20);
  for (std::size_t l = 0; l <= 40; ++l) {
    const auto m = muntz_defect(seq, b, {}, l);
    CHECK(m.target_norm <= std::pow(r, static_cast<double>(l)) * b.norm() * (1.0 + 1e-12));
  }
}

TEST_CASE("frame failure profile") {
  const auto single = DiskSequence::from_lambdas(reals({0.1}));
  ComplexVector b1(1);
  b1 << Complex(2.0, 1.0);
  const std::vector<std::size_t> k1{1};
  const auto p1 = frame_failure_profile(single, b1, k1);
  CHECK(p1[0].lower == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(p1[0].upper == doctest::Approx(5.0).epsilon(1e-15));

  std::vector<Complex> pts;
  for (int k = 0; k < 30; ++k) pts.emplace_back(0.5 + 0.01 * std::sin(1.0 + k), 0.0);
  const auto seq = DiskSequence::from_lambdas(pts);
  const ComplexVector b = standard_weights(seq);
  const std::vector<std::size_t> Ks{5, 10, 20, 30};
  const auto raw = frame_failure_profile(seq, b, Ks);
  const auto unit = frame_failure_profile(seq, b, Ks, true);
  CHECK(raw.back().lower < 1e-6);
  CHECK(unit.back().lower < 1e-6);
  // strict decay until the double precision floor
  for (std::size_t i = 1; i < Ks.size(); ++i) {
    if (raw[i - 1].lower > 1e-14) CHECK(raw[i].lower < raw[i - 1].lower);
    if (unit[i - 1].lower > 1e-14) CHECK(unit[i].lower < unit[i - 1].lower);
  }

  // independent check at K = 5: smallest eigenvalue of V V*
  ComplexMatrix v(5, 5);
  for (Eigen::Index k = 0; k < 5; ++k) {
    for (Eigen::Index l = 0; l < 5; ++l) v(k, l) = std::pow(pts[static_cast<std::size_t>(k)], static_cast<int>(l)) * b(k);
  }
  const double e = min_eig(v * v.adjoint());
  CHECK(raw[0].lower == doctest::Approx(e).epsilon(1e-6));

  const auto near = DiskSequence::from_lambdas(reals({0.2, 0.9995}));
  CHECK_THROWS_AS(frame_failure_profile(near, standard_weights(near), k1), Error);
  try {
    frame_failure_profile(near, standard_weights(near), k1);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::HypothesisViolated);
  }
}

TEST_CASE("circulant Riesz demo") {
  const auto m2 = circulant_riesz_demo(2);
  CHECK(m2.dimension == 6);
  CHECK(m2.rank == 6);
  CHECK(m2.basis);
  CHECK(m2.condition == doctest::Approx(frozen::kCirculantCondition).epsilon(1e-9));
  const auto m10 = circulant_riesz_demo(10);
  CHECK(m10.rank == 30);
  CHECK(m10.basis);
  CHECK(m10.condition <= 2.0 * m2.condition);
  CHECK(m10.condition >= 0.5 * m2.condition);
  const auto sparse = circulant_riesz_demo(4, 4);
  CHECK(sparse.rank < 12);
  CHECK_FALSE(sparse.basis);
}
