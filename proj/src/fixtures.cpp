#include "dynsamp/fixtures.hpp"

namespace dynsamp::fixtures {

namespace {

ComplexMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

ComplexMatrix matrix_P() {
  return from_rows({{4.5, 0.5, -7, 5, -3},
                    {7.5, 1.5, -11, 5, -7},
                    {5, 0, -7, 5, -5},
                    {4, 0, -4, 3, -4},
                    {0.5, 0.5, -1, 0, 1}});
}

ComplexMatrix matrix_Q() {
  return from_rows({{1.5, -0.5, 2, 0, 1},
                    {0.5, 2.5, 0, 0, -1},
                    {0, 0, 3, 0, 0},
                    {1, 0, -1, 3, -1},
                    {-0.5, -0.5, 1, 0, 3}});
}

ComplexMatrix matrix_R() {
  return from_rows({{0, -1, 4, -1, 2},
                    {2, 1, -2, 1, -2},
                    {-0.5, -0.5, 3, 0, 1},
                    {0.5, -0.5, 0, 2, 0},
                    {-0.5, -0.5, 2, -1, 2}});
}

ComplexMatrix companion_M() {
  return from_rows({{0, 0, 1}, {1, 0, 1}, {0, 1, 2}});
}

ComplexMatrix cyclic_nilpotent(Eigen::Index n) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  return m;
}

}  // namespace dynsamp::fixtures
