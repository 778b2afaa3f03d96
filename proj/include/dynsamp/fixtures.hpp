#pragma once

#include "dynsamp/types.hpp"

namespace dynsamp::fixtures {

/// The three 5x5 worked operators and the 3x3 companion matrix.
ComplexMatrix matrix_P();
ComplexMatrix matrix_Q();
ComplexMatrix matrix_R();
ComplexMatrix companion_M();

/// Cyclic nilpotent of size n: ones on the subdiagonal.
ComplexMatrix cyclic_nilpotent(Eigen::Index n);

}  // namespace dynsamp::fixtures
