#include "dynsamp/types.hpp"

#include <algorithm>
#include <limits>

namespace dynsamp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::IllConditionedSimilarity: return "IllConditionedSimilarity";
    case ErrorCode::UntrustedFactorization: return "UntrustedFactorization";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

double Tolerances::default_rank(std::size_t d) {
  return static_cast<double>(std::max<std::size_t>(d, 1)) *
         std::numeric_limits<double>::epsilon() * 1e4;
}

double Tolerances::default_cluster(double operator_norm) {
  return operator_norm > 0.0 ? 1e-8 * operator_norm : 1e-8;
}

}  // namespace dynsamp
