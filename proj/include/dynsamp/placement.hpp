#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dynsamp/feasibility.hpp"

namespace dynsamp {

enum class PlacementMethod { Exhaustive, Greedy };

std::string_view to_string(PlacementMethod m);

struct PlacementResult {
  std::vector<std::size_t> omega;  // ascending, 0-based
  FeasibilityReport certificate;
  PlacementMethod method = PlacementMethod::Exhaustive;
  bool optimal = false;

  std::size_t size() const { return omega.size(); }
};

inline constexpr std::size_t kExhaustiveLimit = 20;

/// Smallest feasible site set, lexicographically first among ties. Sizes
/// below max_s gamma_s are skipped. Returns nullopt if nothing of size
/// <= size_cap works. Throws SearchSpaceTooLarge when d exceeds `limit`.
std::optional<PlacementResult> minimal_placement_exhaustive(const JordanStructure& js,
                                                            std::size_t size_cap,
                                                            std::size_t limit = kExhaustiveLimit);

/// Adds the site with the largest total rank gain over all W_s until every
/// block is spanned; ties go to the lowest index. Throws Infeasible if no
/// site helps before that.
PlacementResult greedy_placement(const JordanStructure& js);

}  // namespace dynsamp
