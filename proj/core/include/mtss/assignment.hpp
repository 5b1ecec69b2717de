#pragma once

// One-to-one assignment on small rectangular matrices. Both solvers match
// min(rows, cols) pairs.

#include <cstddef>
#include <utility>
#include <vector>

namespace mtss {

using Matrix = std::vector<std::vector<double>>;

struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< (row, col), sorted by row
  double total = 0.0;
};

/// Hungarian method with row/column potentials, O(n^2 m).
Assignment min_cost_assignment(const Matrix& cost);

/// Enumerates every injection of the smaller side into the larger one. Among
/// equal-cost optima the first in lexicographic (row, col) order wins.
Assignment min_cost_assignment_exhaustive(const Matrix& cost);

enum class AssignmentMethod { Auto, Exhaustive, Hungarian };

/// Maximum total weight; zero or negative weights mean "may not pair" and
/// such pairs are dropped from the result.
Assignment max_weight_matching(const Matrix& weight, AssignmentMethod method, std::size_t exhaustive_limit);

}  // namespace mtss
