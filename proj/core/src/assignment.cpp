#include "mtss/assignment.hpp"

#include <algorithm>
#include <limits>

namespace mtss {

namespace {

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

std::size_t cols_of(const Matrix& m) { return m.empty() ? 0 : m[0].size(); }

// rows <= cols. Classic potentials formulation, 1-based internally.
Assignment hungarian_wide(const Matrix& a) {
  const std::size_t n = a.size();
  const std::size_t m = cols_of(a);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Assignment out;
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) out.pairs.emplace_back(p[j] - 1, j - 1);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  for (const auto& [r, c] : out.pairs) out.total += a[r][c];
  return out;
}

void search(const Matrix& a, std::size_t row, std::vector<char>& used, std::vector<std::size_t>& pick, double acc,
            double& best, std::vector<std::size_t>& best_pick) {
  if (row == a.size()) {
    if (acc < best - 1e-12) {
      best = acc;
      best_pick = pick;
    }
    return;
  }
  for (std::size_t c = 0; c < used.size(); ++c) {
    if (used[c]) continue;
    used[c] = 1;
    pick[row] = c;
    search(a, row + 1, used, pick, acc + a[row][c], best, best_pick);
    used[c] = 0;
  }
}

Assignment exhaustive_wide(const Matrix& a) {
  Assignment out;
  if (a.empty()) return out;
  std::vector<char> used(cols_of(a), 0);
  std::vector<std::size_t> pick(a.size()), best_pick;
  double best = std::numeric_limits<double>::infinity();
  search(a, 0, used, pick, 0.0, best, best_pick);
  for (std::size_t r = 0; r < best_pick.size(); ++r) out.pairs.emplace_back(r, best_pick[r]);
  out.total = best;
  return out;
}

Assignment flip(Assignment a) {
  for (auto& [r, c] : a.pairs) std::swap(r, c);
  std::sort(a.pairs.begin(), a.pairs.end());
  return a;
}

}  // namespace

Assignment min_cost_assignment(const Matrix& cost) {
  if (cost.empty() || cols_of(cost) == 0) return {};
  if (cost.size() <= cols_of(cost)) return hungarian_wide(cost);
  return flip(hungarian_wide(transpose(cost)));
}

Assignment min_cost_assignment_exhaustive(const Matrix& cost) {
  if (cost.empty() || cols_of(cost) == 0) return {};
  if (cost.size() <= cols_of(cost)) return exhaustive_wide(cost);
  return flip(exhaustive_wide(transpose(cost)));
}

Assignment max_weight_matching(const Matrix& weight, AssignmentMethod method, std::size_t exhaustive_limit) {
  Matrix cost = weight;
  for (auto& row : cost)
    for (auto& x : row) x = x > 0.0 ? -x : 0.0;
  const std::size_t larger = std::max(weight.size(), cols_of(weight));
  const bool exhaustive =
      method == AssignmentMethod::Exhaustive || (method == AssignmentMethod::Auto && larger <= exhaustive_limit);
  Assignment raw = exhaustive ? min_cost_assignment_exhaustive(cost) : min_cost_assignment(cost);
  Assignment out;
  for (const auto& [r, c] : raw.pairs) {
    if (weight[r][c] > 0.0) {
      out.pairs.emplace_back(r, c);
      out.total += weight[r][c];
    }
  }
  return out;
}

}  // namespace mtss
