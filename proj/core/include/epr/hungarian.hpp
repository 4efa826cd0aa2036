#pragma once

#include <cstddef>
#include <vector>

namespace epr {

// Maximum-weight perfect assignment on a square matrix (Kuhn-Munkres with
// potentials, O(n^3)). Returns column_of_row. Only additions, subtractions
// and comparisons touch Scalar, so exact rational types work unchanged.
// Ties resolve to the lowest column index in scan order.
template <class Scalar>
std::vector<int> max_weight_assignment(const std::vector<std::vector<Scalar>>& weight) {
  const int n = static_cast<int>(weight.size());
  std::vector<Scalar> row_potential(n + 1, Scalar(0));
  std::vector<Scalar> col_potential(n + 1, Scalar(0));
  std::vector<int> row_of_col(n + 1, 0);
  std::vector<int> way(n + 1, 0);

  for (int row = 1; row <= n; ++row) {
    row_of_col[0] = row;
    int j0 = 0;
    std::vector<Scalar> min_slack(n + 1, Scalar(0));
    std::vector<char> has_slack(n + 1, 0);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = row_of_col[j0];
      Scalar delta(0);
      bool have_delta = false;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Scalar reduced = -weight[i0 - 1][j - 1] - row_potential[i0] - col_potential[j];
        if (!has_slack[j] || reduced < min_slack[j]) {
          min_slack[j] = reduced;
          has_slack[j] = 1;
          way[j] = j0;
        }
        if (!have_delta || min_slack[j] < delta) {
          delta = min_slack[j];
          have_delta = true;
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          row_potential[row_of_col[j]] += delta;
          col_potential[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const int j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> column_of_row(n, -1);
  for (int j = 1; j <= n; ++j)
    if (row_of_col[j] != 0) column_of_row[row_of_col[j] - 1] = j - 1;
  return column_of_row;
}

}  // namespace epr
