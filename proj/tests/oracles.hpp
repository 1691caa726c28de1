#pragma once
// Reference implementations used only by tests. Written independently of the
// library code paths they check.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "headcount/counter.hpp"
#include "headcount/tracker.hpp"

namespace oracle {

using Grid = std::vector<std::vector<double>>;
using MatchSet = std::set<std::pair<std::size_t, std::size_t>>;

// Line-by-line transcription of the greedy tracking loop: full scan for the
// argmin on every iteration (first hit in row-major order wins ties).
inline MatchSet literal_associate(Grid m_mat, const Grid& n_mat, double t_thresh, double d_thresh) {
  const std::size_t m = m_mat.size();
  const std::size_t n = m ? m_mat[0].size() : 0;
  const std::size_t big_a = std::min(m, n);
  std::size_t a = 0;
  std::vector<bool> row_used(m, false), col_used(n, false);
  MatchSet matches;

  auto min_of = [&]() {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& row : m_mat)
      for (double v : row) best = std::min(best, v);
    return best;
  };

  while (a < big_a && min_of() < t_thresh) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m_mat[i][j] < best) {
          best = m_mat[i][j];
          bi = i;
          bj = j;
        }
    if (row_used[bi] || col_used[bj] || n_mat[bi][bj] > d_thresh) {
      m_mat[bi][bj] = t_thresh;
      continue;
    }
    matches.insert({bi, bj});
    row_used[bi] = col_used[bj] = true;
    m_mat[bi][bj] = t_thresh;
    ++a;
  }
  return matches;
}

// `cols` is needed when the grid has no rows.
inline headcount::Matrix to_matrix(const Grid& g, std::size_t cols) {
  headcount::Matrix out(g.size(), cols);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g[i].size(); ++j) out(i, j) = g[i][j];
  return out;
}

inline MatchSet as_set(const headcount::AssignmentResult& r) {
  return MatchSet(r.matches.begin(), r.matches.end());
}

// Random m x n matrix with distinct entries in [0, 1).
inline Grid distinct_grid(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::vector<double> pool(m * n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::set<double> seen;
  for (double& v : pool) {
    do v = u(rng);
    while (!seen.insert(v).second);
  }
  Grid g(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = pool[i * n + j];
  return g;
}

// Cheapest full assignment of min(m, n) pairs, by enumerating column permutations.
inline double optimal_assignment_cost(const Grid& g) {
  const std::size_t m = g.size(), n = g[0].size();
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double sum = 0.0;
    for (std::size_t i = 0; i < std::min(m, n); ++i) sum += g[i][cols[i]];
    best = std::min(best, sum);
  } while (std::next_permutation(cols.begin(), cols.end()));
  return best;
}

// Counts crossings in a per-frame region string: an A..C span is an entry,
// C..A an exit, and each crossing restarts the scan from its end region.
struct Tally {
  int entries = 0;
  int exits = 0;
  bool operator==(const Tally&) const = default;
};

inline Tally anchor_scan(const std::vector<headcount::Region>& regions) {
  using headcount::Region;
  Tally t;
  std::optional<Region> anchor;
  for (Region r : regions) {
    if (r == Region::B) continue;
    if (anchor == Region::A && r == Region::C) ++t.entries;
    if (anchor == Region::C && r == Region::A) ++t.exits;
    anchor = r;
  }
  return t;
}

// Every string over {A, B, C} of length 1..max_len.
inline std::vector<std::vector<headcount::Region>> all_region_strings(std::size_t max_len) {
  using headcount::Region;
  std::vector<std::vector<Region>> out, layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Region>> next;
    for (const auto& s : layer)
      for (Region r : {Region::A, Region::B, Region::C}) {
        auto t = s;
        t.push_back(r);
        next.push_back(t);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline Tally replay_history(const std::vector<headcount::Region>& regions) {
  Tally t;
  std::vector<headcount::Region> history;
  for (auto r : regions) {
    if (auto k = headcount::update_history(history, r))
      (*k == headcount::CrossingKind::Entry ? t.entries : t.exits)++;
  }
  return t;
}

}  // namespace oracle
