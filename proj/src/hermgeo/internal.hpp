#pragma once
// Helpers shared by the hermgeo translation units.

#include <vector>

#include "btp/hermgeo.hpp"

namespace btp::detail {

/// Dense (i, j) -> sparse [e_i, e_j]_m lookup built from a model.
struct BracketTable {
  explicit BracketTable(const InfinitesimalModel& model);
  int n;
  std::vector<std::vector<std::pair<int, GQ>>> table;
  const std::vector<std::pair<int, GQ>>& at(int i, int j) const { return table[static_cast<std::size_t>(i) * n + j]; }
  Vec apply(const Vec& x, const Vec& y) const;
};

Vec unit(int n, int k);

}  // namespace btp::detail
