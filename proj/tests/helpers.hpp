#pragma once

#include <vector>

#include "qtoda/arrays.hpp"

namespace qtoda::test {

// rows of a filling of lambda; entries on mu cells are ignored for boundary arrays
inline CellArray from_rows(const std::vector<std::vector<int>>& rows, const Diagram& mu = {}) {
  std::vector<int> parts;
  for (const auto& r : rows) parts.push_back(static_cast<int>(r.size()));
  Diagram lambda(parts);
  CellArray a(lambda, mu);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) {
      Cell c{static_cast<int>(i + 1), static_cast<int>(j + 1)};
      if (!mu.contains(c)) a.set(c, rows[i][j]);
    }
  return a;
}

}  // namespace qtoda::test
