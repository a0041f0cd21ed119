// Young diagrams, skew shapes and derived cell sets. Coordinates are 1-based (row, column).
#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qtoda {

struct Cell {
  int i = 0;
  int j = 0;
  auto operator<=>(const Cell&) const = default;
};

using CellSet = std::set<Cell>;

class Diagram {
 public:
  Diagram() = default;
  explicit Diagram(std::vector<int> parts);

  static Diagram parse(std::string_view text);
  std::string str() const;

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int part(int i) const;
  int size() const { return static_cast<int>(offset_.back()); }
  bool empty() const { return parts_.empty(); }
  bool contains(int i, int j) const;
  bool contains(Cell c) const { return contains(c.i, c.j); }
  // row-major position of an in-diagram cell
  int index(Cell c) const { return offset_[c.i - 1] + c.j - 1; }
  std::vector<Cell> cells() const;

  bool operator==(const Diagram& o) const { return parts_ == o.parts_; }

 private:
  std::vector<int> parts_;
  std::vector<int> offset_{0};
};

// delta_r = (r-1, ..., 1); delta_1 is empty
Diagram staircase(int r);
// cells whose right and lower neighbours are in the diagram
CellSet interior(const Diagram& lambda);
bool is_staircase(const Diagram& d);
// the diagram whose cells are exactly `cells`; throws if they do not form one
Diagram diagram_from_cells(const CellSet& cells);

class SkewShape {
 public:
  SkewShape(Diagram lambda, Diagram mu);

  const Diagram& lambda() const { return lambda_; }
  const Diagram& mu() const { return mu_; }
  bool in_mu(Cell c) const { return mu_.contains(c); }
  bool in_skew(Cell c) const { return lambda_.contains(c) && !mu_.contains(c); }
  std::vector<Cell> skew_cells() const;

 private:
  Diagram lambda_;
  Diagram mu_;
};

struct SpecialSets {
  CellSet vert;
  CellSet hor;
  CellSet corners;
  CellSet mu_tilde;
};

SpecialSets special_sets(const SkewShape& shape);
bool in_vert(const SkewShape& shape, Cell c);
bool in_hor(const SkewShape& shape, Cell c);

// anti-diagonal hook closure of mu over positive coordinates
Diagram staircase_closure(const Diagram& mu);

}  // namespace qtoda
