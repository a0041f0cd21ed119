#include "qtoda/shapes.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace qtoda {

Diagram::Diagram(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k] <= 0) throw std::invalid_argument("diagram parts must be positive");
    if (k > 0 && parts_[k] > parts_[k - 1])
      throw std::invalid_argument("diagram parts must be weakly decreasing");
  }
  offset_.assign(parts_.size() + 1, 0);
  for (size_t k = 0; k < parts_.size(); ++k) offset_[k + 1] = offset_[k] + parts_[k];
}

Diagram Diagram::parse(std::string_view text) {
  std::vector<int> parts;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size())
      throw std::invalid_argument("malformed diagram: " + std::string(text));
    parts.push_back(v);
    pos = end + 1;
  }
  return Diagram(parts);
}

std::string Diagram::str() const {
  std::string s;
  for (size_t k = 0; k < parts_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(parts_[k]);
  }
  return s;
}

int Diagram::part(int i) const {
  if (i < 1 || i > length()) return 0;
  return parts_[i - 1];
}

bool Diagram::contains(int i, int j) const { return i >= 1 && i <= length() && j >= 1 && j <= parts_[i - 1]; }

std::vector<Cell> Diagram::cells() const {
  std::vector<Cell> out;
  out.reserve(size());
  for (int i = 1; i <= length(); ++i)
    for (int j = 1; j <= parts_[i - 1]; ++j) out.push_back({i, j});
  return out;
}

Diagram staircase(int r) {
  if (r < 1) throw std::invalid_argument("staircase index must be >= 1");
  std::vector<int> parts;
  for (int k = r - 1; k >= 1; --k) parts.push_back(k);
  return Diagram(parts);
}

CellSet interior(const Diagram& lambda) {
  CellSet out;
  for (Cell c : lambda.cells())
    if (lambda.contains(c.i, c.j + 1) && lambda.contains(c.i + 1, c.j)) out.insert(c);
  return out;
}

bool is_staircase(const Diagram& d) {
  for (int i = 1; i <= d.length(); ++i)
    if (d.part(i) != d.length() - i + 1) return false;
  return true;
}

Diagram diagram_from_cells(const CellSet& cells) {
  std::vector<int> parts;
  for (Cell c : cells) {
    if (c.i < 1 || c.j < 1) throw std::invalid_argument("cells must have positive coordinates");
    if (static_cast<int>(parts.size()) < c.i) parts.resize(c.i, 0);
    parts[c.i - 1] = std::max(parts[c.i - 1], c.j);
  }
  Diagram d(parts);
  if (d.size() != static_cast<int>(cells.size())) throw std::invalid_argument("cells do not form a diagram");
  for (Cell c : cells)
    if (!d.contains(c)) throw std::invalid_argument("cells do not form a diagram");
  return d;
}

SkewShape::SkewShape(Diagram lambda, Diagram mu) : lambda_(std::move(lambda)), mu_(std::move(mu)) {
  CellSet in = interior(lambda_);
  for (Cell c : mu_.cells())
    if (!in.count(c)) throw std::invalid_argument("mu must lie in the interior of lambda");
}

std::vector<Cell> SkewShape::skew_cells() const {
  std::vector<Cell> out;
  for (Cell c : lambda_.cells())
    if (!mu_.contains(c)) out.push_back(c);
  return out;
}

bool in_vert(const SkewShape& s, Cell c) {
  return s.in_skew(c) && s.in_mu({c.i - 1, c.j}) && s.in_skew({c.i, c.j - 1});
}

bool in_hor(const SkewShape& s, Cell c) { return s.in_mu(c) && s.in_skew({c.i - 1, c.j + 1}); }

SpecialSets special_sets(const SkewShape& s) {
  SpecialSets out;
  for (Cell c : s.lambda().cells()) {
    if (in_vert(s, c)) out.vert.insert(c);
    if (in_hor(s, c)) out.hor.insert(c);
    if (s.in_mu(c)) {
      if (!s.in_mu({c.i + 1, c.j}) && !s.in_mu({c.i, c.j + 1})) out.corners.insert(c);
      out.mu_tilde.insert(c);
    } else if (s.in_mu({c.i - 1, c.j}) || s.in_mu({c.i, c.j - 1})) {
      out.mu_tilde.insert(c);
    }
  }
  return out;
}

Diagram staircase_closure(const Diagram& mu) {
  CellSet cur;
  for (Cell c : mu.cells()) cur.insert(c);
  for (;;) {
    CellSet next = cur;
    for (Cell c : cur) {
      Cell up{c.i - 1, c.j + 1};
      Cell dn{c.i + 1, c.j - 1};
      if (up.i >= 1 && up.j >= 1) next.insert(up);
      if (dn.i >= 1 && dn.j >= 1) next.insert(dn);
    }
    if (next.size() == cur.size()) break;
    cur = std::move(next);
  }
  return diagram_from_cells(cur);
}

}  // namespace qtoda
