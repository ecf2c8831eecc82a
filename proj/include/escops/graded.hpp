#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "escops/rational.hpp"

namespace escops::lin {

/// Finite-dimensional graded Q-vector space with a labeled basis per degree.
/// Labels are unique within a degree and keep their insertion order; that
/// order is the canonical basis order used by all downstream reports.
class GradedSpace {
 public:
  void add(int degree, const std::string& label) {
    auto& v = basis_[degree];
    for (const auto& l : v)
      if (l == label)
        throw std::invalid_argument("duplicate basis label in degree " +
                                    std::to_string(degree) + ": " + label);
    v.push_back(label);
  }

  int dim(int degree) const {
    auto it = basis_.find(degree);
    return it == basis_.end() ? 0 : static_cast<int>(it->second.size());
  }

  const std::vector<std::string>& labels(int degree) const {
    static const std::vector<std::string> kEmpty;
    auto it = basis_.find(degree);
    return it == basis_.end() ? kEmpty : it->second;
  }

  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [d, v] : basis_)
      if (!v.empty()) out.push_back(d);
    return out;
  }

  int min_degree() const {
    auto ds = degrees();
    return ds.empty() ? 0 : ds.front();
  }
  int max_degree() const {
    auto ds = degrees();
    return ds.empty() ? 0 : ds.back();
  }

  int total_dim() const {
    int n = 0;
    for (const auto& [d, v] : basis_) n += static_cast<int>(v.size());
    return n;
  }

  bool operator==(const GradedSpace& o) const { return basis_ == o.basis_; }

 private:
  std::map<int, std::vector<std::string>> basis_;
};

/// Sparse exact matrix, row major. Zero entries are never stored.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::map<int, Rat>> entries;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), entries(r) {}

  void check_index(int r, int c) const {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw std::out_of_range("matrix index (" + std::to_string(r) + "," +
                              std::to_string(c) + ") outside " +
                              std::to_string(rows) + "x" + std::to_string(cols));
  }

  void set(int r, int c, const Rat& v) {
    check_index(r, c);
    if (v == 0)
      entries[r].erase(c);
    else
      entries[r][c] = v;
  }

  void add_to(int r, int c, const Rat& v) {
    check_index(r, c);
    auto it = entries[r].find(c);
    if (it == entries[r].end()) {
      if (v != 0) entries[r][c] = v;
      return;
    }
    it->second += v;
    if (it->second == 0) entries[r].erase(it);
  }

  Rat get(int r, int c) const {
    check_index(r, c);
    auto it = entries[r].find(c);
    return it == entries[r].end() ? Rat(0) : it->second;
  }

  bool is_zero() const {
    for (const auto& row : entries)
      if (!row.empty()) return false;
    return true;
  }

  int nnz() const {
    int n = 0;
    for (const auto& row : entries) n += static_cast<int>(row.size());
    return n;
  }

  static SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows)
      throw std::invalid_argument("matrix product shape mismatch");
    SparseMatrix out(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
      for (const auto& [k, av] : a.entries[r])
        for (const auto& [c, bv] : b.entries[k]) out.add_to(r, c, av * bv);
    return out;
  }

  /// Column c as a sparse coordinate vector.
  std::map<int, Rat> column(int c) const {
    std::map<int, Rat> out;
    for (int r = 0; r < rows; ++r) {
      auto it = entries[r].find(c);
      if (it != entries[r].end()) out[r] = it->second;
    }
    return out;
  }
};

/// Degree-homogeneous linear map. The block at source degree d is a matrix
/// from basis(source, d) to basis(target, d + shift).
class LinearMap {
 public:
  LinearMap(GradedSpace source, GradedSpace target, int shift)
      : source_(std::move(source)), target_(std::move(target)), shift_(shift) {}

  const GradedSpace& source() const { return source_; }
  const GradedSpace& target() const { return target_; }
  int shift() const { return shift_; }

  void set_entry(int src_degree, int row, int col, const Rat& v) {
    block_mutable(src_degree).set(row, col, v);
  }
  void add_entry(int src_degree, int row, int col, const Rat& v) {
    block_mutable(src_degree).add_to(row, col, v);
  }

  /// Returns the block at source degree d, materializing an all-zero block
  /// of the correct shape when nothing was stored.
  SparseMatrix block(int src_degree) const {
    auto it = blocks_.find(src_degree);
    if (it != blocks_.end()) return it->second;
    return SparseMatrix(target_.dim(src_degree + shift_), source_.dim(src_degree));
  }

  bool is_zero() const {
    for (const auto& [d, m] : blocks_)
      if (!m.is_zero()) return false;
    return true;
  }

 private:
  SparseMatrix& block_mutable(int src_degree) {
    auto it = blocks_.find(src_degree);
    if (it == blocks_.end()) {
      it = blocks_
               .emplace(src_degree, SparseMatrix(target_.dim(src_degree + shift_),
                                                 source_.dim(src_degree)))
               .first;
    }
    return it->second;
  }

  GradedSpace source_;
  GradedSpace target_;
  int shift_;
  std::map<int, SparseMatrix> blocks_;
};

/// Cohomologically graded complex: differential of degree +1 with d∘d = 0,
/// verified at construction. Degrees may be negative.
class ChainComplex {
 public:
  ChainComplex(GradedSpace space, LinearMap differential)
      : space_(std::move(space)), d_(std::move(differential)) {
    if (d_.shift() != 1)
      throw std::invalid_argument("differential must have degree +1");
    if (!(d_.source() == space_) || !(d_.target() == space_))
      throw std::invalid_argument("differential endpoints differ from the space");
    for (int deg : space_.degrees()) {
      auto sq = SparseMatrix::multiply(d_.block(deg + 1), d_.block(deg));
      if (!sq.is_zero())
        throw std::invalid_argument("d∘d ≠ 0 starting in degree " +
                                    std::to_string(deg));
    }
  }

  const GradedSpace& space() const { return space_; }
  const LinearMap& differential() const { return d_; }

 private:
  GradedSpace space_;
  LinearMap d_;
};

}  // namespace escops::lin
