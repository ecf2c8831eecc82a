#include "escops/homology.hpp"

#include <algorithm>

namespace escops::lin {

SparseVec Echelon::reduce(SparseVec v) const {
  // Repeatedly clear the leading coordinate while a row pivots on it; later
  // coordinates cannot reappear at cleared positions because rows are fully
  // reduced against each other.
  for (auto it = v.begin(); it != v.end();) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    Rat c = it->second;
    for (const auto& [col, val] : row->second) {
      auto ins = v.find(col);
      if (ins == v.end()) {
        Rat nv = -c * val;
        if (nv != 0) v[col] = nv;
      } else {
        ins->second -= c * val;
        if (ins->second == 0) v.erase(ins);
      }
    }
    it = v.lower_bound(row->first);
  }
  return v;
}

bool Echelon::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const int pivot = v.begin()->first;
  const Rat lead = v.begin()->second;
  for (auto& [col, val] : v) val /= lead;
  // Back substitute so that existing rows are clear at the new pivot.
  for (auto& [p, row] : rows_) {
    auto hit = row.find(pivot);
    if (hit == row.end()) continue;
    Rat c = hit->second;
    for (const auto& [col, val] : v) {
      auto ins = row.find(col);
      if (ins == row.end()) {
        Rat nv = -c * val;
        if (nv != 0) row[col] = nv;
      } else {
        ins->second -= c * val;
        if (ins->second == 0) row.erase(ins);
      }
    }
  }
  rows_.emplace(pivot, std::move(v));
  return true;
}

int rank(const SparseMatrix& m) {
  Echelon e;
  for (const auto& row : m.entries) {
    if (!row.empty()) e.insert(row);
  }
  return e.rank();
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  Echelon e;
  for (const auto& row : m.entries)
    if (!row.empty()) e.insert(row);
  std::vector<SparseVec> out;
  const auto& rows = e.rows();
  for (int col = 0; col < m.cols; ++col) {
    if (rows.count(col)) continue;  // pivot column
    SparseVec v;
    v[col] = 1;
    for (const auto& [pivot, row] : rows) {
      auto it = row.find(col);
      if (it != row.end()) v[pivot] = -it->second;
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

// Representatives in degree k: kernel vectors whose residual modulo the
// boundary space (and modulo previously chosen representatives) is nonzero;
// the reduced residual itself is recorded, so the choice is canonical.
std::vector<SparseVec> homology_representatives(const SparseMatrix& d_in,
                                                const SparseMatrix& d_out) {
  Echelon span;
  for (int c = 0; c < d_in.cols; ++c) {
    auto col = d_in.column(c);
    if (!col.empty()) span.insert(std::move(col));
  }
  std::vector<SparseVec> reps;
  for (auto& z : kernel_basis(d_out)) {
    SparseVec residual = span.reduce(z);
    if (residual.empty()) continue;
    const Rat lead = residual.begin()->second;
    for (auto& [c, v] : residual) v /= lead;
    span.insert(residual);
    reps.push_back(std::move(residual));
  }
  return reps;
}

}  // namespace

HomologyResult homology(const ChainComplex& c, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("empty degree range");
  HomologyResult out;
  for (int k = lo; k <= hi; ++k) {
    auto reps = homology_representatives(c.differential().block(k - 1),
                                         c.differential().block(k));
    out.dims[k] = static_cast<int>(reps.size());
    out.representatives[k] = std::move(reps);
  }
  return out;
}

namespace {

// Solver for membership in a span with coefficient tracking: columns are
// inserted in order and each echelon row remembers its expression in the
// original columns.
class TrackedSpan {
 public:
  void add_column(const SparseVec& col) {
    SparseVec aug;
    aug[static_cast<int>(n_cols_)] = 1;
    ++n_cols_;
    insert(col, std::move(aug));
  }

  // Coefficients x with span_columns · x = b, empty when b is outside.
  std::optional<SparseVec> solve(const SparseVec& b) const {
    SparseVec v = b, aug;
    reduce(v, aug);
    if (!v.empty()) return std::nullopt;
    for (auto& [i, c] : aug) c = -c;
    return aug;
  }

 private:
  struct Row {
    SparseVec vec;
    SparseVec aug;
  };

  void reduce(SparseVec& v, SparseVec& aug) const {
    for (auto it = v.begin(); it != v.end();) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      Rat c = it->second;
      axpy(v, row->second.vec, -c);
      axpy(aug, row->second.aug, -c);
      it = v.lower_bound(row->first);
    }
  }

  static void axpy(SparseVec& dst, const SparseVec& src, const Rat& c) {
    for (const auto& [k, val] : src) {
      auto it = dst.find(k);
      if (it == dst.end()) {
        Rat nv = c * val;
        if (nv != 0) dst[k] = nv;
      } else {
        it->second += c * val;
        if (it->second == 0) dst.erase(it);
      }
    }
  }

  void insert(SparseVec v, SparseVec aug) {
    reduce(v, aug);
    if (v.empty()) return;  // dependent column
    const int pivot = v.begin()->first;
    const Rat lead = v.begin()->second;
    for (auto& [k, val] : v) val /= lead;
    for (auto& [k, val] : aug) val /= lead;
    rows_.emplace(pivot, Row{std::move(v), std::move(aug)});
  }

  std::map<int, Row> rows_;
  size_t n_cols_ = 0;
};

SparseVec apply_block(const SparseMatrix& m, const SparseVec& v) {
  SparseVec out;
  for (const auto& [col, val] : v) {
    for (int r = 0; r < m.rows; ++r) {
      auto it = m.entries[r].find(col);
      if (it == m.entries[r].end()) continue;
      auto ins = out.find(r);
      if (ins == out.end()) {
        Rat nv = it->second * val;
        if (nv != 0) out[r] = nv;
      } else {
        ins->second += it->second * val;
        if (ins->second == 0) out.erase(ins);
      }
    }
  }
  return out;
}

}  // namespace

QuasiIsoResult is_quasi_iso(const ChainComplex& source, const ChainComplex& target,
                            const LinearMap& f, int lo, int hi) {
  if (f.shift() != 0)
    throw std::invalid_argument("quasi-isomorphism candidate must have degree 0");
  if (!(f.source() == source.space()) || !(f.target() == target.space()))
    throw std::invalid_argument("map endpoints differ from the complexes");

  // Chain-map validation across the full support of either complex.
  auto degs = source.space().degrees();
  for (int d : target.space().degrees()) degs.push_back(d);
  for (int d : degs) {
    auto lhs = SparseMatrix::multiply(target.differential().block(d), f.block(d));
    auto rhs = SparseMatrix::multiply(f.block(d + 1), source.differential().block(d));
    bool equal = lhs.rows == rhs.rows && lhs.cols == rhs.cols;
    if (equal) {
      for (int r = 0; equal && r < lhs.rows; ++r) equal = lhs.entries[r] == rhs.entries[r];
    }
    if (!equal)
      throw std::invalid_argument("not a chain map: d∘f ≠ f∘d at degree " +
                                  std::to_string(d));
  }

  auto h_src = homology(source, lo, hi);
  auto h_tgt = homology(target, lo, hi);

  QuasiIsoResult out;
  for (int k = lo; k <= hi; ++k) {
    const auto& src_reps = h_src.representatives[k];
    const auto& tgt_reps = h_tgt.representatives[k];
    if (h_src.dims[k] != h_tgt.dims[k]) {
      out.ok = false;
      if (out.failure.empty())
        out.failure = "homology dimensions differ in degree " + std::to_string(k) +
                      ": " + std::to_string(h_src.dims[k]) + " vs " +
                      std::to_string(h_tgt.dims[k]);
    }

    TrackedSpan span;
    const auto d_in_tgt = target.differential().block(k - 1);
    int n_boundary = 0;
    for (int c = 0; c < d_in_tgt.cols; ++c) {
      auto col = d_in_tgt.column(c);
      if (!col.empty()) {
        span.add_column(col);
        ++n_boundary;
      }
    }
    for (const auto& rep : tgt_reps) span.add_column(rep);

    SparseMatrix induced(static_cast<int>(tgt_reps.size()),
                         static_cast<int>(src_reps.size()));
    bool solvable = true;
    for (size_t j = 0; j < src_reps.size(); ++j) {
      auto image = apply_block(f.block(k), src_reps[j]);
      auto coeffs = span.solve(image);
      if (!coeffs) {
        // Cannot happen for a genuine chain map; guard anyway.
        solvable = false;
        break;
      }
      for (const auto& [i, v] : *coeffs) {
        if (i >= n_boundary)
          induced.set(i - n_boundary, static_cast<int>(j), v);
      }
    }
    if (!solvable) {
      out.ok = false;
      if (out.failure.empty())
        out.failure = "image not a cocycle in degree " + std::to_string(k);
      continue;
    }
    if (out.ok || h_src.dims[k] == h_tgt.dims[k]) {
      if (rank(induced) != h_tgt.dims[k]) {
        out.ok = false;
        if (out.failure.empty())
          out.failure = "induced map not invertible in degree " + std::to_string(k);
      }
    }
    out.induced[k] = std::move(induced);
  }
  return out;
}

}  // namespace escops::lin
