#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "escops/graded.hpp"

namespace escops::lin {

using SparseVec = std::map<int, Rat>;

/// Fully reduced row echelon accumulator (RREF). Insertion order does not
/// change the resulting span data; pivots are the first nonzero coordinate
/// of each reduced row, so all downstream output is canonical.
class Echelon {
 public:
  /// Residual of v modulo the current span (canonical projection).
  SparseVec reduce(SparseVec v) const;

  /// Inserts v; returns false when v was already in the span.
  bool insert(SparseVec v);

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::map<int, SparseVec>& rows() const { return rows_; }
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

 private:
  std::map<int, SparseVec> rows_;  // pivot column -> row with unit pivot
};

int rank(const SparseMatrix& m);

/// Basis of the kernel, one vector per non-pivot column of the RREF, in
/// ascending column order.
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);

struct HomologyResult {
  std::map<int, int> dims;  // every degree in the requested range
  // Per degree: cocycle coordinate vectors completing a basis of the
  // boundary space, in canonical order.
  std::map<int, std::vector<SparseVec>> representatives;
};

/// Homology of the complex over a closed degree range, dim H^k =
/// dim ker(d_k) − rank(d_{k−1}).
HomologyResult homology(const ChainComplex& c, int lo, int hi);

struct QuasiIsoResult {
  bool ok = true;
  std::map<int, SparseMatrix> induced;  // degree -> map on homology bases
  std::string failure;                  // first failing degree, human readable
};

/// Checks that f induces an isomorphism H(source) -> H(target) in every
/// degree of [lo, hi]. Throws std::invalid_argument when f is not a chain
/// map, naming the offending degree.
QuasiIsoResult is_quasi_iso(const ChainComplex& source, const ChainComplex& target,
                            const LinearMap& f, int lo, int hi);

}  // namespace escops::lin
