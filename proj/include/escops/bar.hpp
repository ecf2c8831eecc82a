#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "escops/arnold.hpp"
#include "escops/graded.hpp"
#include "escops/homology.hpp"
#include "escops/rational.hpp"

namespace escops::bar {

using lin::SparseMatrix;
using lin::SparseVec;

/// Finite graded algebra with unit and an augmentation to Q, presented by a
/// flat basis (global index order: ascending degree, then construction
/// order). Missing product entries are zero.
struct AugmentedAlgebra {
  std::string name;
  std::vector<int> degrees;
  std::vector<std::string> labels;
  std::map<std::pair<int, int>, SparseVec> products;
  SparseVec unit;
  std::vector<Rat> augmentation;

  int dim() const { return static_cast<int>(degrees.size()); }
  long long dim_in_degree(int d) const;
  SparseVec product(int i, int j) const;
  SparseVec multiply_vec(const SparseVec& u, const SparseVec& v) const;
  Rat augment(const SparseVec& v) const;

  /// Unit laws, graded products, multiplicative augmentation; associativity
  /// on all basis triples when the algebra is small enough to afford it.
  void validate() const;
  /// Degree-0 part is spanned by the unit and nothing sits below it; the
  /// basis is then augmentation-adapted (one unit index, ideal = the rest).
  bool connected() const;
};

AugmentedAlgebra rational_algebra();
/// Q[x]/(x²) with |x| = generator_degree >= 1.
AugmentedAlgebra square_zero_algebra(int generator_degree);
/// Q[x,y]/(x², xy, y²) with |x| = |y| = 1: the target of the non-free
/// diagonal embedding used as a deliberate fault.
AugmentedAlgebra fault_target_algebra();
AugmentedAlgebra from_arnold(const arnold::AlgebraContext& ctx);
/// Functions on Σ_l in degree 0; augmentation = evaluation at the identity.
AugmentedAlgebra from_perm(int l);

/// Algebra map presented by images of source basis vectors in target
/// coordinates.
using DenseMap = std::vector<SparseVec>;

void check_algebra_map(const AugmentedAlgebra& src, const AugmentedAlgebra& tgt,
                       const DenseMap& f);

/// e_n*(l) -> e_n*(k+l) along the injection i ↦ k+i (both presented by
/// from_arnold bases).
DenseMap lambda_inclusion_map(int n, int k, int l);
/// Unit to unit, augmentation ideal to zero (the restriction maps between
/// our families all act this way).
DenseMap ideal_killing_map(const AugmentedAlgebra& src, const AugmentedAlgebra& tgt);
/// Q[t]/(t²) -> Q[x,y]/(x²,xy,y²), t ↦ x + y: not free, so Tor_1 ≠ 0.
DenseMap diagonal_fault_map();

/// Two-sided bar complex B ⊗ (sĀ)^{⊗p} ⊗ C truncated at internal degree
/// `bound`. The truncation is exact: merges preserve internal degree, and
/// connectivity of A bounds the weight at each internal degree.
struct BarComplex {
  struct Summand {
    int b = 0;
    std::vector<int> a;  // A global indices, all in the augmentation ideal
    int c = 0;

    friend auto operator<=>(const Summand&, const Summand&) = default;
  };

  AugmentedAlgebra B, A, C;
  DenseMap f, g;
  int bound = 0;
  /// blocks[D][p] = basis of the (internal degree D, weight p) summand.
  std::vector<std::vector<std::vector<Summand>>> blocks;
  /// diff[D][p] : blocks[D][p] -> blocks[D][p-1] for p >= 1; diff[D][0] is
  /// the empty matrix.
  std::vector<std::vector<SparseMatrix>> diff;

  long long dim(int internal_degree, int weight) const;
};

BarComplex build_bar(const AugmentedAlgebra& B, const AugmentedAlgebra& A,
                     const AugmentedAlgebra& C, const DenseMap& f, const DenseMap& g,
                     int bound);

/// Homology dimensions of a bar complex: weight-0 row per internal degree,
/// and every nonzero higher-weight entry.
struct TorTable {
  int bound = 0;
  std::map<int, long long> tor0;                  // internal degree -> dim
  std::map<std::pair<int, int>, long long> higher;  // (degree, weight>=1) -> dim

  long long higher_total() const;
};

TorTable tor_dimensions(const BarComplex& bar);

/// Certificate that the two-sided bar homology of (e_n*(k+l), e_n*(l),
/// e_m*(l)) collapses onto the pushout: higher weights vanish up to the
/// bound and the weight-0 row equals the mixed-component dimensions.
struct CollapseReport {
  int m = 0, n = 0, k = 0, l = 0, bound = 0;
  std::string method;  // "contraction" or "coefficient-splitting"
  bool pass = false;
  std::vector<long long> expected;
  TorTable tor;
  std::string failure;
};

CollapseReport em_collapse_check(int m, int n, int k, int l, int bound);

}  // namespace escops::bar
