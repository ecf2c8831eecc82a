#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "escops/rational.hpp"

namespace escops::arnold {

/// Cohomology algebra of the little n-disks operad in arity r, presented by
/// generators w[i,j] (1 <= i != j <= r) of degree n-1 subject to symmetry
/// w[i,j] = (-1)^n w[j,i], squares w[i,j]^2 = 0, and the three-term Arnold
/// relations. n = 1 lives in perm.hpp; this context requires n >= 2.
struct AlgebraContext {
  int n = 2;
  int r = 0;

  friend auto operator<=>(const AlgebraContext&, const AlgebraContext&) = default;
};

using Factor = std::pair<int, int>;
/// Product of oriented generators, kept sorted lexicographically with all
/// factors distinct. Admissible (basis) words additionally have pairwise
/// distinct first indices; see is_admissible.
using Word = std::vector<Factor>;
using AdmissibleMonomial = Word;

bool is_admissible(const Word& w);
/// The set I of an admissible word (first indices, ascending).
std::vector<int> monomial_I(const Word& w);
/// The values f(i) of an admissible word, aligned with monomial_I.
std::vector<int> monomial_f(const Word& w);

int word_degree(const AlgebraContext& ctx, const Word& w);

/// Element in normal form: rational combination of admissible monomials.
struct ArnoldElement {
  AlgebraContext ctx;
  std::map<Word, Rat> terms;

  bool is_zero() const { return terms.empty(); }
  bool is_homogeneous() const;
  /// Degree of a homogeneous element; throws on mixed or zero input.
  int degree() const;
  Rat unit_coefficient() const {
    auto it = terms.find(Word{});
    return it == terms.end() ? Rat(0) : it->second;
  }

  ArnoldElement& operator+=(const ArnoldElement& o);
  ArnoldElement& operator*=(const Rat& c);
  friend bool operator==(const ArnoldElement& a, const ArnoldElement& b) {
    return a.ctx == b.ctx && a.terms == b.terms;
  }
};

ArnoldElement zero(const AlgebraContext& ctx);
ArnoldElement unit(const AlgebraContext& ctx);
ArnoldElement monomial(const AlgebraContext& ctx, const Word& w, const Rat& c = 1);

/// Rewrites an arbitrary generator word to normal form: orient each factor
/// to i < j (sign (-1)^n), sort with Koszul signs (generators have degree
/// n-1), kill squares, then eliminate repeated first indices through the
/// Arnold relation, always at the largest repeated first index. Idempotent
/// on admissible input.
ArnoldElement normal_form(const AlgebraContext& ctx, const std::vector<Factor>& word);

ArnoldElement multiply(const ArnoldElement& a, const ArnoldElement& b);

/// Admissible monomials, optionally restricted to one cohomological degree;
/// lexicographic within a degree, degrees ascending.
std::vector<Word> basis(const AlgebraContext& ctx, std::optional<int> degree = {});
/// Coefficient of t^d = dimension in degree d; index = degree. Total is r!.
std::vector<long long> hilbert_polynomial(const AlgebraContext& ctx);

/// Injective map {1..arity} -> {1..target_arity} (Lambda costructure index).
struct Injection {
  int target_arity = 0;
  std::vector<int> images;  // images[i-1] = j(i), 1-based

  int arity() const { return static_cast<int>(images.size()); }
  void validate() const;
  /// Composite j2 ∘ j1.
  static Injection compose(const Injection& j2, const Injection& j1);
};

ArnoldElement relabel(const ArnoldElement& x, const Injection& j);

/// Cocomposition target: e_n(s) ⊗ e_n(r_1) ⊗ ... ⊗ e_n(r_s).
struct CoLabel {
  Word base;
  std::vector<Word> slots;

  friend auto operator<=>(const CoLabel&, const CoLabel&) = default;
};

struct CoElement {
  AlgebraContext base_ctx;
  std::vector<AlgebraContext> slot_ctxs;
  std::map<CoLabel, Rat> terms;
};

/// Cocomposition for consecutive blocks of sizes block_sizes (all >= 1,
/// summing to r). A generator w[u,v] maps to the local generator of its
/// block when u, v share a block, and to the base generator between the two
/// block indices otherwise; extended multiplicatively with Koszul signs.
CoElement cocompose(const ArnoldElement& x, const std::vector<int>& block_sizes);

/// Internal general form: slot_of[p-1] in {0..s-1} assigns point p to a
/// block; local labels are induced by the ambient order within each block.
/// Arbitrary partitions of the public interface factor through relabel.
CoElement cocompose_assigned(const ArnoldElement& x, int num_slots,
                             const std::vector<int>& slot_of);

/// Componentwise product on the cocomposition target, with the Koszul sign
/// of interchanging tensor factors.
CoElement co_multiply(const CoElement& a, const CoElement& b);

/// Restriction e_n(r) -> e_m(r) for n > m >= 2: kills every generator, so
/// only the unit coefficient survives. The m = 1 counterpart lives in
/// perm.hpp (restrict_to_functions).
ArnoldElement restrict_element(const ArnoldElement& x, int m);

/// Module basis of e_n(r+k) over the subalgebra e_n(r) spanned by w[i,j]
/// with i, j >= k+1: admissible monomials with I ⊆ {1..k}. Cardinality
/// (r+k)!/r!.
std::vector<Word> module_basis(int n, int r, int k);

/// Writes x ∈ e_n(r+k) as Σ basis_monomial · coefficient with coefficients
/// in e_n(r) (local labels 1..r on the last r points).
std::map<Word, ArnoldElement> decompose(const ArnoldElement& x, int k);
ArnoldElement recompose(const std::map<Word, ArnoldElement>& parts, int n, int r,
                        int k);

/// Text form "w[1,2]*w[2,3] - 2*w[1,3]"; grammar documented in README.
std::string to_string(const ArnoldElement& x);
std::string word_to_string(const Word& w);
/// Parses the output of to_string (and whitespace variations) back into
/// normal form.
ArnoldElement parse_element(const AlgebraContext& ctx, const std::string& text);

}  // namespace escops::arnold
