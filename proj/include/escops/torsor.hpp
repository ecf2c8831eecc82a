#pragma once

#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "escops/escoperad.hpp"
#include "escops/graded.hpp"
#include "escops/homology.hpp"
#include "escops/rational.hpp"

namespace escops::torsor {

using lin::SparseMatrix;
using lin::SparseVec;

/// Address of one space of operations: output color plus how many inputs of
/// each color it takes.
struct CellKey {
  esc::Color output = esc::Color::mixed;
  int free_inputs = 0;
  int con_inputs = 0;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

/// Constituent shorthand (Q(r) = free one-colored, M(r) = mixed output on
/// free inputs, P(l) = mixed output on constrained inputs) when the key fits
/// one, raw tuple form otherwise.
std::string key_to_string(const CellKey& key);

CellKey q_key(int r);
CellKey m_key(int r);
CellKey p_key(int l);

/// One cell: labeled flat basis with degrees and a degree +1 differential on
/// flat coordinates (entries only between degrees d and d+1, d² = 0).
struct Cell {
  std::vector<std::string> labels;
  std::vector<int> degrees;
  SparseMatrix differential;  // dim × dim over flat indices

  int dim() const { return static_cast<int>(labels.size()); }
  long long dim_in_degree(int d) const;
  void validate(const std::string& name) const;
  lin::GradedSpace space() const;
  lin::ChainComplex complex() const;
  /// Position of flat index i within its degree (the GradedSpace column).
  int position(int i) const;
};

/// One composition table γ : outer ⊗ inner → result, stored as structure
/// constants on flat basis indices.
struct Composition {
  CellKey outer, inner, result;
  std::vector<std::tuple<int, int, int, Rat>> entries;
};

/// Truncated dg two-colored operad data: cells up to the truncation arity,
/// unit coordinates for the cells that have one, and at least the mixed
/// compositions γ_r : M(1) ⊗ Q(r) → M(r).
struct DgColoredOperadData {
  int truncation = 0;
  std::map<CellKey, Cell> cells;
  std::map<CellKey, SparseVec> units;
  std::vector<Composition> compositions;

  const Cell& cell(const CellKey& key) const;
  const Composition* composition(const CellKey& outer, const CellKey& inner,
                                 const CellKey& result) const;
  /// Cells are well formed, compositions are degree-additive chain maps with
  /// in-range indices, provided units satisfy the unit axiom, no 0-input
  /// cells are present.
  void validate() const;
};

/// The three constituent families, arity -> cell, each for 1..truncation.
struct Constituents {
  std::map<int, Cell> p, m, q;
};

/// P := purely-constrained part, M := mixed-output part on free inputs,
/// Q := free one-colored part. Missing cells are reported by name; an empty
/// M(1) cell is an error.
Constituents extract_constituents(const DgColoredOperadData& s);

struct ArityVerdict {
  int arity = 0;
  bool pass = false;
  std::map<int, int> source_h;  // homology dims of Q(r), nonzero degrees
  std::map<int, int> target_h;  // homology dims of M(r)
  std::string failure;
};

struct TorsorReport {
  bool pass = false;
  int truncation = 0;
  bool unary_condition = false;  // H(M(1)) one-dimensional
  std::string generator;         // chosen cocycle in M(1) coordinates
  std::vector<ArityVerdict> arities;
  /// Whether a second representative existed and was cross-checked.
  bool independence_checked = false;
  std::string failure;  // first witness when pass is false
};

/// Swiss-Cheese-type check: H(M(1)) is one line, and composing its chosen
/// generator turns Q(r) -> M(r) into a quasi-isomorphism for r ≤ truncation.
/// The verdict is re-asserted under rescaling the generator (and under a
/// shifted representative when the differential offers one).
TorsorReport check_swiss_cheese_type(const DgColoredOperadData& s, int truncation);

/// Zero-differential data from the cohomology components; compositions are
/// transposes of the cocomposition structure maps.
DgColoredOperadData from_cohomology(int m, int n, int truncation);

/// Two-colored commutative control: every cell one-dimensional in degree 0.
DgColoredOperadData commutative_two_colored(int truncation);

/// Deliberate fault: the purely-constrained cells fed in place of the mixed
/// ones, with the only degree-additive compositions they admit. Fails the
/// quasi-isomorphism condition at arity 2 for every n > m.
DgColoredOperadData role_swapped_fault(int m, int n, int truncation);

/// JSON wire format, schema "dg-colored-operad/1" (see schemas/). Rationals
/// travel as fraction strings. from_json throws std::invalid_argument with
/// the offending location on any schema violation.
std::string to_json(const DgColoredOperadData& s);
DgColoredOperadData from_json(const std::string& text);

std::string report_to_json(const TorsorReport& r);
std::string report_to_text(const TorsorReport& r);

}  // namespace escops::torsor
