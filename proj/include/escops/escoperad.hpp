#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "escops/arnold.hpp"
#include "escops/perm.hpp"
#include "escops/rational.hpp"

namespace escops::esc {

enum class Color { free_output, mixed };

/// Component context of the two-colored cooperad: k free inputs (points
/// 1..k), l constrained inputs (points k+1..k+l). The mixed component is
/// e_n*(k+l) ⊗_{e_n*(l)} e_m*(l); the free component is e_n*(k).
struct EscContext {
  int m = 1;
  int n = 2;
  int k = 0;
  int l = 0;
  Color color = Color::mixed;

  void validate() const;
  friend auto operator<=>(const EscContext&, const EscContext&) = default;
};

/// Basis label of the constrained tensor factor: a word of e_m*(l) for
/// m >= 2, a permutation of Σ_l for m = 1.
using ConLabel = std::variant<arnold::Word, e1::Perm>;

ConLabel trivial_con(int m);
int con_degree(int m, const ConLabel& c);

/// Basis label (A, c): A a module monomial of e_n*(k+l) with first indices
/// in {1..k}, c a constrained basis label.
struct EscLabel {
  arnold::Word free_part;
  ConLabel con;

  friend auto operator<=>(const EscLabel&, const EscLabel&) = default;
};

int label_degree(const EscContext& ctx, const EscLabel& lbl);

struct EscElement {
  EscContext ctx;
  std::map<EscLabel, Rat> terms;

  bool is_zero() const { return terms.empty(); }
  bool is_homogeneous() const;
  int degree() const;
  EscElement& operator+=(const EscElement& o);
  EscElement& operator*=(const Rat& c);
  friend bool operator==(const EscElement& a, const EscElement& b) {
    return a.ctx == b.ctx && a.terms == b.terms;
  }
};

EscElement esc_zero(const EscContext& ctx);
EscElement esc_unit(const EscContext& ctx);
EscElement esc_monomial(const EscContext& ctx, const EscLabel& lbl, const Rat& c = 1);

/// Basis in canonical order: ascending total degree, then free part, then
/// constrained label.
std::vector<EscLabel> esc_basis(const EscContext& ctx);
/// Dimension per total degree, index = degree.
std::vector<long long> esc_hilbert(const EscContext& ctx);

/// Projects an ambient pair (element of e_n*(k+l), constrained element)
/// onto the pushout component: normal-form terms whose free factor leaves
/// the module basis are annihilated by restriction.
EscElement esc_from_parts(const EscContext& ctx, const arnold::ArnoldElement& ambient,
                          const arnold::ArnoldElement& con);
EscElement esc_from_parts(const EscContext& ctx, const arnold::ArnoldElement& ambient,
                          const e1::PermFunction& con);

EscElement esc_multiply(const EscElement& a, const EscElement& b);

/// Shapes of the slots of a two-colored cocomposition: free slot a receives
/// free_counts[a] free points; constrained slot b receives con_shapes[b] =
/// (free points, constrained points). Placement is consecutive: composite
/// free points run through the free slots then the constrained slots'
/// free shares; composite constrained points run through the constrained
/// slots in order.
struct ColoredBlocks {
  std::vector<int> free_counts;
  std::vector<std::pair<int, int>> con_shapes;

  int base_k() const { return static_cast<int>(free_counts.size()); }
  int base_l() const { return static_cast<int>(con_shapes.size()); }
  int composite_k() const;
  int composite_l() const;
};

struct EscCoLabel {
  EscLabel base;
  std::vector<arnold::Word> free_slots;
  std::vector<EscLabel> con_slots;

  friend auto operator<=>(const EscCoLabel&, const EscCoLabel&) = default;
};

struct EscCoElement {
  EscContext base_ctx;
  std::vector<arnold::AlgebraContext> free_ctxs;
  std::vector<EscContext> con_ctxs;
  std::map<EscCoLabel, Rat> terms;

  bool is_zero() const { return terms.empty(); }
};

/// Two-colored cocomposition into ESC(k,l) ⊗ ⊗_a e_n*(k_a) ⊗ ⊗_b ESC(k'_b, l'_b).
EscCoElement esc_cocompose(const EscElement& x, const ColoredBlocks& blocks);

/// Componentwise product of cocomposition values, with the Koszul sign of
/// interchanging tensor factors.
EscCoElement co_multiply(const EscCoElement& a, const EscCoElement& b);

/// Color-preserving injection: free points through `free`, constrained
/// points through `con`.
struct ColoredInjection {
  arnold::Injection free;
  arnold::Injection con;
};

EscElement esc_colambda(const EscElement& x, const ColoredInjection& j);

/// Components of the trivial and painted two-colored extensions of a
/// one-colored family P = e_dim* (dim = 1 means the permutation-function
/// family). Zero components are flagged rather than materialized.
struct Component {
  bool is_zero = true;
  int algebra_dim = 0;  // e_{algebra_dim}*
  int arity = 0;
};

Component triv_component(int family_dim, int k, int l, Color color);
Component paint_component(int family_dim, int k, int l, Color color);
std::vector<long long> component_hilbert(const Component& c);

std::string con_to_string(const ConLabel& c);
std::string label_to_string(const EscLabel& lbl);
std::string to_string(const EscElement& x);

}  // namespace escops::esc
