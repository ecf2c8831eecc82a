#pragma once

#include <map>
#include <string>
#include <vector>

#include "escops/arnold.hpp"
#include "escops/rational.hpp"

namespace escops::e1 {

/// One-line word: perm[k] = label of the (k+1)-th interval from the left.
using Perm = std::vector<int>;

std::vector<Perm> all_perms(int l);
bool is_perm(const Perm& p);

/// Degree-0 function on the symmetric group Σ_l — the arity-l component of
/// the one-dimensional-disks cohomology. δ_σ basis; product is pointwise.
struct PermFunction {
  int l = 0;
  std::map<Perm, Rat> values;

  bool is_zero() const { return values.empty(); }
  Rat at(const Perm& p) const {
    auto it = values.find(p);
    return it == values.end() ? Rat(0) : it->second;
  }
  PermFunction& operator+=(const PermFunction& o);
  PermFunction& operator*=(const Rat& c);
  friend bool operator==(const PermFunction& a, const PermFunction& b) {
    return a.l == b.l && a.values == b.values;
  }
};

PermFunction zero_function(int l);
/// The product unit: the constant function 1 (all l! deltas).
PermFunction unit_function(int l);
PermFunction delta(int l, const Perm& p, const Rat& c = 1);

PermFunction multiply(const PermFunction& a, const PermFunction& b);

/// Operadic substitution on interval orders: splice each slot's word into
/// the base word, labels in slot b shifted by r_1+..+r_{b-1}.
Perm block_compose(const Perm& base, const std::vector<Perm>& slots);

/// Induced order of the points j(1)..j(r) inside sigma, renamed back through j.
Perm forget_pattern(const Perm& sigma, const arnold::Injection& j);

/// Pullback along forget_pattern: (relabel f)(σ) = f(pattern of σ).
PermFunction relabel(const PermFunction& x, const arnold::Injection& j);

struct PermCoElement {
  int base_arity = 0;
  std::vector<int> slot_arities;
  /// key[0] = base word, key[1+b] = slot b word
  std::map<std::vector<Perm>, Rat> terms;
};

/// Pullback along block_compose for consecutive blocks: δ_σ pulls back to
/// its unique factorization when every block's labels sit contiguously in σ,
/// and to 0 otherwise.
PermCoElement cocompose(const PermFunction& x, const std::vector<int>& block_sizes);

/// Unit ↦ constant 1, every positive-degree element ↦ 0 (the m = 1 endpoint
/// of the restriction maps).
PermFunction restrict_to_functions(const arnold::ArnoldElement& x);

/// Text form "p[2,1] + 3*p[1,2]"; round-trips with parse_function.
std::string perm_to_string(const Perm& p);
std::string to_string(const PermFunction& x);
PermFunction parse_function(int l, const std::string& text);

}  // namespace escops::e1
