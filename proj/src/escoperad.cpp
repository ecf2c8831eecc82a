#include "escops/escoperad.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace escops::esc {

namespace {

using arnold::AlgebraContext;
using arnold::ArnoldElement;
using arnold::Word;
using e1::Perm;

AlgebraContext ambient_ctx(const EscContext& c) {
  return AlgebraContext{c.n, c.k + c.l};
}

AlgebraContext con_ctx(const EscContext& c) { return AlgebraContext{c.m, c.l}; }

void add_term(std::map<EscLabel, Rat>& acc, EscLabel lbl, const Rat& c) {
  if (c == 0) return;
  auto it = acc.find(lbl);
  if (it == acc.end()) {
    acc.emplace(std::move(lbl), c);
  } else {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

/// A normal-form word survives the projection onto the pushout component iff
/// every factor starts at a free point; otherwise it carries a positive-degree
/// subalgebra coefficient, which restriction kills.
bool in_module(const Word& w, int k) {
  for (auto& f : w)
    if (f.first > k) return false;
  return true;
}

void check_label(const EscContext& ctx, const EscLabel& lbl) {
  if (!arnold::is_admissible(lbl.free_part))
    throw std::invalid_argument("label: free part is not an admissible monomial");
  const int ambient = ctx.k + ctx.l;
  const int first_bound = ctx.color == Color::mixed ? ctx.k : ambient;
  for (auto& f : lbl.free_part) {
    if (f.second > ambient || f.first < 1)
      throw std::invalid_argument("label: generator index out of range");
    if (f.first > first_bound)
      throw std::invalid_argument("label: free part leaves the module basis");
  }
  if (ctx.m == 1) {
    if (!std::holds_alternative<Perm>(lbl.con))
      throw std::invalid_argument("label: m = 1 constrained part must be a permutation");
    const Perm& p = std::get<Perm>(lbl.con);
    if (static_cast<int>(p.size()) != ctx.l || !e1::is_perm(p))
      throw std::invalid_argument("label: constrained part is not a permutation of the "
                                  "constrained points");
  } else {
    if (!std::holds_alternative<Word>(lbl.con))
      throw std::invalid_argument("label: m >= 2 constrained part must be a word");
    const Word& w = std::get<Word>(lbl.con);
    if (!arnold::is_admissible(w))
      throw std::invalid_argument("label: constrained part is not admissible");
    for (auto& f : w)
      if (f.first < 1 || f.second > ctx.l)
        throw std::invalid_argument("label: constrained generator index out of range");
  }
}

/// Dual of block composition of interval orders, allowing empty blocks: the
/// value on (τ, ρ_1..ρ_l) is x at their composite, i.e. δ_σ pulls back to the
/// sum over all factorizations of σ.
e1::PermCoElement perm_cocompose_any(const e1::PermFunction& x,
                                     const std::vector<int>& sizes) {
  e1::PermCoElement out;
  out.base_arity = static_cast<int>(sizes.size());
  out.slot_arities = sizes;
  std::vector<std::vector<Perm>> choices;
  choices.reserve(sizes.size());
  for (int s : sizes) {
    if (s < 0) throw std::invalid_argument("cocompose: negative block size");
    choices.push_back(e1::all_perms(s));
  }
  for (auto& tau : e1::all_perms(out.base_arity)) {
    std::vector<std::size_t> idx(sizes.size(), 0);
    while (true) {
      std::vector<Perm> key;
      key.reserve(sizes.size() + 1);
      key.push_back(tau);
      std::vector<Perm> slots;
      slots.reserve(sizes.size());
      for (std::size_t b = 0; b < sizes.size(); ++b) {
        key.push_back(choices[b][idx[b]]);
        slots.push_back(choices[b][idx[b]]);
      }
      const Rat v = x.at(e1::block_compose(tau, slots));
      if (v != 0) out.terms.emplace(std::move(key), v);
      std::size_t carry = 0;
      while (carry < idx.size() && ++idx[carry] == choices[carry].size())
        idx[carry++] = 0;
      if (carry == idx.size()) break;
    }
    if (sizes.empty()) break;  // single empty tuple already visited
  }
  return out;
}

}  // namespace

void EscContext::validate() const {
  if (m < 1) throw std::invalid_argument("context: m >= 1 required");
  if (n <= m) throw std::invalid_argument("context: n > m required");
  if (k < 0 || l < 0) throw std::invalid_argument("context: negative arity");
  if (color == Color::free_output && l != 0)
    throw std::invalid_argument("context: free-output component takes no constrained "
                                "inputs");
}

ConLabel trivial_con(int m) {
  if (m == 1) return ConLabel{Perm{}};
  return ConLabel{Word{}};
}

int con_degree(int m, const ConLabel& c) {
  if (std::holds_alternative<Perm>(c)) return 0;
  return static_cast<int>(std::get<Word>(c).size()) * (m - 1);
}

int label_degree(const EscContext& ctx, const EscLabel& lbl) {
  return static_cast<int>(lbl.free_part.size()) * (ctx.n - 1) +
         con_degree(ctx.m, lbl.con);
}

bool EscElement::is_homogeneous() const {
  if (terms.empty()) return true;
  const int d = label_degree(ctx, terms.begin()->first);
  for (auto& [lbl, c] : terms)
    if (label_degree(ctx, lbl) != d) return false;
  return true;
}

int EscElement::degree() const {
  if (terms.empty()) throw std::logic_error("degree of zero element");
  const int d = label_degree(ctx, terms.begin()->first);
  for (auto& [lbl, c] : terms)
    if (label_degree(ctx, lbl) != d)
      throw std::logic_error("degree of an inhomogeneous element");
  return d;
}

EscElement& EscElement::operator+=(const EscElement& o) {
  if (ctx != o.ctx) throw std::invalid_argument("context mismatch in +");
  for (auto& [lbl, c] : o.terms) add_term(terms, lbl, c);
  return *this;
}

EscElement& EscElement::operator*=(const Rat& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [lbl, v] : terms) v *= c;
  return *this;
}

EscElement esc_zero(const EscContext& ctx) {
  ctx.validate();
  return EscElement{ctx, {}};
}

EscElement esc_unit(const EscContext& ctx) {
  EscElement out = esc_zero(ctx);
  if (ctx.m == 1) {
    for (auto& p : e1::all_perms(ctx.l)) out.terms.emplace(EscLabel{{}, p}, Rat(1));
  } else {
    out.terms.emplace(EscLabel{{}, Word{}}, Rat(1));
  }
  return out;
}

EscElement esc_monomial(const EscContext& ctx, const EscLabel& lbl, const Rat& c) {
  EscElement out = esc_zero(ctx);
  check_label(ctx, lbl);
  if (c != 0) out.terms.emplace(lbl, c);
  return out;
}

std::vector<EscLabel> esc_basis(const EscContext& ctx) {
  ctx.validate();
  std::vector<EscLabel> out;
  if (ctx.color == Color::free_output) {
    for (auto& w : arnold::basis(AlgebraContext{ctx.n, ctx.k}))
      out.push_back(EscLabel{w, trivial_con(ctx.m)});
    return out;
  }
  std::vector<ConLabel> cons;
  if (ctx.m == 1) {
    for (auto& p : e1::all_perms(ctx.l)) cons.push_back(ConLabel{p});
  } else {
    for (auto& w : arnold::basis(con_ctx(ctx))) cons.push_back(ConLabel{w});
  }
  for (auto& A : arnold::module_basis(ctx.n, ctx.l, ctx.k))
    for (auto& c : cons) out.push_back(EscLabel{A, c});
  std::stable_sort(out.begin(), out.end(), [&](const EscLabel& a, const EscLabel& b) {
    return label_degree(ctx, a) < label_degree(ctx, b);
  });
  return out;
}

std::vector<long long> esc_hilbert(const EscContext& ctx) {
  std::vector<long long> out;
  for (auto& lbl : esc_basis(ctx)) {
    const std::size_t d = static_cast<std::size_t>(label_degree(ctx, lbl));
    if (out.size() <= d) out.resize(d + 1, 0);
    ++out[d];
  }
  return out;
}

EscElement esc_from_parts(const EscContext& ctx, const ArnoldElement& ambient,
                          const ArnoldElement& con) {
  ctx.validate();
  if (ctx.m == 1)
    throw std::invalid_argument("from_parts: m = 1 takes a permutation function");
  if (ambient.ctx != ambient_ctx(ctx))
    throw std::invalid_argument("from_parts: ambient context mismatch");
  if (con.ctx != con_ctx(ctx))
    throw std::invalid_argument("from_parts: constrained context mismatch");
  EscElement out = esc_zero(ctx);
  const int bound = ctx.color == Color::mixed ? ctx.k : ctx.k + ctx.l;
  for (auto& [w, cw] : ambient.terms) {
    if (!in_module(w, bound)) continue;
    for (auto& [cv, cc] : con.terms) add_term(out.terms, EscLabel{w, cv}, cw * cc);
  }
  return out;
}

EscElement esc_from_parts(const EscContext& ctx, const ArnoldElement& ambient,
                          const e1::PermFunction& con) {
  ctx.validate();
  if (ctx.m != 1)
    throw std::invalid_argument("from_parts: m >= 2 takes a word-basis element");
  if (ambient.ctx != ambient_ctx(ctx))
    throw std::invalid_argument("from_parts: ambient context mismatch");
  if (con.l != ctx.l)
    throw std::invalid_argument("from_parts: constrained context mismatch");
  EscElement out = esc_zero(ctx);
  const int bound = ctx.color == Color::mixed ? ctx.k : ctx.k + ctx.l;
  for (auto& [w, cw] : ambient.terms) {
    if (!in_module(w, bound)) continue;
    for (auto& [p, cc] : con.values) add_term(out.terms, EscLabel{w, p}, cw * cc);
  }
  return out;
}

EscElement esc_multiply(const EscElement& a, const EscElement& b) {
  if (a.ctx != b.ctx) throw std::invalid_argument("context mismatch in multiply");
  a.ctx.validate();
  const AlgebraContext amb = ambient_ctx(a.ctx);
  const int bound = a.ctx.color == Color::mixed ? a.ctx.k : a.ctx.k + a.ctx.l;
  EscElement out = esc_zero(a.ctx);
  for (auto& [la, ca] : a.terms)
    for (auto& [lb, cb] : b.terms) {
      // Koszul sign of moving the left constrained factor past the right
      // free factor
      const long long cross =
          static_cast<long long>(con_degree(a.ctx.m, la.con)) *
          (static_cast<long long>(lb.free_part.size()) * (a.ctx.n - 1));
      const int sign = cross % 2 != 0 ? -1 : 1;
      Word concat = la.free_part;
      concat.insert(concat.end(), lb.free_part.begin(), lb.free_part.end());
      const ArnoldElement freep = arnold::normal_form(amb, concat);
      if (freep.is_zero()) continue;
      if (a.ctx.m == 1) {
        if (std::get<Perm>(la.con) != std::get<Perm>(lb.con)) continue;
        for (auto& [w, cw] : freep.terms) {
          if (!in_module(w, bound)) continue;
          add_term(out.terms, EscLabel{w, la.con}, ca * cb * cw * sign);
        }
      } else {
        Word cc = std::get<Word>(la.con);
        const Word& cw2 = std::get<Word>(lb.con);
        cc.insert(cc.end(), cw2.begin(), cw2.end());
        const ArnoldElement conp = arnold::normal_form(con_ctx(a.ctx), cc);
        if (conp.is_zero()) continue;
        for (auto& [w, cw] : freep.terms) {
          if (!in_module(w, bound)) continue;
          for (auto& [cv, cvc] : conp.terms)
            add_term(out.terms, EscLabel{w, cv}, ca * cb * cw * cvc * sign);
        }
      }
    }
  return out;
}

int ColoredBlocks::composite_k() const {
  int total = 0;
  for (int c : free_counts) total += c;
  for (auto& [ck, cl] : con_shapes) total += ck;
  return total;
}

int ColoredBlocks::composite_l() const {
  int total = 0;
  for (auto& [ck, cl] : con_shapes) total += cl;
  return total;
}

EscCoElement esc_cocompose(const EscElement& x, const ColoredBlocks& blocks) {
  x.ctx.validate();
  if (x.ctx.color != Color::mixed)
    throw std::invalid_argument("cocompose: mixed-output element required");
  for (int c : blocks.free_counts)
    if (c < 0) throw std::invalid_argument("cocompose: negative block size");
  for (auto& [ck, cl] : blocks.con_shapes)
    if (ck < 0 || cl < 0) throw std::invalid_argument("cocompose: negative block size");
  if (blocks.composite_k() != x.ctx.k || blocks.composite_l() != x.ctx.l)
    throw std::invalid_argument("cocompose: blocks do not partition the inputs");

  const int k = blocks.base_k();
  const int l = blocks.base_l();
  const int K = x.ctx.k;
  const int L = x.ctx.l;
  const int m = x.ctx.m;
  const int n = x.ctx.n;

  EscCoElement out;
  out.base_ctx = EscContext{m, n, k, l, Color::mixed};
  out.free_ctxs.reserve(static_cast<std::size_t>(k));
  for (int c : blocks.free_counts) out.free_ctxs.push_back(AlgebraContext{n, c});
  out.con_ctxs.reserve(static_cast<std::size_t>(l));
  for (auto& [ck, cl] : blocks.con_shapes)
    out.con_ctxs.push_back(EscContext{m, n, ck, cl, Color::mixed});

  // Consecutive placement: composite free points run through the free slots,
  // then the constrained slots' free shares; composite constrained points run
  // through the constrained slots. Ambient slot order is free slots first.
  std::vector<int> amb_slot;
  amb_slot.reserve(static_cast<std::size_t>(K + L));
  for (int a = 0; a < k; ++a)
    for (int i = 0; i < blocks.free_counts[static_cast<std::size_t>(a)]; ++i)
      amb_slot.push_back(a);
  for (int b = 0; b < l; ++b)
    for (int i = 0; i < blocks.con_shapes[static_cast<std::size_t>(b)].first; ++i)
      amb_slot.push_back(k + b);
  for (int b = 0; b < l; ++b)
    for (int i = 0; i < blocks.con_shapes[static_cast<std::size_t>(b)].second; ++i)
      amb_slot.push_back(k + b);

  std::vector<int> con_sizes;
  con_sizes.reserve(static_cast<std::size_t>(l));
  for (auto& [ck, cl] : blocks.con_shapes) con_sizes.push_back(cl);
  std::vector<int> con_slot_of;
  con_slot_of.reserve(static_cast<std::size_t>(L));
  for (int b = 0; b < l; ++b)
    for (int i = 0; i < con_sizes[static_cast<std::size_t>(b)]; ++i)
      con_slot_of.push_back(b);

  auto accumulate = [&](EscCoLabel lbl, const Rat& c) {
    if (c == 0) return;
    auto it = out.terms.find(lbl);
    if (it == out.terms.end()) {
      out.terms.emplace(std::move(lbl), c);
    } else {
      it->second += c;
      if (it->second == 0) out.terms.erase(it);
    }
  };

  for (auto& [xl, xc] : x.terms) {
    const arnold::CoElement fc = arnold::cocompose_assigned(
        arnold::monomial(AlgebraContext{n, K + L}, xl.free_part), k + l, amb_slot);

    // constrained side: base word ⊗ one word per constrained slot
    struct ConTerm {
      ConLabel base;
      std::vector<ConLabel> slots;
      Rat coeff;
    };
    std::vector<ConTerm> con_terms;
    if (m == 1) {
      const e1::PermCoElement cc =
          perm_cocompose_any(e1::delta(L, std::get<Perm>(xl.con)), con_sizes);
      for (auto& [key, v] : cc.terms) {
        ConTerm t{ConLabel{key[0]}, {}, v};
        for (int b = 0; b < l; ++b) t.slots.push_back(ConLabel{key[static_cast<std::size_t>(b) + 1]});
        con_terms.push_back(std::move(t));
      }
    } else {
      const arnold::CoElement cc = arnold::cocompose_assigned(
          arnold::monomial(AlgebraContext{m, L}, std::get<Word>(xl.con)), l,
          con_slot_of);
      for (auto& [key, v] : cc.terms) {
        ConTerm t{ConLabel{key.base}, {}, v};
        for (int b = 0; b < l; ++b) t.slots.push_back(ConLabel{key.slots[static_cast<std::size_t>(b)]});
        con_terms.push_back(std::move(t));
      }
    }

    for (auto& [fl, fco] : fc.terms) {
      // projection onto the pushout components: base and constrained-slot
      // free words must stay inside their module bases
      if (!in_module(fl.base, k)) continue;
      bool ok = true;
      for (int b = 0; b < l && ok; ++b)
        if (!in_module(fl.slots[static_cast<std::size_t>(k + b)],
                       blocks.con_shapes[static_cast<std::size_t>(b)].first))
          ok = false;
      if (!ok) continue;

      // free-part degrees to the right of each constrained component, for the
      // Koszul cost of threading the constrained factors into place
      std::vector<long long> csuffix(static_cast<std::size_t>(l) + 1, 0);
      for (int b = l; b-- > 0;)
        csuffix[static_cast<std::size_t>(b)] =
            csuffix[static_cast<std::size_t>(b) + 1] +
            static_cast<long long>(fl.slots[static_cast<std::size_t>(k + b)].size()) *
                (n - 1);
      long long after_base = csuffix[0];
      for (int a = 0; a < k; ++a)
        after_base +=
            static_cast<long long>(fl.slots[static_cast<std::size_t>(a)].size()) *
            (n - 1);

      for (auto& ct : con_terms) {
        long long cross = static_cast<long long>(con_degree(m, ct.base)) * after_base;
        for (int b = 0; b < l; ++b)
          cross += static_cast<long long>(con_degree(m, ct.slots[static_cast<std::size_t>(b)])) *
                   csuffix[static_cast<std::size_t>(b) + 1];
        const int sign = cross % 2 != 0 ? -1 : 1;

        EscCoLabel lbl;
        lbl.base = EscLabel{fl.base, ct.base};
        lbl.free_slots.assign(fl.slots.begin(), fl.slots.begin() + k);
        lbl.con_slots.reserve(static_cast<std::size_t>(l));
        for (int b = 0; b < l; ++b)
          lbl.con_slots.push_back(
              EscLabel{fl.slots[static_cast<std::size_t>(k + b)], ct.slots[static_cast<std::size_t>(b)]});
        accumulate(std::move(lbl), xc * fco * ct.coeff * sign);
      }
    }
  }
  return out;
}

EscCoElement co_multiply(const EscCoElement& a, const EscCoElement& b) {
  if (a.base_ctx != b.base_ctx || a.free_ctxs != b.free_ctxs ||
      a.con_ctxs != b.con_ctxs)
    throw std::invalid_argument("co_multiply: component shapes differ");
  const std::size_t k = a.free_ctxs.size();
  const std::size_t l = a.con_ctxs.size();
  const std::size_t ncomp = 1 + k + l;

  auto comp_degree = [&](const EscCoLabel& lbl, std::size_t t) -> long long {
    if (t == 0) return label_degree(a.base_ctx, lbl.base);
    if (t <= k)
      return static_cast<long long>(lbl.free_slots[t - 1].size()) *
             (a.free_ctxs[t - 1].n - 1);
    return label_degree(a.con_ctxs[t - 1 - k], lbl.con_slots[t - 1 - k]);
  };

  EscCoElement out;
  out.base_ctx = a.base_ctx;
  out.free_ctxs = a.free_ctxs;
  out.con_ctxs = a.con_ctxs;
  for (auto& [la, ca] : a.terms)
    for (auto& [lb, cb] : b.terms) {
      std::vector<long long> suffix(ncomp + 1, 0);
      for (std::size_t t = ncomp; t-- > 0;)
        suffix[t] = suffix[t + 1] + comp_degree(la, t);
      long long crossings = 0;
      for (std::size_t t = 0; t < ncomp; ++t)
        crossings += comp_degree(lb, t) * suffix[t + 1];
      const int sign = crossings % 2 != 0 ? -1 : 1;

      const EscElement base_prod =
          esc_multiply(esc_monomial(a.base_ctx, la.base), esc_monomial(a.base_ctx, lb.base));
      if (base_prod.is_zero()) continue;
      std::vector<ArnoldElement> free_prod;
      free_prod.reserve(k);
      bool dead = false;
      for (std::size_t t = 0; t < k && !dead; ++t) {
        Word concat = la.free_slots[t];
        concat.insert(concat.end(), lb.free_slots[t].begin(), lb.free_slots[t].end());
        free_prod.push_back(arnold::normal_form(a.free_ctxs[t], concat));
        if (free_prod.back().is_zero()) dead = true;
      }
      if (dead) continue;
      std::vector<EscElement> con_prod;
      con_prod.reserve(l);
      for (std::size_t t = 0; t < l && !dead; ++t) {
        con_prod.push_back(esc_multiply(esc_monomial(a.con_ctxs[t], la.con_slots[t]),
                                        esc_monomial(a.con_ctxs[t], lb.con_slots[t])));
        if (con_prod.back().is_zero()) dead = true;
      }
      if (dead) continue;

      std::vector<std::pair<EscCoLabel, Rat>> partial{
          {EscCoLabel{EscLabel{}, std::vector<Word>(k), std::vector<EscLabel>(l)},
           ca * cb * sign}};
      auto expand = [&](auto assign, const auto& element_terms) {
        std::vector<std::pair<EscCoLabel, Rat>> next;
        for (auto& [lbl, coeff] : partial)
          for (auto& [tl, tc] : element_terms) {
            EscCoLabel l2 = lbl;
            assign(l2, tl);
            next.emplace_back(std::move(l2), coeff * tc);
          }
        partial = std::move(next);
      };
      expand([&](EscCoLabel& l2, const EscLabel& tl) { l2.base = tl; },
             base_prod.terms);
      for (std::size_t t = 0; t < k; ++t)
        expand([&, t](EscCoLabel& l2, const Word& tl) { l2.free_slots[t] = tl; },
               free_prod[t].terms);
      for (std::size_t t = 0; t < l; ++t)
        expand([&, t](EscCoLabel& l2, const EscLabel& tl) { l2.con_slots[t] = tl; },
               con_prod[t].terms);

      for (auto& [lbl, coeff] : partial) {
        auto it = out.terms.find(lbl);
        if (it == out.terms.end()) {
          if (coeff != 0) out.terms.emplace(std::move(lbl), coeff);
        } else {
          it->second += coeff;
          if (it->second == 0) out.terms.erase(it);
        }
      }
    }
  return out;
}

EscElement esc_colambda(const EscElement& x, const ColoredInjection& j) {
  x.ctx.validate();
  j.free.validate();
  j.con.validate();
  if (j.free.arity() != x.ctx.k || j.con.arity() != x.ctx.l)
    throw std::invalid_argument("colambda: injection arities do not match the context");
  const EscContext tgt{x.ctx.m, x.ctx.n, j.free.target_arity, j.con.target_arity,
                       x.ctx.color};
  tgt.validate();

  arnold::Injection amb{tgt.k + tgt.l, {}};
  amb.images.reserve(static_cast<std::size_t>(x.ctx.k + x.ctx.l));
  for (int i = 1; i <= x.ctx.k; ++i)
    amb.images.push_back(j.free.images[static_cast<std::size_t>(i) - 1]);
  for (int t = 1; t <= x.ctx.l; ++t)
    amb.images.push_back(tgt.k + j.con.images[static_cast<std::size_t>(t) - 1]);

  const int bound = tgt.color == Color::mixed ? tgt.k : tgt.k + tgt.l;
  EscElement out = esc_zero(tgt);
  for (auto& [lbl, c] : x.terms) {
    const ArnoldElement freeR =
        arnold::relabel(arnold::monomial(ambient_ctx(x.ctx), lbl.free_part), amb);
    if (freeR.is_zero()) continue;
    if (x.ctx.m == 1) {
      const e1::PermFunction conR =
          e1::relabel(e1::delta(x.ctx.l, std::get<Perm>(lbl.con)), j.con);
      for (auto& [w, cw] : freeR.terms) {
        if (!in_module(w, bound)) continue;
        for (auto& [p, cp] : conR.values)
          add_term(out.terms, EscLabel{w, p}, c * cw * cp);
      }
    } else {
      const ArnoldElement conR = arnold::relabel(
          arnold::monomial(con_ctx(x.ctx), std::get<Word>(lbl.con)), j.con);
      for (auto& [w, cw] : freeR.terms) {
        if (!in_module(w, bound)) continue;
        for (auto& [cv, cp] : conR.terms)
          add_term(out.terms, EscLabel{w, cv}, c * cw * cp);
      }
    }
  }
  return out;
}

Component triv_component(int family_dim, int k, int l, Color color) {
  if (family_dim < 1 || k < 0 || l < 0)
    throw std::invalid_argument("component: bad arguments");
  if (color == Color::free_output && l != 0)
    throw std::invalid_argument("component: free-output component takes no "
                                "constrained inputs");
  if (color == Color::mixed) return Component{false, family_dim, l};
  return Component{true, 0, 0};
}

Component paint_component(int family_dim, int k, int l, Color color) {
  if (family_dim < 1 || k < 0 || l < 0)
    throw std::invalid_argument("component: bad arguments");
  if (color == Color::free_output && l != 0)
    throw std::invalid_argument("component: free-output component takes no "
                                "constrained inputs");
  if (color == Color::mixed) return Component{false, family_dim, k + l};
  return Component{false, family_dim, k};
}

std::vector<long long> component_hilbert(const Component& c) {
  if (c.is_zero) return {};
  if (c.algebra_dim == 1) {
    long long total = 1;
    for (int i = 2; i <= c.arity; ++i) total *= i;
    return {total};
  }
  return arnold::hilbert_polynomial(AlgebraContext{c.algebra_dim, c.arity});
}

std::string con_to_string(const ConLabel& c) {
  if (std::holds_alternative<Perm>(c)) {
    const Perm& p = std::get<Perm>(c);
    return p.empty() ? "1" : e1::perm_to_string(p);
  }
  const Word& w = std::get<Word>(c);
  return w.empty() ? "1" : arnold::word_to_string(w);
}

std::string label_to_string(const EscLabel& lbl) {
  const std::string free_str =
      lbl.free_part.empty() ? "1" : arnold::word_to_string(lbl.free_part);
  return free_str + "⊗" + con_to_string(lbl.con);
}

std::string to_string(const EscElement& x) {
  if (x.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [lbl, c] : x.terms) {
    const bool neg = c < 0;
    const Rat a = neg ? Rat(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (a == 1)
      os << label_to_string(lbl);
    else
      os << rat_to_string(a) << "*" << label_to_string(lbl);
  }
  return os.str();
}

}  // namespace escops::esc
