#include "escops/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "escops/arnold.hpp"
#include "escops/bar.hpp"
#include "escops/escoperad.hpp"
#include "escops/oracle.hpp"
#include "escops/perm.hpp"
#include "escops/torsor.hpp"
#include "json.hpp"

namespace escops::verify {

namespace {

using arnold::AlgebraContext;
using arnold::ArnoldElement;
using arnold::Factor;
using arnold::Word;
using esc::ColoredBlocks;
using esc::EscContext;
using esc::EscElement;
using esc::EscLabel;

// Counts instances and keeps the first counterexample; the witness closure
// is only evaluated on the first failure, so passing runs pay nothing for
// the (sometimes long) rendered strings.
struct Checker {
  PropertyResult res;

  explicit Checker(std::string name) { res.name = std::move(name); }

  template <class W>
  void check(bool ok, W&& witness) {
    ++res.instances;
    if (!ok && res.pass) {
      res.pass = false;
      res.counterexample = witness();
    }
  }
};

void finish(SuiteReport& rep, Checker& ck) {
  rep.pass = rep.pass && ck.res.pass;
  rep.properties.push_back(std::move(ck.res));
}

// Deterministic sampling. Raw engine words reduced by modulo, so reports do
// not depend on the standard library's distribution implementations.
struct Sampler {
  std::mt19937_64 eng;

  explicit Sampler(std::uint64_t seed) : eng(seed) {}

  int below(int k) { return static_cast<int>(eng() % static_cast<std::uint64_t>(k)); }

  Rat coeff() {
    int c = below(6) - 3;
    return Rat(c == 0 ? 1 : c);
  }
};

long long factorial(int r) {
  long long f = 1;
  for (int i = 2; i <= r; ++i) f *= i;
  return f;
}

arnold::Injection identity_inj(int r) {
  arnold::Injection j;
  j.target_arity = r;
  j.images.resize(r);
  std::iota(j.images.begin(), j.images.end(), 1);
  return j;
}

// {1..c} -> {1..c+1}, new point last
arnold::Injection append_inj(int c) {
  arnold::Injection j = identity_inj(c);
  j.target_arity = c + 1;
  return j;
}

// monotone injection {1..target-1} -> {1..target} missing `pos`
arnold::Injection skip_inj(int target, int pos) {
  arnold::Injection j;
  j.target_arity = target;
  for (int v = 1; v < target; ++v) j.images.push_back(v < pos ? v : v + 1);
  return j;
}

arnold::Injection random_inj(Sampler& rng, int from, int to) {
  std::vector<int> pool(to);
  std::iota(pool.begin(), pool.end(), 1);
  for (int i = 0; i < from; ++i)
    std::swap(pool[i], pool[i + rng.below(to - i)]);
  arnold::Injection j;
  j.target_arity = to;
  j.images.assign(pool.begin(), pool.begin() + from);
  return j;
}

esc::ColoredInjection compose_colored(const esc::ColoredInjection& j2,
                                      const esc::ColoredInjection& j1) {
  return {arnold::Injection::compose(j2.free, j1.free),
          arnold::Injection::compose(j2.con, j1.con)};
}

// ---------------------------------------------------------------------------
// relators of the presentation, evaluated through the rewriting engine

struct NamedRelator {
  std::string name;
  ArnoldElement value;
};

std::vector<NamedRelator> ambient_relators(const AlgebraContext& ctx) {
  std::vector<NamedRelator> out;
  const Rat orient(ctx.n % 2 == 0 ? 1 : -1);
  for (int i = 1; i <= ctx.r; ++i)
    for (int j = i + 1; j <= ctx.r; ++j) {
      const std::string ij = std::to_string(i) + "," + std::to_string(j);
      const std::string ji = std::to_string(j) + "," + std::to_string(i);
      ArnoldElement sym = arnold::normal_form(ctx, {{j, i}});
      ArnoldElement oriented = arnold::normal_form(ctx, {{i, j}});
      oriented *= -orient;
      sym += oriented;
      out.push_back({"symmetry relator w[" + ji + "] - (-1)^n w[" + ij + "]",
                     std::move(sym)});
      out.push_back({"square relator w[" + ij + "]^2",
                     arnold::normal_form(ctx, {{i, j}, {i, j}})});
      out.push_back({"square relator w[" + ji + "]^2",
                     arnold::normal_form(ctx, {{j, i}, {j, i}})});
    }
  for (int i = 1; i <= ctx.r; ++i)
    for (int j = 1; j <= ctx.r; ++j)
      for (int k = 1; k <= ctx.r; ++k) {
        if (i == j || j == k || i == k) continue;
        ArnoldElement rel = arnold::normal_form(ctx, {{i, j}, {j, k}});
        rel += arnold::normal_form(ctx, {{j, k}, {k, i}});
        rel += arnold::normal_form(ctx, {{k, i}, {i, j}});
        out.push_back({"arnold relator at (" + std::to_string(i) + "," +
                           std::to_string(j) + "," + std::to_string(k) + ")",
                       std::move(rel)});
      }
  return out;
}

std::vector<Factor> random_raw_word(Sampler& rng, int r, int max_len) {
  std::vector<Factor> w;
  if (r < 2) return w;
  const int len = rng.below(max_len + 1);
  for (int t = 0; t < len; ++t) {
    int a = 1 + rng.below(r);
    int b = 1 + rng.below(r);
    if (a == b) b = b % r + 1;
    w.push_back({a, b});
  }
  return w;
}

std::string raw_word_to_string(const std::vector<Factor>& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (t) s += "*";
    s += "w[" + std::to_string(w[t].first) + "," + std::to_string(w[t].second) + "]";
  }
  return s;
}

ArnoldElement random_arnold(Sampler& rng, const AlgebraContext& ctx,
                            const std::vector<Word>& basis) {
  ArnoldElement x = arnold::zero(ctx);
  const int terms = 1 + rng.below(3);
  for (int t = 0; t < terms; ++t)
    x += arnold::monomial(ctx, basis[rng.below(static_cast<int>(basis.size()))],
                          rng.coeff());
  return x;
}

// Coordinates of a normal-form element over the oracle's spanning words.
std::map<Word, Rat> oracle_coords(oracle::Oracle& o, const ArnoldElement& x) {
  std::map<Word, Rat> acc;
  for (const auto& [w, c] : x.terms)
    for (const auto& [sw, v] : o.normal_form(w)) {
      auto& cur = acc[sw];
      cur += c * v;
      if (cur == 0) acc.erase(sw);
    }
  return acc;
}

// ---------------------------------------------------------------------------
// colored shape enumeration

// ordered compositions of `total` into parts >= 1 (total = 0 gives {{}})
std::vector<std::vector<int>> compositions(int total) {
  std::vector<std::vector<int>> out;
  if (total == 0) {
    out.push_back({});
    return out;
  }
  for (int first = 1; first <= total; ++first)
    for (auto& rest : compositions(total - first)) {
      std::vector<int> v{first};
      v.insert(v.end(), rest.begin(), rest.end());
      out.push_back(std::move(v));
    }
  return out;
}

// ordered lists of constrained-slot shapes (k,l), k+l >= 1, summing to (K,L)
std::vector<std::vector<std::pair<int, int>>> con_lists(int K, int L) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (K == 0 && L == 0) {
    out.push_back({});
    return out;
  }
  for (int k = 0; k <= K; ++k)
    for (int l = 0; l <= L; ++l) {
      if (k + l == 0) continue;
      for (auto& rest : con_lists(K - k, L - l)) {
        std::vector<std::pair<int, int>> v{{k, l}};
        v.insert(v.end(), rest.begin(), rest.end());
        out.push_back(std::move(v));
      }
    }
  return out;
}

// every block shape with composite (K,L): free slot sizes >= 1, constrained
// slots nonempty, at least one slot in total
std::vector<ColoredBlocks> colored_shapes(int K, int L) {
  std::vector<ColoredBlocks> out;
  for (int a = 0; a <= K; ++a)
    for (auto& fc : compositions(a))
      for (auto& cs : con_lists(K - a, L)) {
        if (fc.empty() && cs.empty()) continue;
        out.push_back({fc, cs});
      }
  return out;
}

std::string blocks_str(const ColoredBlocks& b) {
  std::string s = "free [";
  for (std::size_t i = 0; i < b.free_counts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(b.free_counts[i]);
  }
  s += "] con [";
  for (std::size_t j = 0; j < b.con_shapes.size(); ++j) {
    if (j) s += ",";
    s += "(" + std::to_string(b.con_shapes[j].first) + "," +
         std::to_string(b.con_shapes[j].second) + ")";
  }
  return s + "]";
}

// ---------------------------------------------------------------------------
// two-level shapes for coassociativity

// A coarse shape whose every slot carries its own refinement: ordinary
// blocks for free slots, colored blocks for constrained slots. Flattening
// is plain concatenation because placement is consecutive at both levels.
struct TwoLevel {
  ColoredBlocks coarse;
  std::vector<std::vector<int>> free_inner;
  std::vector<ColoredBlocks> con_inner;
};

std::string two_level_str(const TwoLevel& s) {
  std::string t = blocks_str(s.coarse) + " refined by free {";
  for (std::size_t i = 0; i < s.free_inner.size(); ++i) {
    if (i) t += "; ";
    t += "[";
    for (std::size_t u = 0; u < s.free_inner[i].size(); ++u) {
      if (u) t += ",";
      t += std::to_string(s.free_inner[i][u]);
    }
    t += "]";
  }
  t += "} con {";
  for (std::size_t j = 0; j < s.con_inner.size(); ++j) {
    if (j) t += "; ";
    t += blocks_str(s.con_inner[j]);
  }
  return t + "}";
}

std::vector<TwoLevel> two_level_shapes(int K, int L) {
  std::vector<TwoLevel> out;
  for (auto& coarse : colored_shapes(K, L)) {
    std::vector<std::vector<std::vector<int>>> fopts;
    for (int c : coarse.free_counts) fopts.push_back(compositions(c));
    std::vector<std::vector<ColoredBlocks>> copts;
    for (auto& [ck, cl] : coarse.con_shapes) copts.push_back(colored_shapes(ck, cl));
    // odometer over the per-slot options
    std::vector<std::size_t> idx(fopts.size() + copts.size(), 0);
    while (true) {
      TwoLevel s;
      s.coarse = coarse;
      for (std::size_t i = 0; i < fopts.size(); ++i)
        s.free_inner.push_back(fopts[i][idx[i]]);
      for (std::size_t j = 0; j < copts.size(); ++j)
        s.con_inner.push_back(copts[j][idx[fopts.size() + j]]);
      out.push_back(std::move(s));
      std::size_t pos = 0;
      for (; pos < idx.size(); ++pos) {
        const std::size_t limit =
            pos < fopts.size() ? fopts[pos].size() : copts[pos - fopts.size()].size();
        if (++idx[pos] < limit) break;
        idx[pos] = 0;
      }
      if (pos == idx.size()) break;
    }
  }
  return out;
}

// one-level shape obtained by erasing the middle layer
ColoredBlocks flatten(const TwoLevel& s) {
  ColoredBlocks fine;
  for (const auto& parts : s.free_inner)
    for (int p : parts) fine.free_counts.push_back(p);
  for (const auto& ci : s.con_inner)
    for (int p : ci.free_counts) fine.free_counts.push_back(p);
  for (const auto& ci : s.con_inner)
    for (const auto& sh : ci.con_shapes) fine.con_shapes.push_back(sh);
  return fine;
}

// shape regrouping the fine base's slots under the coarse base
ColoredBlocks base_grouping(const TwoLevel& s) {
  ColoredBlocks g;
  for (const auto& parts : s.free_inner)
    g.free_counts.push_back(static_cast<int>(parts.size()));
  for (const auto& ci : s.con_inner)
    g.con_shapes.push_back({static_cast<int>(ci.free_counts.size()),
                            static_cast<int>(ci.con_shapes.size())});
  return g;
}

// Tensor terms across a component list, keyed by (rendered label, degree)
// per component. Both iterates of a two-level cocomposition land here; they
// only differ by a fixed permutation of the components.
using TKey = std::vector<std::pair<std::string, int>>;
using TElt = std::map<TKey, Rat>;

void add_component_term(TElt& m, const TKey& key, const Rat& c) {
  auto it = m.find(key);
  if (it == m.end()) {
    if (c != 0) m.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == 0) m.erase(it);
}

std::pair<std::string, int> word_component(const AlgebraContext& ctx, const Word& w) {
  return {arnold::word_to_string(w), arnold::word_degree(ctx, w)};
}

std::pair<std::string, int> esc_component(const EscContext& ctx, const EscLabel& lbl) {
  return {esc::label_to_string(lbl), esc::label_degree(ctx, lbl)};
}

// The two-level tree assigns composite free points to the fine slots in an
// order consecutive blocks cannot always express: an inner constrained
// share of an early slot may precede an inner free slot of a later one.
// The assigned cocomposition factors through relabelling, so permute the
// free points into fine-layout order first. Constrained points never
// interleave and keep their order.
esc::ColoredInjection fine_alignment(const TwoLevel& s) {
  const int K = s.coarse.composite_k();
  const int L = s.coarse.composite_l();
  std::vector<int> actual;  // actual[p-1] = composite point at fine position p
  int run = 0;
  for (const auto& parts : s.free_inner)
    for (int part : parts)
      for (int t = 0; t < part; ++t) actual.push_back(++run);
  std::vector<int> share_start;  // composite points before slot j's free share
  {
    int acc = run;
    for (const auto& sh : s.coarse.con_shapes) {
      share_start.push_back(acc);
      acc += sh.first;
    }
  }
  std::vector<int> local_used(s.con_inner.size(), 0);
  for (std::size_t j = 0; j < s.con_inner.size(); ++j)
    for (int v : s.con_inner[j].free_counts)
      for (int t = 0; t < v; ++t) actual.push_back(share_start[j] + (++local_used[j]));
  for (std::size_t j = 0; j < s.con_inner.size(); ++j)
    for (const auto& sh : s.con_inner[j].con_shapes)
      for (int t = 0; t < sh.first; ++t)
        actual.push_back(share_start[j] + (++local_used[j]));
  arnold::Injection jf;
  jf.target_arity = K;
  jf.images.assign(K, 0);
  for (int p = 1; p <= K; ++p) jf.images[actual[p - 1] - 1] = p;
  return {jf, identity_inj(L)};
}

// fine cocomposition first, then the base regrouped: components in order
// [coarse base; coarse slot bases; fine slots]. Expanding the base in place
// carries no Koszul sign: cocomposition preserves degree.
TElt route_fine_then_base(const EscElement& x, const TwoLevel& s) {
  TElt out;
  const ColoredBlocks fine = flatten(s);
  const ColoredBlocks grp = base_grouping(s);
  const auto co1 = esc::esc_cocompose(esc::esc_colambda(x, fine_alignment(s)), fine);
  for (const auto& [l1, c1] : co1.terms) {
    const auto co2 =
        esc::esc_cocompose(esc::esc_monomial(co1.base_ctx, l1.base), grp);
    for (const auto& [l2, c2] : co2.terms) {
      TKey key;
      key.push_back(esc_component(co2.base_ctx, l2.base));
      for (std::size_t i = 0; i < l2.free_slots.size(); ++i)
        key.push_back(word_component(co2.free_ctxs[i], l2.free_slots[i]));
      for (std::size_t j = 0; j < l2.con_slots.size(); ++j)
        key.push_back(esc_component(co2.con_ctxs[j], l2.con_slots[j]));
      for (std::size_t i = 0; i < l1.free_slots.size(); ++i)
        key.push_back(word_component(co1.free_ctxs[i], l1.free_slots[i]));
      for (std::size_t j = 0; j < l1.con_slots.size(); ++j)
        key.push_back(esc_component(co1.con_ctxs[j], l1.con_slots[j]));
      add_component_term(out, key, c1 * c2);
    }
  }
  return out;
}

// coarse cocomposition first, then every slot refined in place: components
// in order [coarse base; slot 1 base, its fine slots; slot 2 base, ...].
TElt route_coarse_then_slots(const EscElement& x, const TwoLevel& s) {
  TElt out;
  const auto coc = esc::esc_cocompose(x, s.coarse);
  for (const auto& [lc, cc] : coc.terms) {
    std::vector<std::pair<TKey, Rat>> partials;
    partials.push_back({TKey{esc_component(coc.base_ctx, lc.base)}, cc});
    for (std::size_t i = 0; i < lc.free_slots.size(); ++i) {
      const auto co = arnold::cocompose(
          arnold::monomial(coc.free_ctxs[i], lc.free_slots[i]), s.free_inner[i]);
      std::vector<std::pair<TKey, Rat>> next;
      for (const auto& [pk, pc] : partials)
        for (const auto& [cl, cv] : co.terms) {
          TKey key = pk;
          key.push_back(word_component(co.base_ctx, cl.base));
          for (std::size_t t = 0; t < cl.slots.size(); ++t)
            key.push_back(word_component(co.slot_ctxs[t], cl.slots[t]));
          next.push_back({std::move(key), pc * cv});
        }
      partials = std::move(next);
    }
    for (std::size_t j = 0; j < lc.con_slots.size(); ++j) {
      const auto co = esc::esc_cocompose(
          esc::esc_monomial(coc.con_ctxs[j], lc.con_slots[j]), s.con_inner[j]);
      std::vector<std::pair<TKey, Rat>> next;
      for (const auto& [pk, pc] : partials)
        for (const auto& [cl, cv] : co.terms) {
          TKey key = pk;
          key.push_back(esc_component(co.base_ctx, cl.base));
          for (std::size_t t = 0; t < cl.free_slots.size(); ++t)
            key.push_back(word_component(co.free_ctxs[t], cl.free_slots[t]));
          for (std::size_t t = 0; t < cl.con_slots.size(); ++t)
            key.push_back(esc_component(co.con_ctxs[t], cl.con_slots[t]));
          next.push_back({std::move(key), pc * cv});
        }
      partials = std::move(next);
    }
    for (auto& [key, c] : partials) add_component_term(out, key, c);
  }
  return out;
}

// perm[b] = position in the fine-then-base layout of the b-th component of
// the coarse-then-slots layout
std::vector<int> layout_perm(const TwoLevel& s) {
  const int p = static_cast<int>(s.free_inner.size());
  const int q = static_cast<int>(s.con_inner.size());
  int D = 0;
  for (const auto& v : s.free_inner) D += static_cast<int>(v.size());
  int F = D;
  for (const auto& ci : s.con_inner) F += static_cast<int>(ci.free_counts.size());
  std::vector<int> perm;
  perm.push_back(0);
  int doff = 0, foff = 0, goff = 0;
  for (int i = 0; i < p; ++i) {
    perm.push_back(1 + i);
    for (int t = 0; t < static_cast<int>(s.free_inner[i].size()); ++t)
      perm.push_back(1 + p + q + doff + t);
    doff += static_cast<int>(s.free_inner[i].size());
  }
  for (int j = 0; j < q; ++j) {
    perm.push_back(1 + p + j);
    for (int t = 0; t < static_cast<int>(s.con_inner[j].free_counts.size()); ++t)
      perm.push_back(1 + p + q + D + foff + t);
    foff += static_cast<int>(s.con_inner[j].free_counts.size());
    for (int t = 0; t < static_cast<int>(s.con_inner[j].con_shapes.size()); ++t)
      perm.push_back(1 + p + q + F + goff + t);
    goff += static_cast<int>(s.con_inner[j].con_shapes.size());
  }
  return perm;
}

// Koszul sign of rearranging graded components so that position i moves to
// perm[i]: one factor (-1) per crossing pair of odd components.
int koszul_perm_sign(const std::vector<int>& degrees, const std::vector<int>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j] && degrees[i] % 2 != 0 && degrees[j] % 2 != 0)
        sign = -sign;
  return sign;
}

TElt reorder_components(const TElt& e, const std::vector<int>& perm) {
  TElt out;
  for (const auto& [key, c] : e) {
    TKey nk(key.size());
    std::vector<int> degrees(key.size());
    for (std::size_t i = 0; i < key.size(); ++i) {
      degrees[i] = key[i].second;
      nk[perm[i]] = key[i];
    }
    const int sign = koszul_perm_sign(degrees, perm);
    add_component_term(out, nk, sign < 0 ? -c : c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// esc sampling and small element helpers

EscElement random_esc(Sampler& rng, const EscContext& ctx,
                      const std::vector<EscLabel>& basis) {
  EscElement x = esc::esc_zero(ctx);
  const int terms = 1 + rng.below(3);
  for (int t = 0; t < terms; ++t)
    x += esc::esc_monomial(ctx, basis[rng.below(static_cast<int>(basis.size()))],
                           rng.coeff());
  return x;
}

EscLabel unit_label(const EscContext& ctx) {
  return esc::esc_unit(ctx).terms.begin()->first;
}

// expected value of a cocomposition on the unit: the tensor product of the
// component units, expanded multilinearly (for m = 1 a unit is the full sum
// of delta functions, so this can have many terms)
std::map<esc::EscCoLabel, Rat> unit_co_terms(const esc::EscCoElement& model) {
  std::vector<std::pair<esc::EscCoLabel, Rat>> acc;
  for (const auto& [bl, bc] : esc::esc_unit(model.base_ctx).terms) {
    esc::EscCoLabel lbl;
    lbl.base = bl;
    lbl.free_slots.assign(model.free_ctxs.size(), Word{});
    acc.push_back({std::move(lbl), bc});
  }
  for (const auto& cc : model.con_ctxs) {
    std::vector<std::pair<esc::EscCoLabel, Rat>> next;
    for (const auto& [partial, pc] : acc)
      for (const auto& [sl, sc] : esc::esc_unit(cc).terms) {
        esc::EscCoLabel lbl = partial;
        lbl.con_slots.push_back(sl);
        next.push_back({std::move(lbl), pc * sc});
      }
    acc = std::move(next);
  }
  std::map<esc::EscCoLabel, Rat> out;
  for (auto& [lbl, c] : acc) out.emplace(std::move(lbl), c);
  return out;
}

std::string co_terms_str(const std::map<esc::EscCoLabel, Rat>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [lbl, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << rat_to_string(c) << "*(" << esc::label_to_string(lbl.base);
    for (const auto& w : lbl.free_slots) os << " | " << arnold::word_to_string(w);
    for (const auto& l : lbl.con_slots) os << " | " << esc::label_to_string(l);
    os << ")";
  }
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

long long SuiteReport::total_instances() const {
  long long t = 0;
  for (const auto& p : properties) t += p.instances;
  return t;
}

const PropertyResult* SuiteReport::first_failure() const {
  for (const auto& p : properties)
    if (!p.pass) return &p;
  return nullptr;
}

SuiteReport verify_arnold(int n, int r, std::uint64_t seed, int samples) {
  if (n < 2) throw std::invalid_argument("verify arnold: n must be >= 2");
  if (r < 0 || r > 6)
    throw std::invalid_argument("verify arnold: r must be between 0 and 6");
  if (samples < 1) throw std::invalid_argument("verify arnold: samples must be positive");

  SuiteReport rep;
  rep.suite = "arnold";
  rep.seed = seed;
  rep.params = {{"n", n}, {"r", r}, {"samples", samples}};
  const AlgebraContext ctx{n, r};
  Sampler rng(seed);

  Checker relators("relators normalize to zero");
  for (const auto& rel : ambient_relators(ctx))
    relators.check(rel.value.is_zero(), [&] {
      return rel.name + " has nonzero normal form " + arnold::to_string(rel.value);
    });
  finish(rep, relators);

  Checker agree("normal form agrees with the oracle");
  {
    oracle::Oracle o(n, r);
    for (int t = 0; t < samples; ++t) {
      const auto word = random_raw_word(rng, r, 3);
      const auto direct = o.normal_form(word);
      const auto via = oracle_coords(o, arnold::normal_form(ctx, word));
      agree.check(direct == via, [&] {
        return "word " + raw_word_to_string(word) +
               ": oracle and rewriting coordinates differ";
      });
    }
  }
  finish(rep, agree);

  Checker dims("basis dimensions match the oracle and total r!");
  {
    const auto hp = arnold::hilbert_polynomial(ctx);
    const auto od = oracle::quotient_dims(n, r, static_cast<int>(hp.size()) - 1);
    long long total = 0;
    for (std::size_t d = 0; d < hp.size(); ++d) {
      total += hp[d];
      dims.check(hp[d] == od[d], [&, d] {
        return "degree " + std::to_string(d) + ": admissible count " +
               std::to_string(hp[d]) + " vs oracle dimension " + std::to_string(od[d]);
      });
    }
    dims.check(total == factorial(r), [&] {
      return "total dimension " + std::to_string(total) + " differs from r! = " +
             std::to_string(factorial(r));
    });
  }
  finish(rep, dims);

  Checker freeness("freeness round trip");
  {
    const auto basis = arnold::basis(ctx);
    for (int k = 1; k < r; ++k) {
      const int rs = r - k;
      const auto mb = arnold::module_basis(n, rs, k);
      freeness.check(
          static_cast<long long>(mb.size()) == factorial(r) / factorial(rs), [&] {
            return "module basis over the last " + std::to_string(rs) +
                   " points has " + std::to_string(mb.size()) + " words, expected " +
                   std::to_string(factorial(r) / factorial(rs));
          });
      for (int t = 0; t < samples; ++t) {
        const auto x = random_arnold(rng, ctx, basis);
        const auto parts = arnold::decompose(x, k);
        const auto back = arnold::recompose(parts, n, rs, k);
        freeness.check(back == x, [&] {
          return "k = " + std::to_string(k) + ": recompose(decompose(x)) != x for x = " +
                 arnold::to_string(x);
        });
      }
    }
  }
  finish(rep, freeness);

  return rep;
}

SuiteReport verify_hopf_cooperad(int m, int n, int bound, std::uint64_t seed) {
  if (m < 1 || n <= m)
    throw std::invalid_argument("verify colored: need n > m >= 1");
  if (bound < 1 || bound > 4)
    throw std::invalid_argument("verify colored: arity bound must be between 1 and 4");

  SuiteReport rep;
  rep.suite = "colored";
  rep.seed = seed;
  rep.params = {{"arity", bound}, {"m", m}, {"n", n}};
  Sampler rng(seed);

  std::vector<EscContext> ctxs;
  std::vector<std::vector<EscLabel>> bases;
  for (int s = 1; s <= bound; ++s)
    for (int k = s; k >= 0; --k) {
      EscContext c{m, n, k, s - k, esc::Color::mixed};
      bases.push_back(esc::esc_basis(c));
      ctxs.push_back(c);
    }

  const auto ctx_str = [](const EscContext& c) {
    return "(m,n,k,l) = (" + std::to_string(c.m) + "," + std::to_string(c.n) + "," +
           std::to_string(c.k) + "," + std::to_string(c.l) + ")";
  };

  Checker relators("generator relators vanish");
  for (std::size_t ci = 0; ci < ctxs.size(); ++ci) {
    const EscContext& c = ctxs[ci];
    const AlgebraContext ambient{n, c.k + c.l};
    for (const auto& rel : ambient_relators(ambient)) {
      bool ok = rel.value.is_zero();
      if (ok) {
        const EscElement image =
            m == 1 ? esc::esc_from_parts(c, rel.value, e1::unit_function(c.l))
                   : esc::esc_from_parts(c, rel.value, arnold::unit({m, c.l}));
        ok = image.is_zero();
      }
      relators.check(ok, [&] {
        return ctx_str(c) + ": ambient " + rel.name + " survives as " +
               arnold::to_string(rel.value);
      });
    }
    if (m >= 2) {
      const AlgebraContext con_ctx{m, c.l};
      for (const auto& rel : ambient_relators(con_ctx)) {
        bool ok = rel.value.is_zero();
        if (ok) ok = esc::esc_from_parts(c, arnold::unit(ambient), rel.value).is_zero();
        relators.check(ok, [&] {
          return ctx_str(c) + ": constrained " + rel.name + " survives as " +
                 arnold::to_string(rel.value);
        });
      }
    }
  }
  finish(rep, relators);

  Checker unital("products are unital");
  for (std::size_t ci = 0; ci < ctxs.size(); ++ci) {
    const EscContext& c = ctxs[ci];
    const EscElement one = esc::esc_unit(c);
    for (const auto& lbl : bases[ci]) {
      const EscElement x = esc::esc_monomial(c, lbl);
      unital.check(esc::esc_multiply(one, x) == x && esc::esc_multiply(x, one) == x,
                   [&] {
                     return ctx_str(c) + ": unit law fails on " +
                            esc::label_to_string(lbl);
                   });
    }
  }
  finish(rep, unital);

  Checker comm("products are graded-commutative");
  Checker assoc("products are associative");
  for (std::size_t ci = 0; ci < ctxs.size(); ++ci) {
    const EscContext& c = ctxs[ci];
    const auto& basis = bases[ci];
    const int dim = static_cast<int>(basis.size());
    const bool small = c.k + c.l <= 3;

    const auto comm_at = [&](int ia, int ib) {
      const EscElement x = esc::esc_monomial(c, basis[ia]);
      const EscElement y = esc::esc_monomial(c, basis[ib]);
      EscElement yx = esc::esc_multiply(y, x);
      if ((esc::label_degree(c, basis[ia]) * esc::label_degree(c, basis[ib])) % 2 != 0)
        yx *= Rat(-1);
      comm.check(esc::esc_multiply(x, y) == yx, [&] {
        return ctx_str(c) + ": x*y != (-1)^{|x||y|} y*x for x = " +
               esc::label_to_string(basis[ia]) + ", y = " +
               esc::label_to_string(basis[ib]);
      });
    };
    const auto assoc_at = [&](int ia, int ib, int icc) {
      const EscElement x = esc::esc_monomial(c, basis[ia]);
      const EscElement y = esc::esc_monomial(c, basis[ib]);
      const EscElement z = esc::esc_monomial(c, basis[icc]);
      assoc.check(esc::esc_multiply(esc::esc_multiply(x, y), z) ==
                      esc::esc_multiply(x, esc::esc_multiply(y, z)),
                  [&] {
                    return ctx_str(c) + ": (x*y)*z != x*(y*z) for x = " +
                           esc::label_to_string(basis[ia]) + ", y = " +
                           esc::label_to_string(basis[ib]) + ", z = " +
                           esc::label_to_string(basis[icc]);
                  });
    };

    if (small) {
      for (int ia = 0; ia < dim; ++ia)
        for (int ib = 0; ib < dim; ++ib) comm_at(ia, ib);
      for (int ia = 0; ia < dim; ++ia)
        for (int ib = 0; ib < dim; ++ib)
          for (int icc = 0; icc < dim; ++icc) assoc_at(ia, ib, icc);
    } else {
      for (int t = 0; t < 60; ++t) comm_at(rng.below(dim), rng.below(dim));
      for (int t = 0; t < 60; ++t)
        assoc_at(rng.below(dim), rng.below(dim), rng.below(dim));
    }
  }
  finish(rep, comm);
  finish(rep, assoc);

  Checker comap("cocompositions are unital algebra maps");
  Checker counit("singleton cocomposition is the counit");
  Checker coassoc("nested cocompositions agree");
  for (std::size_t ci = 0; ci < ctxs.size(); ++ci) {
    const EscContext& c = ctxs[ci];
    const auto& basis = bases[ci];
    const int dim = static_cast<int>(basis.size());
    const bool small = c.k + c.l <= 3;

    // counit: all blocks singleton
    {
      ColoredBlocks singleton;
      singleton.free_counts.assign(c.k, 1);
      singleton.con_shapes.assign(c.l, {0, 1});
      for (const auto& lbl : bases[ci]) {
        const auto co = esc::esc_cocompose(esc::esc_monomial(c, lbl), singleton);
        esc::EscCoLabel expect;
        expect.base = lbl;
        expect.free_slots.assign(c.k, Word{});
        expect.con_slots.assign(c.l,
                                unit_label({m, n, 0, 1, esc::Color::mixed}));
        const std::map<esc::EscCoLabel, Rat> want{{expect, Rat(1)}};
        counit.check(co.terms == want, [&] {
          return ctx_str(c) + ": singleton cocomposition of " +
                 esc::label_to_string(lbl) + " gives " + co_terms_str(co.terms);
        });
      }
    }

    // unital algebra map, per block shape
    const auto shapes = colored_shapes(c.k, c.l);
    for (const auto& shape : shapes) {
      const auto co_unit = esc::esc_cocompose(esc::esc_unit(c), shape);
      comap.check(co_unit.terms == unit_co_terms(co_unit), [&] {
        return ctx_str(c) + ", shape " + blocks_str(shape) +
               ": unit does not cocompose to the tensor of units: " +
               co_terms_str(co_unit.terms);
      });
      const auto map_at = [&](int ia, int ib) {
        const EscElement x = esc::esc_monomial(c, basis[ia]);
        const EscElement y = esc::esc_monomial(c, basis[ib]);
        const auto lhs = esc::esc_cocompose(esc::esc_multiply(x, y), shape);
        const auto rhs = esc::co_multiply(esc::esc_cocompose(x, shape),
                                          esc::esc_cocompose(y, shape));
        comap.check(lhs.terms == rhs.terms, [&] {
          return ctx_str(c) + ", shape " + blocks_str(shape) +
                 ": D(x*y) != D(x)*D(y) for x = " + esc::label_to_string(basis[ia]) +
                 ", y = " + esc::label_to_string(basis[ib]);
        });
      };
      if (small) {
        for (int ia = 0; ia < dim; ++ia)
          for (int ib = 0; ib < dim; ++ib) map_at(ia, ib);
      } else {
        for (int t = 0; t < 25; ++t) map_at(rng.below(dim), rng.below(dim));
      }
    }

    // coassociativity through two-level shapes
    {
      const auto all = two_level_shapes(c.k, c.l);
      const auto coassoc_at = [&](const TwoLevel& s) {
        const EscElement x = random_esc(rng, c, basis);
        const TElt a = route_fine_then_base(x, s);
        const TElt b =
            reorder_components(route_coarse_then_slots(x, s), layout_perm(s));
        coassoc.check(a == b, [&] {
          return ctx_str(c) + ", " + two_level_str(s) +
                 ": iterated cocompositions differ on x = " + esc::to_string(x);
        });
      };
      if (small) {
        for (const auto& s : all)
          for (int t = 0; t < 2; ++t) coassoc_at(s);
      } else {
        for (int t = 0; t < 60; ++t)
          coassoc_at(all[rng.below(static_cast<int>(all.size()))]);
      }
    }
  }
  finish(rep, comap);
  finish(rep, counit);
  finish(rep, coassoc);

  Checker colam("point-forgetting maps are algebra maps and functorial");
  for (std::size_t ci = 0; ci < ctxs.size(); ++ci) {
    const EscContext& c = ctxs[ci];
    const auto& basis = bases[ci];
    for (int trial = 0; trial < 12; ++trial) {
      int dk = rng.below(2), dl = rng.below(2);
      if (c.k + dk + c.l + dl > 5) dk = dl = 0;
      const esc::ColoredInjection j1{random_inj(rng, c.k, c.k + dk),
                                     random_inj(rng, c.l, c.l + dl)};
      const EscContext mid{m, n, c.k + dk, c.l + dl, esc::Color::mixed};
      colam.check(esc::esc_colambda(esc::esc_unit(c), j1) == esc::esc_unit(mid), [&] {
        return ctx_str(c) + ": unit not preserved under point insertion";
      });
      const EscElement x = random_esc(rng, c, basis);
      const EscElement y = random_esc(rng, c, basis);
      colam.check(esc::esc_colambda(esc::esc_multiply(x, y), j1) ==
                      esc::esc_multiply(esc::esc_colambda(x, j1),
                                        esc::esc_colambda(y, j1)),
                  [&] {
                    return ctx_str(c) + ": colambda(x*y) != colambda(x)*colambda(y)" +
                           " for x = " + esc::to_string(x) + ", y = " +
                           esc::to_string(y);
                  });
      int dk2 = rng.below(2), dl2 = rng.below(2);
      if (mid.k + dk2 + mid.l + dl2 > 5) dk2 = dl2 = 0;
      const esc::ColoredInjection j2{random_inj(rng, mid.k, mid.k + dk2),
                                     random_inj(rng, mid.l, mid.l + dl2)};
      colam.check(esc::esc_colambda(x, compose_colored(j2, j1)) ==
                      esc::esc_colambda(esc::esc_colambda(x, j1), j2),
                  [&] {
                    return ctx_str(c) + ": colambda functoriality fails on x = " +
                           esc::to_string(x);
                  });
    }
  }
  finish(rep, colam);

  Checker colamco("point-forgetting maps commute with cocomposition");
  for (std::size_t ci = 0; ci < ctxs.size(); ++ci) {
    const EscContext& c = ctxs[ci];
    const auto& basis = bases[ci];
    const bool small = c.k + c.l <= 3;
    const auto shapes = colored_shapes(c.k, c.l);

    // insert one point at the end of a slot's range on both sides of the
    // cocomposition; kind 0 = free slot, 1 = constrained slot free share,
    // 2 = constrained slot constrained share
    const auto commute_at = [&](const ColoredBlocks& shape, int kind, int slot) {
      const EscElement x = random_esc(rng, c, basis);
      ColoredBlocks grown = shape;
      esc::ColoredInjection big{identity_inj(c.k), identity_inj(c.l)};
      EscContext bctx = c;
      if (kind == 0) {
        grown.free_counts[slot] += 1;
        int pos = 1;
        for (int i = 0; i <= slot; ++i) pos += shape.free_counts[i];
        big.free = skip_inj(c.k + 1, pos);
        bctx.k += 1;
      } else if (kind == 1) {
        grown.con_shapes[slot].first += 1;
        int pos = 1;
        for (int i = 0; i < static_cast<int>(shape.free_counts.size()); ++i)
          pos += shape.free_counts[i];
        for (int j = 0; j <= slot; ++j) pos += shape.con_shapes[j].first;
        big.free = skip_inj(c.k + 1, pos);
        bctx.k += 1;
      } else {
        grown.con_shapes[slot].second += 1;
        int pos = 1;
        for (int j = 0; j <= slot; ++j) pos += shape.con_shapes[j].second;
        big.con = skip_inj(c.l + 1, pos);
        bctx.l += 1;
      }
      const auto lhs = esc::esc_cocompose(esc::esc_colambda(x, big), grown);
      const auto co = esc::esc_cocompose(x, shape);
      std::map<esc::EscCoLabel, Rat> expected;
      for (const auto& [lbl, cv] : co.terms) {
        if (kind == 0) {
          const auto rel = arnold::relabel(
              arnold::monomial(co.free_ctxs[slot], lbl.free_slots[slot]),
              append_inj(shape.free_counts[slot]));
          for (const auto& [w2, c2] : rel.terms) {
            esc::EscCoLabel nl = lbl;
            nl.free_slots[slot] = w2;
            auto& cur = expected[nl];
            cur += cv * c2;
            if (cur == 0) expected.erase(nl);
          }
        } else {
          const auto [ck, cl] = shape.con_shapes[slot];
          const esc::ColoredInjection local =
              kind == 1 ? esc::ColoredInjection{append_inj(ck), identity_inj(cl)}
                        : esc::ColoredInjection{identity_inj(ck), append_inj(cl)};
          const auto rel = esc::esc_colambda(
              esc::esc_monomial(co.con_ctxs[slot], lbl.con_slots[slot]), local);
          for (const auto& [l2, c2] : rel.terms) {
            esc::EscCoLabel nl = lbl;
            nl.con_slots[slot] = l2;
            auto& cur = expected[nl];
            cur += cv * c2;
            if (cur == 0) expected.erase(nl);
          }
        }
      }
      colamco.check(lhs.terms == expected, [&] {
        return ctx_str(c) + ", shape " + blocks_str(shape) + ", insertion kind " +
               std::to_string(kind) + " at slot " + std::to_string(slot) +
               ": cocomposition does not commute with the insertion on x = " +
               esc::to_string(x);
      });
    };

    std::vector<std::pair<int, std::pair<int, int>>> sites;  // (shape idx, (kind, slot))
    for (std::size_t si = 0; si < shapes.size(); ++si) {
      for (int a = 0; a < static_cast<int>(shapes[si].free_counts.size()); ++a)
        sites.push_back({static_cast<int>(si), {0, a}});
      for (int b = 0; b < static_cast<int>(shapes[si].con_shapes.size()); ++b) {
        sites.push_back({static_cast<int>(si), {1, b}});
        sites.push_back({static_cast<int>(si), {2, b}});
      }
    }
    if (small) {
      for (const auto& [si, ks] : sites) commute_at(shapes[si], ks.first, ks.second);
    } else {
      for (int t = 0; t < 25; ++t) {
        const auto& [si, ks] = sites[rng.below(static_cast<int>(sites.size()))];
        commute_at(shapes[si], ks.first, ks.second);
      }
    }
  }
  finish(rep, colamco);

  return rep;
}

SuiteReport verify_bar(int m, int n, int sum_bound, int degree_bound) {
  if (m < 1 || n <= m) throw std::invalid_argument("verify bar: need n > m >= 1");
  if (sum_bound < 1 || sum_bound > 4)
    throw std::invalid_argument("verify bar: k+l bound must be between 1 and 4");
  if (degree_bound < 0)
    throw std::invalid_argument("verify bar: degree bound must be nonnegative");

  SuiteReport rep;
  rep.suite = "bar";
  rep.params = {{"bound", degree_bound}, {"m", m}, {"max_kl", sum_bound}, {"n", n}};

  Checker collapse("Eilenberg-Moore collapse certificates");
  for (int s = 0; s <= sum_bound; ++s)
    for (int k = s; k >= 0; --k) {
      const int l = s - k;
      const auto r = bar::em_collapse_check(m, n, k, l, degree_bound);
      collapse.check(r.pass, [&] {
        return "(k,l) = (" + std::to_string(k) + "," + std::to_string(l) + "): " +
               r.failure;
      });
    }
  finish(rep, collapse);

  Checker control("square-zero control exhibits higher Tor");
  {
    const auto q = bar::rational_algebra();
    const auto a = bar::square_zero_algebra(1);
    const auto cx = bar::build_bar(q, a, q, bar::ideal_killing_map(a, q),
                                   bar::ideal_killing_map(a, q), 8);
    const auto tor = bar::tor_dimensions(cx);
    control.check(tor.higher_total() > 0, [&] {
      return "bar(Q, Q[x]/(x^2), Q) reported no higher Tor up to degree 8";
    });
  }
  finish(rep, control);

  return rep;
}

SuiteReport verify_torsor(int m, int n, int truncation) {
  if (m < 1 || n <= m) throw std::invalid_argument("verify torsor: need n > m >= 1");
  if (truncation < 2 || truncation > 4)
    throw std::invalid_argument("verify torsor: truncation must be between 2 and 4");

  SuiteReport rep;
  rep.suite = "torsor";
  rep.params = {{"m", m}, {"n", n}, {"truncation", truncation}};

  Checker model("cohomology model has swiss-cheese type");
  {
    const auto s = torsor::from_cohomology(m, n, truncation);
    const auto r = torsor::check_swiss_cheese_type(s, truncation);
    for (const auto& v : r.arities)
      model.check(v.pass, [&] { return v.failure; });
    model.check(r.pass, [&] { return r.failure; });
  }
  finish(rep, model);

  Checker fault("role-swapped fault is rejected at arity 2");
  {
    const auto s = torsor::role_swapped_fault(m, n, truncation);
    const auto r = torsor::check_swiss_cheese_type(s, truncation);
    fault.check(!r.pass && r.failure.find("arity 2") != std::string::npos, [&] {
      return r.pass ? std::string("role-swapped data passed the conditions")
                    : "unexpected failure location: " + r.failure;
    });
  }
  finish(rep, fault);

  Checker control("commutative control passes");
  {
    const auto s = torsor::commutative_two_colored(truncation);
    const auto r = torsor::check_swiss_cheese_type(s, truncation);
    control.check(r.pass, [&] { return r.failure; });
  }
  finish(rep, control);

  return rep;
}

// ---------------------------------------------------------------------------

std::string report_to_text(const SuiteReport& rep) {
  std::ostringstream os;
  os << "suite " << rep.suite << " (";
  for (const auto& [k, v] : rep.params) os << k << " = " << v << ", ";
  os << "seed = " << rep.seed << "): " << (rep.pass ? "pass" : "FAIL") << "\n";
  for (const auto& p : rep.properties) {
    os << "  " << (p.pass ? "pass" : "FAIL") << "  " << p.name << " ("
       << p.instances << " instances)\n";
    if (!p.pass) os << "        counterexample: " << p.counterexample << "\n";
  }
  return os.str();
}

std::string reports_to_text(const std::vector<SuiteReport>& reps) {
  std::string out;
  bool all = true;
  for (const auto& r : reps) {
    out += report_to_text(r);
    all = all && r.pass;
  }
  out += all ? "overall: PASS\n" : "overall: FAIL\n";
  return out;
}

std::string reports_to_json(const std::vector<SuiteReport>& reps) {
  nlohmann::json suites = nlohmann::json::array();
  bool all = true;
  for (const auto& r : reps) {
    all = all && r.pass;
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : r.properties) {
      nlohmann::json jp{{"name", p.name}, {"instances", p.instances}, {"pass", p.pass}};
      if (!p.pass) jp["counterexample"] = p.counterexample;
      props.push_back(std::move(jp));
    }
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    suites.push_back(nlohmann::json{{"params", std::move(params)},
                                    {"pass", r.pass},
                                    {"properties", std::move(props)},
                                    {"seed", r.seed},
                                    {"suite", r.suite}});
  }
  const nlohmann::json out{
      {"schema", "verify-report/1"}, {"pass", all}, {"suites", std::move(suites)}};
  return out.dump(2) + "\n";
}

}  // namespace escops::verify
