#include "escops/arnold.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "escops/testhooks.hpp"

namespace escops::arnold {

namespace {

void check_context(const AlgebraContext& ctx) {
  if (ctx.n < 2) throw std::invalid_argument("AlgebraContext: n must be >= 2");
  if (ctx.r < 0) throw std::invalid_argument("AlgebraContext: r must be >= 0");
}

void check_factor(const AlgebraContext& ctx, const Factor& f) {
  if (f.first == f.second)
    throw std::invalid_argument("generator w[i,i] rejected (i = " +
                                std::to_string(f.first) + ")");
  if (f.first < 1 || f.first > ctx.r || f.second < 1 || f.second > ctx.r)
    throw std::invalid_argument("generator index out of range 1.." +
                                std::to_string(ctx.r) + ": w[" +
                                std::to_string(f.first) + "," +
                                std::to_string(f.second) + "]");
}

// Sign of flipping one generator to its oriented form; (-1)^n, except under
// the deliberate-fault hook, which corrupts it to (-1)^{n+1}.
int orientation_sign(int n) {
  int s = (n % 2 == 0) ? 1 : -1;
  if (escops::testhooks::flip_symmetry_sign.load()) s = -s;
  return s;
}

// Koszul sign of one adjacent transposition of generators (degree n-1 each).
int transposition_sign(int n) { return (n % 2 == 0) ? -1 : 1; }

// Orient every factor to i < j and sort lexicographically, accumulating
// signs. Returns nullopt when a square appears (word is zero).
std::optional<std::pair<Word, int>> orient_and_sort(const AlgebraContext& ctx,
                                                    std::vector<Factor> w) {
  int sign = 1;
  const int os = orientation_sign(ctx.n);
  for (auto& f : w)
    if (f.first > f.second) {
      std::swap(f.first, f.second);
      sign *= os;
    }
  // insertion sort; word lengths are tiny
  const int ts = transposition_sign(ctx.n);
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      std::swap(w[j], w[j - 1]);
      sign *= ts;
    }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return std::nullopt;  // w[i,j]^2 = 0
  return std::make_pair(std::move(w), sign);
}

// Position of the left factor of the rewrite pair: the two factors with the
// largest second indices at the largest repeated first index. Returns npos
// when the word is admissible.
std::size_t find_rewrite_position(const Word& w) {
  for (std::size_t i = w.size(); i-- > 1;)
    if (w[i].first == w[i - 1].first) return i - 1;
  return static_cast<std::size_t>(-1);
}

void add_term(std::map<Word, Rat>& acc, const Word& w, const Rat& c) {
  auto it = acc.find(w);
  if (it == acc.end()) {
    if (c != 0) acc.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

}  // namespace

bool is_admissible(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].first >= w[i].second) return false;
    if (i > 0 && w[i - 1].first >= w[i].first) return false;
  }
  return true;
}

std::vector<int> monomial_I(const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (auto& f : w) out.push_back(f.first);
  return out;
}

std::vector<int> monomial_f(const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (auto& f : w) out.push_back(f.second);
  return out;
}

int word_degree(const AlgebraContext& ctx, const Word& w) {
  return static_cast<int>(w.size()) * (ctx.n - 1);
}

bool ArnoldElement::is_homogeneous() const {
  if (terms.empty()) return true;
  const std::size_t len = terms.begin()->first.size();
  for (auto& [w, c] : terms)
    if (w.size() != len) return false;
  return true;
}

int ArnoldElement::degree() const {
  if (terms.empty()) throw std::logic_error("degree of zero element");
  if (!is_homogeneous()) throw std::logic_error("degree of mixed element");
  return word_degree(ctx, terms.begin()->first);
}

ArnoldElement& ArnoldElement::operator+=(const ArnoldElement& o) {
  if (!(ctx == o.ctx)) throw std::invalid_argument("context mismatch in +");
  for (auto& [w, c] : o.terms) add_term(terms, w, c);
  return *this;
}

ArnoldElement& ArnoldElement::operator*=(const Rat& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [w, v] : terms) v *= c;
  return *this;
}

ArnoldElement zero(const AlgebraContext& ctx) {
  check_context(ctx);
  return ArnoldElement{ctx, {}};
}

ArnoldElement unit(const AlgebraContext& ctx) {
  check_context(ctx);
  return ArnoldElement{ctx, {{Word{}, Rat(1)}}};
}

ArnoldElement monomial(const AlgebraContext& ctx, const Word& w, const Rat& c) {
  check_context(ctx);
  for (auto& f : w) check_factor(ctx, f);
  if (!is_admissible(w))
    throw std::invalid_argument("monomial(): word not admissible; use normal_form");
  ArnoldElement out{ctx, {}};
  if (c != 0) out.terms.emplace(w, c);
  return out;
}

ArnoldElement normal_form(const AlgebraContext& ctx,
                          const std::vector<Factor>& word) {
  check_context(ctx);
  for (auto& f : word) check_factor(ctx, f);
  ArnoldElement out{ctx, {}};
  std::map<Word, Rat> pending;
  if (auto os = orient_and_sort(ctx, word)) add_term(pending, os->first, Rat(os->second));
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key();
    const Rat& c = node.mapped();
    const std::size_t p = find_rewrite_position(w);
    if (p == static_cast<std::size_t>(-1)) {
      add_term(out.terms, w, c);
      continue;
    }
    // w[i,a]*w[i,b] -> w[i,a]*w[a,b] - w[i,b]*w[a,b]   (i < a < b)
    const int a = w[p].second, b = w[p + 1].second;
    Word keep_a = w, keep_b = w;
    keep_a[p + 1] = {a, b};
    keep_b[p] = keep_b[p + 1];
    keep_b[p + 1] = {a, b};
    if (auto os = orient_and_sort(ctx, std::move(keep_a)))
      add_term(pending, os->first, c * os->second);
    if (auto os = orient_and_sort(ctx, std::move(keep_b)))
      add_term(pending, os->first, -c * os->second);
  }
  return out;
}

ArnoldElement multiply(const ArnoldElement& a, const ArnoldElement& b) {
  if (!(a.ctx == b.ctx)) throw std::invalid_argument("context mismatch in multiply");
  ArnoldElement out{a.ctx, {}};
  for (auto& [wa, ca] : a.terms)
    for (auto& [wb, cb] : b.terms) {
      std::vector<Factor> concat = wa;
      concat.insert(concat.end(), wb.begin(), wb.end());
      ArnoldElement piece = normal_form(a.ctx, concat);
      piece *= ca * cb;
      out += piece;
    }
  return out;
}

namespace {

// Admissible words with first indices drawn from {min_i..max_first}, second
// indices bounded by r; DFS in increasing (i, f(i)) yields lexicographic
// order within each length.
void enumerate_words(int r, int max_first, int min_i, Word& cur,
                     std::vector<std::vector<Word>>& by_length) {
  by_length[cur.size()].push_back(cur);
  for (int i = min_i; i <= max_first; ++i)
    for (int j = i + 1; j <= r; ++j) {
      cur.push_back({i, j});
      enumerate_words(r, max_first, i + 1, cur, by_length);
      cur.pop_back();
    }
}

std::vector<std::vector<Word>> words_by_length(int r, int max_first) {
  std::vector<std::vector<Word>> by_length(
      static_cast<std::size_t>(std::max(0, max_first)) + 1);
  Word cur;
  enumerate_words(r, max_first, 1, cur, by_length);
  return by_length;
}

}  // namespace

std::vector<Word> basis(const AlgebraContext& ctx, std::optional<int> degree) {
  check_context(ctx);
  auto by_length = words_by_length(ctx.r, ctx.r - 1);
  std::vector<Word> out;
  for (std::size_t len = 0; len < by_length.size(); ++len) {
    const int deg = static_cast<int>(len) * (ctx.n - 1);
    if (degree && *degree != deg) continue;
    out.insert(out.end(), by_length[len].begin(), by_length[len].end());
  }
  return out;
}

std::vector<long long> hilbert_polynomial(const AlgebraContext& ctx) {
  check_context(ctx);
  auto by_length = words_by_length(ctx.r, ctx.r - 1);
  const int top = static_cast<int>(by_length.size() - 1) * (ctx.n - 1);
  std::vector<long long> coeffs(static_cast<std::size_t>(top) + 1, 0);
  for (std::size_t len = 0; len < by_length.size(); ++len)
    coeffs[len * static_cast<std::size_t>(ctx.n - 1)] +=
        static_cast<long long>(by_length[len].size());
  return coeffs;
}

void Injection::validate() const {
  std::vector<char> seen(static_cast<std::size_t>(target_arity) + 1, 0);
  for (int v : images) {
    if (v < 1 || v > target_arity)
      throw std::invalid_argument("injection image out of range");
    if (seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("map not injective");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Injection Injection::compose(const Injection& j2, const Injection& j1) {
  if (j1.target_arity != j2.arity())
    throw std::invalid_argument("injection composition: arity mismatch");
  Injection out{j2.target_arity, {}};
  out.images.reserve(j1.images.size());
  for (int v : j1.images) out.images.push_back(j2.images[static_cast<std::size_t>(v) - 1]);
  out.validate();
  return out;
}

ArnoldElement relabel(const ArnoldElement& x, const Injection& j) {
  j.validate();
  if (j.arity() != x.ctx.r)
    throw std::invalid_argument("relabel: injection domain != element arity");
  const AlgebraContext tgt{x.ctx.n, j.target_arity};
  ArnoldElement out = zero(tgt);
  for (auto& [w, c] : x.terms) {
    std::vector<Factor> img;
    img.reserve(w.size());
    for (auto& f : w)
      img.push_back({j.images[static_cast<std::size_t>(f.first) - 1],
                     j.images[static_cast<std::size_t>(f.second) - 1]});
    ArnoldElement piece = normal_form(tgt, img);
    piece *= c;
    out += piece;
  }
  return out;
}

CoElement cocompose_assigned(const ArnoldElement& x, int num_slots,
                             const std::vector<int>& slot_of) {
  if (num_slots < 0) throw std::invalid_argument("cocompose: negative slot count");
  if (static_cast<int>(slot_of.size()) != x.ctx.r)
    throw std::invalid_argument("cocompose: assignment size != arity");
  for (int s : slot_of)
    if (s < 0 || s >= num_slots)
      throw std::invalid_argument("cocompose: slot index out of range");

  const int n = x.ctx.n;
  std::vector<int> local(slot_of.size());      // 1-based index within the slot
  std::vector<int> slot_size(static_cast<std::size_t>(num_slots), 0);
  for (std::size_t p = 0; p < slot_of.size(); ++p)
    local[p] = ++slot_size[static_cast<std::size_t>(slot_of[p])];

  CoElement out;
  out.base_ctx = AlgebraContext{n, num_slots};
  out.slot_ctxs.reserve(static_cast<std::size_t>(num_slots));
  for (int s = 0; s < num_slots; ++s)
    out.slot_ctxs.push_back(AlgebraContext{n, slot_size[static_cast<std::size_t>(s)]});

  const std::size_t ncomp = static_cast<std::size_t>(num_slots) + 1;
  for (auto& [w, c] : x.terms) {
    // route each factor to its tensor component, tracking the Koszul sign of
    // moving it (degree n-1) past everything already sitting to its right
    std::vector<std::vector<Factor>> comp(ncomp);
    std::vector<int> placed(ncomp, 0);
    int sign = 1;
    for (auto& f : w) {
      const int su = slot_of[static_cast<std::size_t>(f.first) - 1];
      const int sv = slot_of[static_cast<std::size_t>(f.second) - 1];
      std::size_t target;
      Factor g;
      if (su == sv) {
        target = static_cast<std::size_t>(su) + 1;
        g = {local[static_cast<std::size_t>(f.first) - 1],
             local[static_cast<std::size_t>(f.second) - 1]};
      } else {
        target = 0;
        g = {su + 1, sv + 1};
      }
      if ((n - 1) % 2 != 0) {
        int after = 0;
        for (std::size_t t = target + 1; t < ncomp; ++t) after += placed[t];
        if (after % 2 != 0) sign = -sign;
      }
      comp[target].push_back(g);
      ++placed[target];
    }
    // normal-form every component, then distribute the tensor product
    std::vector<ArnoldElement> nf;
    nf.reserve(ncomp);
    bool dead = false;
    for (std::size_t t = 0; t < ncomp && !dead; ++t) {
      const AlgebraContext& tc = (t == 0) ? out.base_ctx : out.slot_ctxs[t - 1];
      nf.push_back(normal_form(tc, comp[t]));
      if (nf.back().is_zero()) dead = true;
    }
    if (dead) continue;
    std::vector<std::pair<CoLabel, Rat>> partial{{CoLabel{{}, std::vector<Word>(
        static_cast<std::size_t>(num_slots))}, c * sign}};
    for (std::size_t t = 0; t < ncomp; ++t) {
      std::vector<std::pair<CoLabel, Rat>> next;
      for (auto& [lbl, coeff] : partial)
        for (auto& [tw, tc] : nf[t].terms) {
          CoLabel l2 = lbl;
          if (t == 0)
            l2.base = tw;
          else
            l2.slots[t - 1] = tw;
          next.emplace_back(std::move(l2), coeff * tc);
        }
      partial = std::move(next);
    }
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

CoElement cocompose(const ArnoldElement& x, const std::vector<int>& block_sizes) {
  int total = 0;
  for (int b : block_sizes) {
    if (b < 1) throw std::invalid_argument("cocompose: block sizes must be >= 1");
    total += b;
  }
  if (total != x.ctx.r)
    throw std::invalid_argument("cocompose: blocks do not partition {1..r}");
  std::vector<int> slot_of;
  slot_of.reserve(static_cast<std::size_t>(total));
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    for (int i = 0; i < block_sizes[b]; ++i) slot_of.push_back(static_cast<int>(b));
  return cocompose_assigned(x, static_cast<int>(block_sizes.size()), slot_of);
}

CoElement co_multiply(const CoElement& a, const CoElement& b) {
  if (a.base_ctx != b.base_ctx || a.slot_ctxs != b.slot_ctxs)
    throw std::invalid_argument("co_multiply: component shapes differ");
  CoElement out;
  out.base_ctx = a.base_ctx;
  out.slot_ctxs = a.slot_ctxs;
  const std::size_t ncomp = a.slot_ctxs.size() + 1;
  auto comp_word = [](const CoLabel& l, std::size_t t) -> const Word& {
    return t == 0 ? l.base : l.slots[t - 1];
  };
  auto comp_ctx = [&](std::size_t t) -> const AlgebraContext& {
    return t == 0 ? a.base_ctx : a.slot_ctxs[t - 1];
  };
  for (auto& [la, ca] : a.terms)
    for (auto& [lb, cb] : b.terms) {
      // Koszul sign of aligning a_0⊗..⊗a_s with b_0⊗..⊗b_s: each b_t moves
      // left past the a_{t'} with t' > t
      std::vector<long long> suffix(ncomp + 1, 0);
      for (std::size_t t = ncomp; t-- > 0;)
        suffix[t] = suffix[t + 1] +
                    static_cast<long long>(comp_word(la, t).size()) * (comp_ctx(t).n - 1);
      long long crossings = 0;
      for (std::size_t t = 0; t < ncomp; ++t)
        crossings += static_cast<long long>(comp_word(lb, t).size()) *
                     (comp_ctx(t).n - 1) * suffix[t + 1];
      const int sign = crossings % 2 != 0 ? -1 : 1;

      std::vector<ArnoldElement> prod;
      prod.reserve(ncomp);
      bool dead = false;
      for (std::size_t t = 0; t < ncomp && !dead; ++t) {
        Word concat = comp_word(la, t);
        const Word& wb = comp_word(lb, t);
        concat.insert(concat.end(), wb.begin(), wb.end());
        prod.push_back(normal_form(comp_ctx(t), concat));
        if (prod.back().is_zero()) dead = true;
      }
      if (dead) continue;
      std::vector<std::pair<CoLabel, Rat>> partial{{CoLabel{{}, std::vector<Word>(
          a.slot_ctxs.size())}, ca * cb * sign}};
      for (std::size_t t = 0; t < ncomp; ++t) {
        std::vector<std::pair<CoLabel, Rat>> next;
        for (auto& [lbl, coeff] : partial)
          for (auto& [tw, tc] : prod[t].terms) {
            CoLabel l2 = lbl;
            if (t == 0)
              l2.base = tw;
            else
              l2.slots[t - 1] = tw;
            next.emplace_back(std::move(l2), coeff * tc);
          }
        partial = std::move(next);
      }
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

ArnoldElement restrict_element(const ArnoldElement& x, int m) {
  if (m < 2 || m >= x.ctx.n)
    throw std::invalid_argument("restrict: need 2 <= m < n (m = 1 lives in perm)");
  ArnoldElement out = zero(AlgebraContext{m, x.ctx.r});
  const Rat c = x.unit_coefficient();
  if (c != 0) out.terms.emplace(Word{}, c);
  return out;
}

std::vector<Word> module_basis(int n, int r, int k) {
  if (n < 2 || r < 0 || k < 0) throw std::invalid_argument("module_basis: bad arguments");
  auto by_length = words_by_length(r + k, k);
  std::vector<Word> out;
  for (auto& bucket : by_length) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

std::map<Word, ArnoldElement> decompose(const ArnoldElement& x, int k) {
  if (k < 0 || k > x.ctx.r) throw std::invalid_argument("decompose: bad k");
  const AlgebraContext local{x.ctx.n, x.ctx.r - k};
  std::map<Word, ArnoldElement> parts;
  for (auto& [w, c] : x.terms) {
    std::size_t cut = 0;
    while (cut < w.size() && w[cut].first <= k) ++cut;
    Word head(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut));
    Word tail;
    tail.reserve(w.size() - cut);
    for (std::size_t t = cut; t < w.size(); ++t)
      tail.push_back({w[t].first - k, w[t].second - k});
    auto it = parts.find(head);
    if (it == parts.end()) it = parts.emplace(head, zero(local)).first;
    add_term(it->second.terms, tail, c);
  }
  for (auto it = parts.begin(); it != parts.end();)
    it = it->second.is_zero() ? parts.erase(it) : std::next(it);
  return parts;
}

ArnoldElement recompose(const std::map<Word, ArnoldElement>& parts, int n, int r,
                        int k) {
  const AlgebraContext amb{n, r + k};
  Injection shift{r + k, {}};
  for (int i = 1; i <= r; ++i) shift.images.push_back(i + k);
  ArnoldElement out = zero(amb);
  for (auto& [head, coeff] : parts) {
    if (!(coeff.ctx == AlgebraContext{n, r}))
      throw std::invalid_argument("recompose: coefficient context mismatch");
    out += multiply(monomial(amb, head), relabel(coeff, shift));
  }
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << "*";
    os << "w[" << w[i].first << "," << w[i].second << "]";
  }
  return os.str();
}

std::string to_string(const ArnoldElement& x) {
  if (x.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [w, c] : x.terms) {
    const bool neg = c < 0;
    const Rat a = neg ? Rat(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (w.empty())
      os << rat_to_string(a);
    else if (a == 1)
      os << word_to_string(w);
    else
      os << rat_to_string(a) << "*" << word_to_string(w);
  }
  return os.str();
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw std::invalid_argument("parse error at position " + std::to_string(i) +
                                  ": expected '" + std::string(1, c) + "'");
  }
  std::string digits() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start)
      throw std::invalid_argument("parse error at position " + std::to_string(i) +
                                  ": expected an integer");
    return s.substr(start, i - start);
  }
  int small_integer() { return std::stoi(digits()); }
};

}  // namespace

ArnoldElement parse_element(const AlgebraContext& ctx, const std::string& text) {
  check_context(ctx);
  Cursor cur{text};
  ArnoldElement out = zero(ctx);
  if (cur.eof()) throw std::invalid_argument("parse error: empty input");
  bool first_term = true;
  while (!cur.eof()) {
    Rat coeff(1);
    if (cur.accept('-'))
      coeff = -1;
    else if (!cur.accept('+') && !first_term)
      throw std::invalid_argument("parse error: expected '+' or '-' between terms");
    first_term = false;

    std::vector<Factor> factors;
    bool saw_atom = false;
    do {
      if (cur.peek() == 'w') {
        cur.expect('w');
        cur.expect('[');
        int a = cur.small_integer();
        cur.expect(',');
        int b = cur.small_integer();
        cur.expect(']');
        factors.push_back({a, b});
      } else {
        Rat num(cur.digits());
        if (cur.accept('/')) {
          Rat den(cur.digits());
          if (den == 0) throw std::invalid_argument("parse error: zero denominator");
          coeff *= num / den;
        } else {
          coeff *= num;
        }
      }
      saw_atom = true;
    } while (cur.accept('*'));
    if (!saw_atom) throw std::invalid_argument("parse error: empty term");

    ArnoldElement piece = normal_form(ctx, factors);
    piece *= coeff;
    out += piece;
  }
  return out;
}

}  // namespace escops::arnold
