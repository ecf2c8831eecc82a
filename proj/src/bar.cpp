#include "escops/bar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "escops/escoperad.hpp"
#include "escops/perm.hpp"

namespace escops::bar {

namespace {

SparseVec basis_vec(int i) { return SparseVec{{i, Rat(1)}}; }

void add_scaled(SparseVec& acc, const SparseVec& v, const Rat& c) {
  if (c == 0) return;
  for (auto& [i, x] : v) {
    auto it = acc.find(i);
    if (it == acc.end()) {
      acc.emplace(i, x * c);
    } else {
      it->second += x * c;
      if (it->second == 0) acc.erase(it);
    }
  }
}

SparseVec apply_map(const DenseMap& f, const SparseVec& v) {
  SparseVec out;
  for (auto& [i, c] : v) add_scaled(out, f[static_cast<std::size_t>(i)], c);
  return out;
}

/// Index of the single unit coordinate; requires an augmentation-adapted
/// basis (unit is a basis vector, augmentation its indicator).
int unit_index(const AugmentedAlgebra& a) {
  if (a.unit.size() != 1 || a.unit.begin()->second != 1)
    throw std::invalid_argument(a.name + ": unit is not a basis vector");
  const int u = a.unit.begin()->first;
  for (int i = 0; i < a.dim(); ++i)
    if (a.augmentation[static_cast<std::size_t>(i)] != (i == u ? 1 : 0))
      throw std::invalid_argument(a.name + ": basis is not augmentation-adapted");
  return u;
}

}  // namespace

long long AugmentedAlgebra::dim_in_degree(int d) const {
  long long out = 0;
  for (int deg : degrees)
    if (deg == d) ++out;
  return out;
}

SparseVec AugmentedAlgebra::product(int i, int j) const {
  auto it = products.find({i, j});
  return it == products.end() ? SparseVec{} : it->second;
}

SparseVec AugmentedAlgebra::multiply_vec(const SparseVec& u, const SparseVec& v) const {
  SparseVec out;
  for (auto& [i, ci] : u)
    for (auto& [j, cj] : v) add_scaled(out, product(i, j), ci * cj);
  return out;
}

Rat AugmentedAlgebra::augment(const SparseVec& v) const {
  Rat out(0);
  for (auto& [i, c] : v) out += augmentation[static_cast<std::size_t>(i)] * c;
  return out;
}

void AugmentedAlgebra::validate() const {
  const std::size_t d = degrees.size();
  if (labels.size() != d || augmentation.size() != d)
    throw std::invalid_argument(name + ": basis arrays disagree in length");
  for (auto& [key, vec] : products) {
    if (key.first < 0 || key.first >= dim() || key.second < 0 || key.second >= dim())
      throw std::invalid_argument(name + ": product index out of range");
    const int expect = degrees[static_cast<std::size_t>(key.first)] +
                       degrees[static_cast<std::size_t>(key.second)];
    for (auto& [t, c] : vec)
      if (t < 0 || t >= dim() || degrees[static_cast<std::size_t>(t)] != expect)
        throw std::invalid_argument(name + ": product is not degree-homogeneous");
  }
  for (auto& [i, c] : unit)
    if (degrees[static_cast<std::size_t>(i)] != 0)
      throw std::invalid_argument(name + ": unit is not in degree 0");
  for (int i = 0; i < dim(); ++i) {
    if (multiply_vec(unit, basis_vec(i)) != basis_vec(i) ||
        multiply_vec(basis_vec(i), unit) != basis_vec(i))
      throw std::invalid_argument(name + ": unit law fails on " +
                                  labels[static_cast<std::size_t>(i)]);
    if (degrees[static_cast<std::size_t>(i)] != 0 &&
        augmentation[static_cast<std::size_t>(i)] != 0)
      throw std::invalid_argument(name + ": augmentation outside degree 0");
  }
  if (augment(unit) != 1)
    throw std::invalid_argument(name + ": augmentation does not split the unit");
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (augment(product(i, j)) !=
          augmentation[static_cast<std::size_t>(i)] *
              augmentation[static_cast<std::size_t>(j)])
        throw std::invalid_argument(name + ": augmentation is not multiplicative");
  if (dim() <= 32) {
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        for (int t = 0; t < dim(); ++t)
          if (multiply_vec(product(i, j), basis_vec(t)) !=
              multiply_vec(basis_vec(i), product(j, t)))
            throw std::invalid_argument(name + ": product is not associative");
  }
}

bool AugmentedAlgebra::connected() const {
  int zero_count = 0, zero_index = -1;
  for (int i = 0; i < dim(); ++i) {
    if (degrees[static_cast<std::size_t>(i)] < 0) return false;
    if (degrees[static_cast<std::size_t>(i)] == 0) {
      ++zero_count;
      zero_index = i;
    }
  }
  return zero_count == 1 && unit == basis_vec(zero_index);
}

AugmentedAlgebra rational_algebra() {
  AugmentedAlgebra a;
  a.name = "Q";
  a.degrees = {0};
  a.labels = {"1"};
  a.products[{0, 0}] = basis_vec(0);
  a.unit = basis_vec(0);
  a.augmentation = {Rat(1)};
  return a;
}

AugmentedAlgebra square_zero_algebra(int generator_degree) {
  if (generator_degree < 1)
    throw std::invalid_argument("square-zero generator needs positive degree");
  AugmentedAlgebra a;
  a.name = "Q[x]/(x^2)";
  a.degrees = {0, generator_degree};
  a.labels = {"1", "x"};
  a.products[{0, 0}] = basis_vec(0);
  a.products[{0, 1}] = basis_vec(1);
  a.products[{1, 0}] = basis_vec(1);
  a.unit = basis_vec(0);
  a.augmentation = {Rat(1), Rat(0)};
  return a;
}

AugmentedAlgebra fault_target_algebra() {
  AugmentedAlgebra a;
  a.name = "Q[x,y]/(x^2,xy,y^2)";
  a.degrees = {0, 1, 1};
  a.labels = {"1", "x", "y"};
  for (int i = 0; i < 3; ++i) {
    a.products[{0, i}] = basis_vec(i);
    a.products[{i, 0}] = basis_vec(i);
  }
  a.unit = basis_vec(0);
  a.augmentation = {Rat(1), Rat(0), Rat(0)};
  return a;
}

AugmentedAlgebra from_arnold(const arnold::AlgebraContext& ctx) {
  AugmentedAlgebra a;
  a.name = "e_" + std::to_string(ctx.n) + "(" + std::to_string(ctx.r) + ")";
  const auto words = arnold::basis(ctx);
  std::map<arnold::Word, int> index;
  for (std::size_t i = 0; i < words.size(); ++i) {
    index.emplace(words[i], static_cast<int>(i));
    a.degrees.push_back(arnold::word_degree(ctx, words[i]));
    a.labels.push_back(arnold::word_to_string(words[i]));
    a.augmentation.push_back(words[i].empty() ? Rat(1) : Rat(0));
  }
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j) {
      const auto p = arnold::multiply(arnold::monomial(ctx, words[i]),
                                      arnold::monomial(ctx, words[j]));
      SparseVec vec;
      for (auto& [w, c] : p.terms) vec.emplace(index.at(w), c);
      if (!vec.empty()) a.products[{static_cast<int>(i), static_cast<int>(j)}] = vec;
    }
  a.unit = basis_vec(index.at({}));
  return a;
}

AugmentedAlgebra from_perm(int l) {
  AugmentedAlgebra a;
  a.name = "e_1(" + std::to_string(l) + ")";
  const auto perms = e1::all_perms(l);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    a.degrees.push_back(0);
    a.labels.push_back(e1::perm_to_string(perms[i]));
    a.products[{static_cast<int>(i), static_cast<int>(i)}] =
        basis_vec(static_cast<int>(i));
    a.unit.emplace(static_cast<int>(i), Rat(1));
    // augmentation = evaluation at the identity order, the first word in
    // lexicographic enumeration
    a.augmentation.push_back(i == 0 ? Rat(1) : Rat(0));
  }
  return a;
}

void check_algebra_map(const AugmentedAlgebra& src, const AugmentedAlgebra& tgt,
                       const DenseMap& f) {
  if (f.size() != static_cast<std::size_t>(src.dim()))
    throw std::invalid_argument("algebra map: wrong number of basis images");
  for (int i = 0; i < src.dim(); ++i)
    for (auto& [t, c] : f[static_cast<std::size_t>(i)])
      if (t < 0 || t >= tgt.dim() ||
          tgt.degrees[static_cast<std::size_t>(t)] !=
              src.degrees[static_cast<std::size_t>(i)])
        throw std::invalid_argument("algebra map: image not degree-preserving");
  if (apply_map(f, src.unit) != tgt.unit)
    throw std::invalid_argument("algebra map: unit not preserved");
  for (int i = 0; i < src.dim(); ++i)
    for (int j = 0; j < src.dim(); ++j)
      if (apply_map(f, src.product(i, j)) !=
          tgt.multiply_vec(f[static_cast<std::size_t>(i)],
                           f[static_cast<std::size_t>(j)]))
        throw std::invalid_argument("algebra map: not multiplicative on " +
                                    src.labels[static_cast<std::size_t>(i)] + " * " +
                                    src.labels[static_cast<std::size_t>(j)]);
}

DenseMap lambda_inclusion_map(int n, int k, int l) {
  const arnold::AlgebraContext src{n, l}, tgt{n, k + l};
  arnold::Injection j{k + l, {}};
  for (int i = 1; i <= l; ++i) j.images.push_back(k + i);
  const auto tgt_words = arnold::basis(tgt);
  std::map<arnold::Word, int> index;
  for (std::size_t i = 0; i < tgt_words.size(); ++i)
    index.emplace(tgt_words[i], static_cast<int>(i));
  DenseMap out;
  for (auto& w : arnold::basis(src)) {
    const auto img = arnold::relabel(arnold::monomial(src, w), j);
    SparseVec vec;
    for (auto& [tw, c] : img.terms) vec.emplace(index.at(tw), c);
    out.push_back(std::move(vec));
  }
  return out;
}

DenseMap ideal_killing_map(const AugmentedAlgebra& src, const AugmentedAlgebra& tgt) {
  const int u = unit_index(src);
  DenseMap out(static_cast<std::size_t>(src.dim()));
  out[static_cast<std::size_t>(u)] = tgt.unit;
  return out;
}

DenseMap diagonal_fault_map() {
  DenseMap out(2);
  out[0] = basis_vec(0);
  out[1] = SparseVec{{1, Rat(1)}, {2, Rat(1)}};
  return out;
}

long long BarComplex::dim(int internal_degree, int weight) const {
  if (internal_degree < 0 || internal_degree > bound || weight < 0) return 0;
  const auto& row = blocks[static_cast<std::size_t>(internal_degree)];
  if (static_cast<std::size_t>(weight) >= row.size()) return 0;
  return static_cast<long long>(row[static_cast<std::size_t>(weight)].size());
}

BarComplex build_bar(const AugmentedAlgebra& B, const AugmentedAlgebra& A,
                     const AugmentedAlgebra& C, const DenseMap& f, const DenseMap& g,
                     int bound) {
  if (bound < 0) throw std::invalid_argument("bar: negative degree bound");
  B.validate();
  A.validate();
  C.validate();
  check_algebra_map(A, B, f);
  check_algebra_map(A, C, g);
  if (!A.connected())
    throw std::invalid_argument(
        "bar: middle algebra must be connected, otherwise the weight is "
        "unbounded at fixed total degree");
  const int u = unit_index(A);
  std::vector<int> ideal;
  for (int i = 0; i < A.dim(); ++i)
    if (i != u) ideal.push_back(i);

  // ideal words grouped as groups[total ideal degree][weight]
  std::vector<std::vector<std::vector<std::vector<int>>>> groups(
      static_cast<std::size_t>(bound) + 1);
  for (auto& row : groups) row.resize(1);
  groups[0][0].push_back({});
  std::vector<std::pair<int, std::vector<int>>> level{{0, {}}};
  int weight = 0;
  while (!level.empty()) {
    ++weight;
    std::vector<std::pair<int, std::vector<int>>> next;
    for (auto& [t, seq] : level)
      for (int gidx : ideal) {
        const int t2 = t + A.degrees[static_cast<std::size_t>(gidx)];
        if (t2 > bound) continue;
        auto seq2 = seq;
        seq2.push_back(gidx);
        auto& row = groups[static_cast<std::size_t>(t2)];
        if (static_cast<std::size_t>(weight) >= row.size())
          row.resize(static_cast<std::size_t>(weight) + 1);
        row[static_cast<std::size_t>(weight)].push_back(seq2);
        next.emplace_back(t2, std::move(seq2));
      }
    level = std::move(next);
  }

  BarComplex bar;
  bar.B = B;
  bar.A = A;
  bar.C = C;
  bar.f = f;
  bar.g = g;
  bar.bound = bound;
  bar.blocks.resize(static_cast<std::size_t>(bound) + 1);
  bar.diff.resize(static_cast<std::size_t>(bound) + 1);

  std::vector<std::vector<std::map<BarComplex::Summand, int>>> index(
      static_cast<std::size_t>(bound) + 1);
  for (int D = 0; D <= bound; ++D) {
    auto& row = bar.blocks[static_cast<std::size_t>(D)];
    for (int b = 0; b < B.dim(); ++b)
      for (int c = 0; c < C.dim(); ++c) {
        const int rem = D - B.degrees[static_cast<std::size_t>(b)] -
                        C.degrees[static_cast<std::size_t>(c)];
        if (rem < 0 || rem > bound) continue;
        const auto& grp = groups[static_cast<std::size_t>(rem)];
        for (std::size_t p = 0; p < grp.size(); ++p)
          for (auto& seq : grp[p]) {
            if (row.size() <= p) row.resize(p + 1);
            row[p].push_back(BarComplex::Summand{b, seq, c});
          }
      }
    auto& idx = index[static_cast<std::size_t>(D)];
    idx.resize(row.size());
    for (std::size_t p = 0; p < row.size(); ++p)
      for (std::size_t s = 0; s < row[p].size(); ++s)
        idx[p].emplace(row[p][s], static_cast<int>(s));
  }

  for (int D = 0; D <= bound; ++D) {
    const auto& row = bar.blocks[static_cast<std::size_t>(D)];
    auto& drow = bar.diff[static_cast<std::size_t>(D)];
    drow.resize(row.size());
    for (std::size_t p = 1; p < row.size(); ++p) {
      SparseMatrix d(static_cast<int>(row[p - 1].size()),
                     static_cast<int>(row[p].size()));
      const auto& tgt_idx = index[static_cast<std::size_t>(D)][p - 1];
      for (std::size_t s = 0; s < row[p].size(); ++s) {
        const auto& sm = row[p][s];
        const int bdeg = B.degrees[static_cast<std::size_t>(sm.b)];
        // merge the first ideal factor into B
        {
          const int sign = bdeg % 2 != 0 ? -1 : 1;
          const SparseVec vec = B.multiply_vec(
              basis_vec(sm.b), f[static_cast<std::size_t>(sm.a.front())]);
          BarComplex::Summand t{0, {sm.a.begin() + 1, sm.a.end()}, sm.c};
          for (auto& [b2, v] : vec) {
            t.b = b2;
            d.add_to(tgt_idx.at(t), static_cast<int>(s), v * sign);
          }
        }
        // merge adjacent ideal factors
        int eps = bdeg;
        for (std::size_t i = 0; i + 1 < sm.a.size(); ++i) {
          eps += A.degrees[static_cast<std::size_t>(sm.a[i])] - 1;
          const int sign = eps % 2 != 0 ? -1 : 1;
          const SparseVec prod = A.product(sm.a[i], sm.a[i + 1]);
          if (prod.empty()) continue;
          BarComplex::Summand t{sm.b, {}, sm.c};
          t.a.assign(sm.a.begin(), sm.a.end());
          t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i) + 1);
          for (auto& [a2, v] : prod) {
            t.a[i] = a2;
            d.add_to(tgt_idx.at(t), static_cast<int>(s), v * sign);
          }
        }
        // merge the last ideal factor into C
        {
          int eps_last = bdeg;
          for (std::size_t i = 0; i < sm.a.size(); ++i)
            eps_last += A.degrees[static_cast<std::size_t>(sm.a[i])] - 1;
          const int sign = eps_last % 2 != 0 ? -1 : 1;
          const SparseVec vec = C.multiply_vec(
              g[static_cast<std::size_t>(sm.a.back())], basis_vec(sm.c));
          BarComplex::Summand t{sm.b, {sm.a.begin(), sm.a.end() - 1}, 0};
          for (auto& [c2, v] : vec) {
            t.c = c2;
            d.add_to(tgt_idx.at(t), static_cast<int>(s), v * sign);
          }
        }
      }
      drow[p] = std::move(d);
    }
    for (std::size_t p = 2; p < row.size(); ++p)
      if (!SparseMatrix::multiply(drow[p - 1], drow[p]).is_zero())
        throw std::logic_error("bar: d∘d ≠ 0 at internal degree " +
                               std::to_string(D) + ", weight " + std::to_string(p));
  }
  return bar;
}

long long TorTable::higher_total() const {
  long long out = 0;
  for (auto& [key, v] : higher) out += v;
  return out;
}

TorTable tor_dimensions(const BarComplex& bar) {
  TorTable out;
  out.bound = bar.bound;
  for (int D = 0; D <= bar.bound; ++D) {
    const auto& row = bar.blocks[static_cast<std::size_t>(D)];
    std::vector<long long> ranks(row.size() + 1, 0);
    for (std::size_t p = 1; p < row.size(); ++p)
      ranks[p] = lin::rank(bar.diff[static_cast<std::size_t>(D)][p]);
    const long long n0 = row.empty() ? 0 : static_cast<long long>(row[0].size());
    out.tor0[D] = ranks.size() > 1 ? n0 - ranks[1] : n0;
    for (std::size_t p = 1; p < row.size(); ++p) {
      const long long dim_p = static_cast<long long>(row[p].size());
      const long long h = (dim_p - ranks[p]) - ranks[p + 1];
      if (h != 0) out.higher[{D, static_cast<int>(p)}] = h;
    }
  }
  return out;
}

CollapseReport em_collapse_check(int m, int n, int k, int l, int bound) {
  if (m < 1 || n <= m) throw std::invalid_argument("collapse check: need n > m >= 1");
  if (k < 0 || l < 0 || k + l > 5)
    throw std::invalid_argument("collapse check: k+l must stay <= 5");
  if (bound < 0) throw std::invalid_argument("collapse check: negative bound");

  CollapseReport report;
  report.m = m;
  report.n = n;
  report.k = k;
  report.l = l;
  report.bound = bound;
  report.expected = esc::esc_hilbert(esc::EscContext{m, n, k, l});

  std::vector<long long> c_dims;
  {
    const esc::Component cc{false, m, l};
    c_dims = esc::component_hilbert(cc);
  }

  if (k == 0) {
    // f is the identity inclusion, so the standard bar contraction applies:
    // the homology is the right coefficient algebra itself
    report.method = "contraction";
    report.tor.bound = bound;
    for (int D = 0; D <= bound; ++D)
      report.tor.tor0[D] =
          static_cast<std::size_t>(D) < c_dims.size() ? c_dims[static_cast<std::size_t>(D)] : 0;
  } else {
    // the right map kills the augmentation ideal, so the bar differential
    // never touches the C factor: the complex splits as bar(B, A, Q) ⊗ C
    report.method = "coefficient-splitting";
    const AugmentedAlgebra B = from_arnold({n, k + l});
    const AugmentedAlgebra A = from_arnold({n, l});
    const AugmentedAlgebra Q = rational_algebra();
    const BarComplex core = build_bar(B, A, Q, lambda_inclusion_map(n, k, l),
                                      ideal_killing_map(A, Q), bound);
    const TorTable base = tor_dimensions(core);
    report.tor.bound = bound;
    for (int D = 0; D <= bound; ++D) {
      long long total = 0;
      for (std::size_t e = 0; e < c_dims.size(); ++e) {
        const int d0 = D - static_cast<int>(e);
        auto it = base.tor0.find(d0);
        if (it != base.tor0.end()) total += it->second * c_dims[e];
      }
      report.tor.tor0[D] = total;
    }
    for (auto& [key, v] : base.higher)
      for (std::size_t e = 0; e < c_dims.size(); ++e) {
        const int D = key.first + static_cast<int>(e);
        if (D <= bound && v * c_dims[e] != 0)
          report.tor.higher[{D, key.second}] += v * c_dims[e];
      }
  }

  report.pass = true;
  for (int D = 0; D <= bound && report.pass; ++D) {
    const long long want = static_cast<std::size_t>(D) < report.expected.size()
                               ? report.expected[static_cast<std::size_t>(D)]
                               : 0;
    const long long got = report.tor.tor0.at(D);
    if (got != want) {
      report.pass = false;
      report.failure = "weight-0 dimension mismatch in degree " + std::to_string(D) +
                       ": bar gives " + std::to_string(got) + ", component has " +
                       std::to_string(want);
    }
  }
  if (report.pass && report.tor.higher_total() != 0) {
    const auto& [key, v] = *report.tor.higher.begin();
    report.pass = false;
    report.failure = "nonzero weight-" + std::to_string(key.second) +
                     " homology in degree " + std::to_string(key.first) + " (dim " +
                     std::to_string(v) + ")";
  }
  return report;
}

}  // namespace escops::bar
