#include "escops/oracle.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <stdexcept>

namespace escops::oracle {

namespace {

// Oriented/sorted form of a word in the free graded-commutative algebra on
// generators of degree n-1, with square-containing words dropped (they lie
// in the monomial ideal quotiented out of the spanning basis). Kept separate
// from the rewriting engine's version on purpose.
std::optional<std::pair<Word, int>> straighten(int n, std::vector<Factor> w) {
  int sign = 1;
  const int orient = (n % 2 == 0) ? 1 : -1;
  const int swap_sign = (n % 2 == 0) ? -1 : 1;
  for (auto& f : w)
    if (f.first > f.second) {
      std::swap(f.first, f.second);
      sign *= orient;
    }
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      std::swap(w[j], w[j - 1]);
      sign *= swap_sign;
    }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return std::nullopt;
  return std::make_pair(std::move(w), sign);
}

// All p-subsets of {0..count-1}, emitted in lexicographic order.
void for_each_subset(int count, int p, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick(static_cast<std::size_t>(p));
  std::function<void(int, int)> rec = [&](int start, int chosen) {
    if (chosen == p) {
      fn(pick);
      return;
    }
    for (int v = start; v <= count - (p - chosen); ++v) {
      pick[static_cast<std::size_t>(chosen)] = v;
      rec(v + 1, chosen + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

Oracle::Oracle(int n, int r) : n_(n), r_(r) {
  if (n < 2) throw std::invalid_argument("oracle: n must be >= 2");
  if (r < 0) throw std::invalid_argument("oracle: r must be >= 0");
  if (r > 7) throw std::invalid_argument("oracle: arity capped at 7");
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) gens_.push_back({i, j});
}

Oracle::DegreeData& Oracle::degree_data(int p) {
  auto it = by_length_.find(p);
  if (it != by_length_.end()) return it->second;
  DegreeData data;
  const int gcount = static_cast<int>(gens_.size());
  if (p >= 0 && p <= gcount) {
    for_each_subset(gcount, p, [&](const std::vector<int>& pick) {
      Word w;
      w.reserve(pick.size());
      for (int g : pick) w.push_back(gens_[static_cast<std::size_t>(g)]);
      data.index.emplace(w, static_cast<int>(data.words.size()));
      data.words.push_back(std::move(w));
    });
  }
  if (p >= 2) {
    // Arnold relators in both chiralities (cyclic rotations repeat the same
    // algebra element), times every (p-2)-subset of generators.
    const std::size_t full = data.words.size();
    bool saturated = false;
    for (int a = 1; a <= r_ && !saturated; ++a)
      for (int b = a + 1; b <= r_ && !saturated; ++b)
        for (int c = b + 1; c <= r_ && !saturated; ++c)
          for (auto& [i, j, k] : {std::array<int, 3>{a, b, c}, std::array<int, 3>{a, c, b}}) {
            const std::array<std::array<Factor, 2>, 3> relator = {{
                {{{i, j}, {j, k}}},
                {{{j, k}, {k, i}}},
                {{{k, i}, {i, j}}},
            }};
            for_each_subset(gcount, p - 2, [&](const std::vector<int>& pick) {
              if (saturated) return;
              lin::SparseVec row;
              for (auto& term : relator) {
                std::vector<Factor> word;
                word.reserve(static_cast<std::size_t>(p));
                for (int g : pick) word.push_back(gens_[static_cast<std::size_t>(g)]);
                word.push_back(term[0]);
                word.push_back(term[1]);
                if (auto st = straighten(n_, std::move(word))) {
                  const int col = data.index.at(st->first);
                  auto rit = row.find(col);
                  if (rit == row.end())
                    row.emplace(col, Rat(st->second));
                  else {
                    rit->second += st->second;
                    if (rit->second == 0) row.erase(rit);
                  }
                }
              }
              data.relators.insert(row);
              if (static_cast<std::size_t>(data.relators.rank()) == full)
                saturated = true;
            });
            if (saturated) break;
          }
  }
  return by_length_.emplace(p, std::move(data)).first->second;
}

const std::vector<Word>& Oracle::spanning_words(int p) { return degree_data(p).words; }

long long Oracle::dim(int degree) {
  if (degree < 0) return 0;
  if (degree == 0) return 1;
  if (degree % (n_ - 1) != 0) return 0;
  const int p = degree / (n_ - 1);
  if (p > static_cast<int>(gens_.size())) return 0;
  DegreeData& data = degree_data(p);
  return static_cast<long long>(data.words.size()) - data.relators.rank();
}

std::vector<long long> Oracle::dims(int max_degree) {
  std::vector<long long> out(static_cast<std::size_t>(max_degree) + 1, 0);
  for (int d = 0; d <= max_degree; ++d) out[static_cast<std::size_t>(d)] = dim(d);
  return out;
}

std::map<Word, Rat> Oracle::normal_form(const std::vector<Factor>& word) {
  for (auto& f : word) {
    if (f.first == f.second)
      throw std::invalid_argument("oracle: generator w[i,i] rejected");
    if (f.first < 1 || f.first > r_ || f.second < 1 || f.second > r_)
      throw std::invalid_argument("oracle: generator index out of range");
  }
  std::map<Word, Rat> out;
  auto st = straighten(n_, word);
  if (!st) return out;
  const int p = static_cast<int>(st->first.size());
  if (p > static_cast<int>(gens_.size())) return out;
  DegreeData& data = degree_data(p);
  lin::SparseVec v;
  v.emplace(data.index.at(st->first), Rat(st->second));
  lin::SparseVec reduced = data.relators.reduce(v);
  for (auto& [col, val] : reduced)
    out.emplace(data.words[static_cast<std::size_t>(col)], val);
  return out;
}

std::vector<long long> quotient_dims(int n, int r, int max_degree) {
  Oracle o(n, r);
  return o.dims(max_degree);
}

std::map<Word, Rat> oracle_normal_form(const std::vector<Factor>& word, int n, int r) {
  Oracle o(n, r);
  return o.normal_form(word);
}

}  // namespace escops::oracle
