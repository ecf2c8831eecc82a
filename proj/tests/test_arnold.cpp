#include <numeric>
#include <random>

#include "doctest.h"
#include "escops/arnold.hpp"
#include "escops/testhooks.hpp"

using namespace escops;
using arnold::AlgebraContext;
using arnold::ArnoldElement;
using arnold::Factor;
using arnold::Word;

namespace {

ArnoldElement random_element(std::mt19937_64& eng, const AlgebraContext& ctx,
                             int max_terms = 3, int max_len = 3) {
  ArnoldElement out = arnold::zero(ctx);
  const int terms = 1 + static_cast<int>(eng() % static_cast<unsigned>(max_terms));
  for (int t = 0; t < terms; ++t) {
    std::vector<Factor> word;
    const int len = ctx.r < 2
                        ? 0
                        : static_cast<int>(eng() % static_cast<unsigned>(max_len + 1));
    for (int i = 0; i < len; ++i) {
      int a = 1 + static_cast<int>(eng() % static_cast<unsigned>(ctx.r));
      int b = 1 + static_cast<int>(eng() % static_cast<unsigned>(ctx.r));
      if (a == b) b = (b % ctx.r) + 1;
      word.push_back({a, b});
    }
    ArnoldElement piece = arnold::normal_form(ctx, word);
    piece *= Rat(1 + static_cast<long long>(eng() % 5)) *
             (eng() % 2 == 0 ? 1 : -1);
    out += piece;
  }
  return out;
}

long long factorial(int r) {
  long long f = 1;
  for (int i = 2; i <= r; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("symmetry orientation carries the dimension parity sign") {
  // w[2,1] = (-1)^n w[1,2]
  auto odd = arnold::normal_form({3, 2}, {{2, 1}});
  CHECK(arnold::to_string(odd) == "-w[1,2]");
  auto even = arnold::normal_form({2, 2}, {{2, 1}});
  CHECK(arnold::to_string(even) == "w[1,2]");
}

TEST_CASE("three-term relators vanish for every ordered triple") {
  for (int n : {2, 3})
    for (int r = 3; r <= 5; ++r) {
      const AlgebraContext ctx{n, r};
      for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j)
          for (int k = 1; k <= r; ++k) {
            if (i == j || j == k || i == k) continue;
            ArnoldElement rel = arnold::normal_form(ctx, {{i, j}, {j, k}});
            rel += arnold::normal_form(ctx, {{j, k}, {k, i}});
            rel += arnold::normal_form(ctx, {{k, i}, {i, j}});
            CAPTURE(n);
            CAPTURE(r);
            CHECK(rel.is_zero());
          }
    }
}

TEST_CASE("squares vanish for both parities") {
  CHECK(arnold::multiply(arnold::parse_element({2, 2}, "w[1,2]"),
                         arnold::parse_element({2, 2}, "w[1,2]"))
            .is_zero());
  CHECK(arnold::multiply(arnold::parse_element({3, 2}, "w[1,2]"),
                         arnold::parse_element({3, 2}, "w[1,2]"))
            .is_zero());
}

TEST_CASE("normal form straightens an inadmissible product") {
  auto x = arnold::normal_form({2, 3}, {{1, 3}, {1, 2}});
  CHECK(arnold::to_string(x) == "-w[1,2]*w[2,3] + w[1,3]*w[2,3]");
  // idempotent on its own output
  for (auto& [w, c] : x.terms) {
    auto again = arnold::normal_form({2, 3}, w);
    CHECK(again.terms.size() == 1);
    CHECK(again.terms.count(w) == 1);
  }
}

TEST_CASE("multiply matches the straightening engine") {
  auto a = arnold::parse_element({2, 3}, "w[1,2]");
  auto b = arnold::parse_element({2, 3}, "w[1,3]");
  CHECK(arnold::to_string(arnold::multiply(a, b)) ==
        "w[1,2]*w[2,3] - w[1,3]*w[2,3]");
}

TEST_CASE("unit is neutral and contexts must match") {
  const AlgebraContext ctx{2, 4};
  std::mt19937_64 eng(11);
  auto x = random_element(eng, ctx);
  CHECK(arnold::multiply(arnold::unit(ctx), x) == x);
  CHECK_THROWS_AS(arnold::multiply(x, arnold::unit({2, 3})), std::invalid_argument);
}

TEST_CASE("graded commutativity") {
  std::mt19937_64 eng(20260818);
  for (int n : {2, 3}) {
    const AlgebraContext ctx{n, 4};
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Factor> wa, wb;
      const int la = static_cast<int>(eng() % 3), lb = static_cast<int>(eng() % 3);
      for (int i = 0; i < la; ++i) {
        int u = 1 + static_cast<int>(eng() % 4), v = 1 + static_cast<int>(eng() % 4);
        if (u == v) v = (v % 4) + 1;
        wa.push_back({u, v});
      }
      for (int i = 0; i < lb; ++i) {
        int u = 1 + static_cast<int>(eng() % 4), v = 1 + static_cast<int>(eng() % 4);
        if (u == v) v = (v % 4) + 1;
        wb.push_back({u, v});
      }
      auto a = arnold::normal_form(ctx, wa);
      auto b = arnold::normal_form(ctx, wb);
      auto ab = arnold::multiply(a, b);
      auto ba = arnold::multiply(b, a);
      const int sign =
          ((n - 1) * static_cast<int>(wa.size()) * (n - 1) *
               static_cast<int>(wb.size()) % 2 == 0)
              ? 1
              : -1;
      ba *= Rat(sign);
      CHECK(ab == ba);
    }
  }
}

TEST_CASE("basis counts follow the falling-factorial pattern") {
  auto h23 = arnold::hilbert_polynomial({2, 3});
  CHECK(h23 == std::vector<long long>{1, 3, 2});
  auto h34 = arnold::hilbert_polynomial({3, 4});
  CHECK(h34 == std::vector<long long>{1, 0, 6, 0, 11, 0, 6});
  for (int n : {2, 3})
    for (int r = 0; r <= 5; ++r) {
      long long total = 0;
      for (long long c : arnold::hilbert_polynomial({n, r})) total += c;
      CHECK(total == factorial(r));
      // product formula: prod_{j=1}^{r-1} (1 + j t^{n-1})
      auto h = arnold::hilbert_polynomial({n, r});
      std::vector<long long> expect{1};
      for (int j = 1; j < r; ++j) {
        std::vector<long long> next(expect.size() + static_cast<std::size_t>(n - 1), 0);
        for (std::size_t d = 0; d < expect.size(); ++d) {
          next[d] += expect[d];
          next[d + static_cast<std::size_t>(n - 1)] += j * expect[d];
        }
        expect = std::move(next);
      }
      CHECK(h == expect);
    }
  CHECK(arnold::basis({2, 3}).size() == 6);
  CHECK(arnold::basis({2, 3}, 1).size() == 3);
}

TEST_CASE("relabel on generators and functoriality") {
  arnold::Injection j{3, {1, 3}};
  auto x = arnold::parse_element({2, 2}, "w[1,2]");
  CHECK(arnold::to_string(arnold::relabel(x, j)) == "w[1,3]");

  std::mt19937_64 eng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const AlgebraContext ctx{static_cast<int>(2 + eng() % 2), 3};
    auto y = random_element(eng, ctx);
    // random injections {1..3} -> {1..4} -> {1..5}
    auto random_injection = [&](int from, int to) {
      std::vector<int> pool(static_cast<std::size_t>(to));
      std::iota(pool.begin(), pool.end(), 1);
      for (std::size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[eng() % i]);
      pool.resize(static_cast<std::size_t>(from));
      return arnold::Injection{to, pool};
    };
    auto g = random_injection(3, 4);
    auto h = random_injection(4, 5);
    CHECK(arnold::relabel(arnold::relabel(y, g), h) ==
          arnold::relabel(y, arnold::Injection::compose(h, g)));
    // algebra map
    auto z = random_element(eng, ctx);
    CHECK(arnold::relabel(arnold::multiply(y, z), g) ==
          arnold::multiply(arnold::relabel(y, g), arnold::relabel(z, g)));
  }
}

TEST_CASE("cocompose generator rules") {
  const AlgebraContext ctx{2, 3};
  auto cross = arnold::cocompose(arnold::parse_element(ctx, "w[1,3]"), {2, 1});
  REQUIRE(cross.terms.size() == 1);
  {
    auto& [label, coeff] = *cross.terms.begin();
    CHECK(coeff == 1);
    CHECK(label.base == Word{{1, 2}});
    CHECK(label.slots[0].empty());
    CHECK(label.slots[1].empty());
  }
  auto local = arnold::cocompose(arnold::parse_element(ctx, "w[1,2]"), {2, 1});
  REQUIRE(local.terms.size() == 1);
  {
    auto& [label, coeff] = *local.terms.begin();
    CHECK(coeff == 1);
    CHECK(label.base.empty());
    CHECK(label.slots[0] == Word{{1, 2}});
    CHECK(label.slots[1].empty());
  }
}

TEST_CASE("restrict keeps only the unit coefficient") {
  auto x = arnold::parse_element({3, 3}, "w[1,2]*w[2,3] + 5");
  auto y = arnold::restrict_element(x, 2);
  CHECK(y.ctx == AlgebraContext{2, 3});
  CHECK(arnold::to_string(y) == "5");
  CHECK_THROWS_AS(arnold::restrict_element(x, 3), std::invalid_argument);
}

TEST_CASE("module basis and decomposition over the high-index subalgebra") {
  auto mb = arnold::module_basis(2, 2, 1);
  REQUIRE(mb.size() == 3);
  CHECK(mb[0] == Word{});
  CHECK(mb[1] == Word{{1, 2}});
  CHECK(mb[2] == Word{{1, 3}});

  // w[1,3]*w[2,3] splits as w[1,3] times the subalgebra element w[2,3]
  auto x = arnold::parse_element({2, 3}, "w[1,3]*w[2,3]");
  auto parts = arnold::decompose(x, 1);
  REQUIRE(parts.size() == 1);
  CHECK(parts.begin()->first == Word{{1, 3}});
  CHECK(arnold::to_string(parts.begin()->second) == "w[1,2]");
  CHECK(arnold::recompose(parts, 2, 2, 1) == x);

  auto one = arnold::unit({2, 3});
  auto trivial = arnold::decompose(one, 1);
  REQUIRE(trivial.size() == 1);
  CHECK(trivial.begin()->first == Word{});
  CHECK(arnold::to_string(trivial.begin()->second) == "1");
}

TEST_CASE("decompose/recompose round trip and right-module linearity") {
  std::mt19937_64 eng(31415);
  for (int n : {2, 3})
    for (int r = 1; r <= 3; ++r)
      for (int k = 1; k + r <= 5; ++k) {
        const AlgebraContext amb{n, r + k};
        CHECK(arnold::module_basis(n, r, k).size() ==
              static_cast<std::size_t>(factorial(r + k) / factorial(r)));
        for (int trial = 0; trial < 10; ++trial) {
          auto x = random_element(eng, amb);
          auto parts = arnold::decompose(x, k);
          CHECK(arnold::recompose(parts, n, r, k) == x);
          // multiplying by a subalgebra element on the right acts on
          // coefficients without disturbing the basis monomials
          const AlgebraContext sub{n, r};
          auto a = random_element(eng, sub, 2, 1);
          arnold::Injection shift{r + k, {}};
          for (int i = 1; i <= r; ++i) shift.images.push_back(i + k);
          auto xa = arnold::multiply(x, arnold::relabel(a, shift));
          auto parts_xa = arnold::decompose(xa, k);
          for (auto& [b, coeff] : parts_xa)
            CHECK(coeff == arnold::multiply(parts.at(b), a));
        }
      }
}

TEST_CASE("parser round-trips the renderer") {
  std::mt19937_64 eng(777);
  for (int trial = 0; trial < 30; ++trial) {
    const AlgebraContext ctx{static_cast<int>(2 + eng() % 2),
                             static_cast<int>(2 + eng() % 3)};
    auto x = random_element(eng, ctx);
    x *= Rat(1) / static_cast<long long>(1 + eng() % 7);
    CHECK(arnold::parse_element(ctx, arnold::to_string(x)) == x);
  }
  auto y = arnold::parse_element({2, 3}, "w[1,2]*w[2,3] - 2*w[1,3]");
  CHECK(y.terms.size() == 2);
  CHECK(y.terms.at(Word{{1, 3}}) == Rat(-2));
  CHECK_THROWS_AS(arnold::parse_element({2, 3}, "w[1,2"), std::invalid_argument);
  CHECK_THROWS_AS(arnold::parse_element({2, 3}, "w[0,1]"), std::invalid_argument);
}

TEST_CASE("flipped symmetry sign breaks the relators (deliberate fault)") {
  escops::testhooks::flip_symmetry_sign = true;
  ArnoldElement rel = arnold::normal_form({2, 3}, {{1, 2}, {2, 3}});
  rel += arnold::normal_form({2, 3}, {{2, 3}, {3, 1}});
  rel += arnold::normal_form({2, 3}, {{3, 1}, {1, 2}});
  escops::testhooks::flip_symmetry_sign = false;
  CHECK_FALSE(rel.is_zero());
}
