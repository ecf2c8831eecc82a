#include <random>
#include <vector>

#include "doctest.h"
#include "escops/escoperad.hpp"

using namespace escops;
using arnold::Word;
using esc::Color;
using esc::ColoredBlocks;
using esc::ColoredInjection;
using esc::EscContext;
using esc::EscElement;
using esc::EscLabel;

namespace {

EscElement random_element(const EscContext& ctx, std::mt19937_64& eng) {
  const auto labels = esc::esc_basis(ctx);
  EscElement out = esc::esc_zero(ctx);
  const std::size_t terms = 1 + eng() % 3;
  for (std::size_t t = 0; t < terms; ++t) {
    const auto& lbl = labels[eng() % labels.size()];
    const Rat c = Rat(static_cast<long>(eng() % 7) - 3);
    out += esc::esc_monomial(ctx, lbl, c == 0 ? Rat(1) : c);
  }
  return out;
}

}  // namespace

TEST_CASE("context validation") {
  CHECK_THROWS(esc::esc_zero(EscContext{0, 2, 1, 1}));
  CHECK_THROWS(esc::esc_zero(EscContext{2, 2, 1, 1}));
  CHECK_THROWS(esc::esc_zero(EscContext{1, 2, 1, -1}));
  CHECK_THROWS(esc::esc_zero(EscContext{1, 2, 1, 1, Color::free_output}));
  CHECK_NOTHROW(esc::esc_zero(EscContext{1, 2, 2, 0, Color::free_output}));
}

TEST_CASE("basis and hilbert series of small mixed components") {
  const std::vector<long long> h11 = esc::esc_hilbert(EscContext{1, 2, 1, 1});
  CHECK(h11 == std::vector<long long>{1, 1});
  const auto basis11 = esc::esc_basis(EscContext{1, 2, 1, 1});
  REQUIRE(basis11.size() == 2);
  CHECK(basis11[0] == EscLabel{{}, e1::Perm{1}});
  CHECK(basis11[1] == EscLabel{{{1, 2}}, e1::Perm{1}});

  CHECK(esc::esc_hilbert(EscContext{1, 2, 1, 2}) == std::vector<long long>{2, 4});

  // total dimension is (k+l)! for every m < n
  for (const auto& [m, n] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}})
    for (int k = 0; k <= 2; ++k)
      for (int l = 0; l <= 2; ++l) {
        long long mass = 0, fact = 1;
        for (auto d : esc::esc_hilbert(EscContext{m, n, k, l})) mass += d;
        for (int i = 2; i <= k + l; ++i) fact *= i;
        CHECK(mass == fact);
      }
}

TEST_CASE("k constrained points only: component reduces to the m-algebra") {
  // (0, l): free part is the unit, so dimensions match e_m*(l)
  CHECK(esc::esc_hilbert(EscContext{1, 2, 0, 3}) == std::vector<long long>{6});
  CHECK(esc::esc_hilbert(EscContext{2, 3, 0, 3}) ==
        arnold::hilbert_polynomial({2, 3}));
}

TEST_CASE("l = 0 components match the one-colored algebra") {
  CHECK(esc::esc_hilbert(EscContext{1, 2, 3, 0}) ==
        arnold::hilbert_polynomial({2, 3}));
  CHECK(esc::esc_hilbert(EscContext{2, 3, 3, 0, Color::free_output}) ==
        arnold::hilbert_polynomial({3, 3}));
}

TEST_CASE("projection kills generators between constrained points") {
  // a generator joining two constrained points carries a positive-degree
  // subalgebra coefficient, so its class vanishes
  const EscContext ctx{1, 3, 1, 2};
  const auto g23 = esc::esc_from_parts(ctx, arnold::monomial({3, 3}, {{2, 3}}),
                                       e1::unit_function(2));
  CHECK(g23.is_zero());
  const auto g12 = esc::esc_from_parts(ctx, arnold::monomial({3, 3}, {{1, 2}}),
                                       e1::unit_function(2));
  CHECK_FALSE(g12.is_zero());
}

TEST_CASE("product of module generators stays admissible") {
  const EscContext ctx{1, 3, 2, 1};
  const auto a = esc::esc_monomial(ctx, EscLabel{{{1, 3}}, e1::Perm{1}});
  const auto b = esc::esc_monomial(ctx, EscLabel{{{2, 3}}, e1::Perm{1}});
  const auto p = esc::esc_multiply(a, b);
  REQUIRE(p.terms.size() == 1);
  CHECK(p.terms.begin()->first == EscLabel{{{1, 3}, {2, 3}}, e1::Perm{1}});
  CHECK(p.terms.begin()->second == 1);
}

TEST_CASE("projection from the ambient algebra is multiplicative") {
  std::mt19937_64 eng(20260818);
  for (const EscContext ctx : {EscContext{1, 2, 2, 1}, EscContext{1, 3, 1, 2},
                               EscContext{2, 3, 2, 1}}) {
    const arnold::AlgebraContext amb{ctx.n, ctx.k + ctx.l};
    const auto words = arnold::basis(amb);
    for (int trial = 0; trial < 20; ++trial) {
      arnold::ArnoldElement a = arnold::zero(amb), b = arnold::zero(amb);
      for (int t = 0; t < 2; ++t) {
        a += arnold::monomial(amb, words[eng() % words.size()],
                              Rat(1 + static_cast<long>(eng() % 3)));
        b += arnold::monomial(amb, words[eng() % words.size()],
                              Rat(1 + static_cast<long>(eng() % 3)));
      }
      auto proj = [&](const arnold::ArnoldElement& x) {
        if (ctx.m == 1) return esc::esc_from_parts(ctx, x, e1::unit_function(ctx.l));
        return esc::esc_from_parts(ctx, x, arnold::unit({ctx.m, ctx.l}));
      };
      CHECK(esc::esc_multiply(proj(a), proj(b)) == proj(arnold::multiply(a, b)));
    }
  }
}

TEST_CASE("unit, graded commutativity, associativity") {
  std::mt19937_64 eng(424242);
  for (const EscContext ctx : {EscContext{1, 2, 1, 2}, EscContext{1, 3, 2, 1},
                               EscContext{2, 3, 1, 2}, EscContext{2, 4, 1, 2}}) {
    const auto one = esc::esc_unit(ctx);
    const auto labels = esc::esc_basis(ctx);
    for (auto& la : labels) {
      const auto x = esc::esc_monomial(ctx, la);
      CHECK(esc::esc_multiply(one, x) == x);
      CHECK(esc::esc_multiply(x, one) == x);
      for (auto& lb : labels) {
        const auto y = esc::esc_monomial(ctx, lb);
        auto yx = esc::esc_multiply(y, x);
        const int dd = esc::label_degree(ctx, la) * esc::label_degree(ctx, lb);
        if (dd % 2 != 0) yx *= Rat(-1);
        CHECK(esc::esc_multiply(x, y) == yx);
      }
    }
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = random_element(ctx, eng);
      const auto y = random_element(ctx, eng);
      const auto z = random_element(ctx, eng);
      CHECK(esc::esc_multiply(esc::esc_multiply(x, y), z) ==
            esc::esc_multiply(x, esc::esc_multiply(y, z)));
    }
  }
}

TEST_CASE("constrained factor moves past the free factor with a sign") {
  // (m,n) = (2,4): both tensor factors carry odd-degree generators
  const EscContext ctx{2, 4, 1, 2};
  const auto a = esc::esc_monomial(ctx, EscLabel{{}, Word{{1, 2}}});
  const auto b = esc::esc_monomial(ctx, EscLabel{{{1, 2}}, Word{}});
  const auto ab = esc::esc_multiply(a, b);
  REQUIRE(ab.terms.size() == 1);
  CHECK(ab.terms.begin()->first == EscLabel{{{1, 2}}, Word{{1, 2}}});
  CHECK(ab.terms.begin()->second == -1);
  const auto ba = esc::esc_multiply(b, a);
  CHECK(ba.terms.begin()->second == 1);
}

TEST_CASE("cocomposition: both points into one constrained slot") {
  const EscContext ctx{1, 2, 1, 1};
  const auto x = esc::esc_monomial(ctx, EscLabel{{{1, 2}}, e1::Perm{1}});
  const ColoredBlocks blocks{{}, {{1, 1}}};
  const auto d = esc::esc_cocompose(x, blocks);
  REQUIRE(d.terms.size() == 1);
  const auto& [lbl, c] = *d.terms.begin();
  CHECK(c == 1);
  CHECK(lbl.base == EscLabel{{}, e1::Perm{1}});
  CHECK(lbl.free_slots.empty());
  REQUIRE(lbl.con_slots.size() == 1);
  CHECK(lbl.con_slots[0] == EscLabel{{{1, 2}}, e1::Perm{1}});
  CHECK(d.base_ctx == EscContext{1, 2, 0, 1});
  CHECK(d.con_ctxs[0] == EscContext{1, 2, 1, 1});
}

TEST_CASE("cocomposition: singleton blocks give the counit") {
  std::mt19937_64 eng(777);
  for (const EscContext ctx : {EscContext{1, 2, 2, 1}, EscContext{2, 3, 1, 1},
                               EscContext{1, 3, 1, 2}}) {
    ColoredBlocks blocks;
    blocks.free_counts.assign(static_cast<std::size_t>(ctx.k), 1);
    blocks.con_shapes.assign(static_cast<std::size_t>(ctx.l), {0, 1});
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = random_element(ctx, eng);
      const auto d = esc::esc_cocompose(x, blocks);
      // base terms must reproduce x with unit slots
      EscElement back = esc::esc_zero(ctx);
      for (auto& [lbl, c] : d.terms) {
        for (auto& w : lbl.free_slots) CHECK(w.empty());
        for (std::size_t b = 0; b < lbl.con_slots.size(); ++b)
          CHECK(lbl.con_slots[b].free_part.empty());
        back += esc::esc_monomial(ctx, lbl.base, c);
      }
      CHECK(back == x);
    }
  }
}

TEST_CASE("cocomposition with no constrained slots matches the one-colored one") {
  std::mt19937_64 eng(31415);
  const EscContext ctx{1, 2, 3, 0};
  const std::vector<int> sizes{2, 1};
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_element(ctx, eng);
    arnold::ArnoldElement free_part = arnold::zero({2, 3});
    for (auto& [lbl, c] : x.terms)
      free_part += arnold::monomial({2, 3}, lbl.free_part, c);
    const auto colored = esc::esc_cocompose(x, ColoredBlocks{sizes, {}});
    const auto plain = arnold::cocompose(free_part, sizes);
    CHECK(colored.terms.size() == plain.terms.size());
    for (auto& [lbl, c] : plain.terms) {
      esc::EscCoLabel key{EscLabel{lbl.base, e1::Perm{}}, lbl.slots, {}};
      auto it = colored.terms.find(key);
      REQUIRE(it != colored.terms.end());
      CHECK(it->second == c);
    }
  }
}

TEST_CASE("cocomposition is an algebra map") {
  std::mt19937_64 eng(97531);
  struct Case {
    EscContext ctx;
    ColoredBlocks blocks;
  };
  const std::vector<Case> cases{
      {{1, 2, 2, 1}, {{2}, {{0, 1}}}},
      {{1, 2, 1, 2}, {{1}, {{0, 1}, {0, 1}}}},
      {{1, 2, 1, 2}, {{}, {{1, 2}}}},
      {{1, 2, 2, 2}, {{1}, {{1, 2}}}},
      {{2, 3, 1, 2}, {{1}, {{0, 2}}}},
      {{2, 3, 2, 1}, {{}, {{2, 1}}}},
      {{2, 4, 1, 2}, {{1}, {{0, 2}}}},
      {{1, 3, 2, 1}, {{1}, {{1, 1}}}},
  };
  for (const auto& [ctx, blocks] : cases) {
    const auto one = esc::esc_unit(ctx);
    const auto done = esc::esc_cocompose(one, blocks);
    for (int trial = 0; trial < 8; ++trial) {
      const auto x = random_element(ctx, eng);
      const auto y = random_element(ctx, eng);
      const auto lhs = esc::esc_cocompose(esc::esc_multiply(x, y), blocks);
      const auto rhs = esc::co_multiply(esc::esc_cocompose(x, blocks),
                                        esc::esc_cocompose(y, blocks));
      CHECK(lhs.terms == rhs.terms);
      // the unit cocomposes to the unit, which must act as one on the target
      CHECK(esc::co_multiply(done, esc::esc_cocompose(x, blocks)).terms ==
            esc::esc_cocompose(x, blocks).terms);
    }
  }
}

TEST_CASE("relabelling along colored injections") {
  // add one disjoint free point: constrained data unchanged
  const EscContext src{1, 2, 0, 2};
  const auto x = esc::esc_monomial(src, EscLabel{{}, e1::Perm{2, 1}});
  const ColoredInjection add_free{{1, {}}, {2, {1, 2}}};
  const auto y = esc::esc_colambda(x, add_free);
  CHECK(y.ctx == EscContext{1, 2, 1, 2});
  REQUIRE(y.terms.size() == 1);
  CHECK(y.terms.begin()->first == EscLabel{{}, e1::Perm{2, 1}});

  // move the single free point to the second of two: w[1,2] -> w[2,3]
  const EscContext src2{1, 2, 1, 1};
  const auto x2 = esc::esc_monomial(src2, EscLabel{{{1, 2}}, e1::Perm{1}});
  const ColoredInjection shift{{2, {2}}, {1, {1}}};
  const auto y2 = esc::esc_colambda(x2, shift);
  REQUIRE(y2.terms.size() == 1);
  CHECK(y2.terms.begin()->first == EscLabel{{{2, 3}}, e1::Perm{1}});

  CHECK_THROWS(esc::esc_colambda(x2, ColoredInjection{{2, {2}}, {1, {}}}));
}

TEST_CASE("colored relabelling is multiplicative and functorial") {
  std::mt19937_64 eng(5);
  const EscContext src{1, 2, 1, 2};
  const ColoredInjection j1{{2, {2}}, {2, {1, 2}}};
  const ColoredInjection j2{{3, {1, 3}}, {3, {2, 3}}};
  const ColoredInjection j21{arnold::Injection::compose(j2.free, j1.free),
                             arnold::Injection::compose(j2.con, j1.con)};
  for (int trial = 0; trial < 12; ++trial) {
    const auto x = random_element(src, eng);
    const auto y = random_element(src, eng);
    CHECK(esc::esc_colambda(esc::esc_multiply(x, y), j1) ==
          esc::esc_multiply(esc::esc_colambda(x, j1), esc::esc_colambda(y, j1)));
    CHECK(esc::esc_colambda(esc::esc_colambda(x, j1), j2) ==
          esc::esc_colambda(x, j21));
  }
  CHECK(esc::esc_colambda(esc::esc_unit(src), j1) ==
        esc::esc_unit(EscContext{1, 2, 2, 2}));
}

TEST_CASE("trivial and painted extension components") {
  const auto t = esc::triv_component(2, 1, 2, Color::mixed);
  CHECK_FALSE(t.is_zero);
  CHECK(esc::component_hilbert(t) == std::vector<long long>{1, 1});
  CHECK(esc::triv_component(2, 2, 0, Color::free_output).is_zero);

  const auto p = esc::paint_component(2, 1, 2, Color::mixed);
  CHECK(esc::component_hilbert(p) == std::vector<long long>{1, 3, 2});
  const auto pf = esc::paint_component(2, 2, 0, Color::free_output);
  CHECK(esc::component_hilbert(pf) == std::vector<long long>{1, 1});
  CHECK(esc::component_hilbert(esc::paint_component(1, 1, 2, Color::mixed)) ==
        std::vector<long long>{6});
  CHECK_THROWS(esc::triv_component(2, 1, 1, Color::free_output));
}

TEST_CASE("monomial validation") {
  const EscContext ctx{1, 2, 1, 1};
  CHECK_THROWS(esc::esc_monomial(ctx, EscLabel{{{2, 1}}, e1::Perm{1}}));
  CHECK_THROWS(esc::esc_monomial(ctx, EscLabel{{{2, 3}}, e1::Perm{1}}));
  CHECK_THROWS(esc::esc_monomial(ctx, EscLabel{{{1, 3}}, e1::Perm{1}}));
  CHECK_THROWS(esc::esc_monomial(ctx, EscLabel{{{1, 2}}, e1::Perm{2, 1}}));
  CHECK_THROWS(esc::esc_monomial(ctx, EscLabel{{{1, 2}}, arnold::Word{}}));
  CHECK_NOTHROW(esc::esc_monomial(EscContext{2, 3, 1, 2},
                                  EscLabel{{{1, 2}}, Word{{1, 2}}}));
}

TEST_CASE("element text form") {
  const EscContext ctx{1, 2, 1, 1};
  auto x = esc::esc_monomial(ctx, EscLabel{{{1, 2}}, e1::Perm{1}});
  x += esc::esc_monomial(ctx, EscLabel{{}, e1::Perm{1}}, Rat(-2));
  CHECK(esc::to_string(x) == "-2*1⊗p[1] + w[1,2]⊗p[1]");
  CHECK(esc::to_string(esc::esc_zero(ctx)) == "0");
}
