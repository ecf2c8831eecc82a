#include "doctest.h"
#include "escops/bar.hpp"
#include "escops/escoperad.hpp"

using namespace escops;
using bar::AugmentedAlgebra;
using bar::DenseMap;

namespace {

DenseMap identity_map(const AugmentedAlgebra& a) {
  DenseMap out;
  for (int i = 0; i < a.dim(); ++i) out.push_back({{i, Rat(1)}});
  return out;
}

long long tor_at(const bar::TorTable& t, int degree, int weight) {
  auto it = t.higher.find({degree, weight});
  return it == t.higher.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("builder algebras validate and report the right sizes") {
  for (auto a : {bar::rational_algebra(), bar::square_zero_algebra(1),
                 bar::square_zero_algebra(2), bar::fault_target_algebra(),
                 bar::from_arnold({2, 3}), bar::from_arnold({3, 3}),
                 bar::from_perm(3)}) {
    a.validate();
  }
  CHECK(bar::from_arnold({2, 3}).dim() == 6);
  CHECK(bar::from_arnold({2, 3}).dim_in_degree(1) == 3);
  CHECK(bar::from_arnold({3, 4}).dim_in_degree(2) == 6);
  CHECK(bar::from_perm(3).dim() == 6);
  CHECK(bar::from_perm(3).dim_in_degree(0) == 6);

  CHECK(bar::from_arnold({2, 2}).connected());
  CHECK(bar::from_arnold({3, 4}).connected());
  CHECK(bar::rational_algebra().connected());
  CHECK_FALSE(bar::from_perm(2).connected());

  auto broken = bar::square_zero_algebra(1);
  broken.products[{1, 1}] = {{1, Rat(1)}};  // x*x = x is not graded
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
  auto bad_unit = bar::square_zero_algebra(1);
  bad_unit.unit = {{1, Rat(1)}};
  CHECK_THROWS_AS(bad_unit.validate(), std::invalid_argument);
}

TEST_CASE("algebra map checks accept the structure maps and reject junk") {
  const auto b = bar::from_arnold({2, 3});
  const auto a = bar::from_arnold({2, 2});
  const auto c = bar::from_perm(2);
  bar::check_algebra_map(a, b, bar::lambda_inclusion_map(2, 1, 2));
  bar::check_algebra_map(a, c, bar::ideal_killing_map(a, c));
  bar::check_algebra_map(bar::square_zero_algebra(1), bar::fault_target_algebra(),
                         bar::diagonal_fault_map());

  // sending the generator to a single corner breaks nothing, but scaling the
  // unit does, and so does a degree-shifting assignment
  DenseMap wrong_unit = bar::ideal_killing_map(a, c);
  wrong_unit[0] = {{0, Rat(2)}, {1, Rat(2)}};
  CHECK_THROWS_AS(bar::check_algebra_map(a, c, wrong_unit), std::invalid_argument);
  DenseMap shift = bar::lambda_inclusion_map(2, 1, 2);
  shift[1] = {{0, Rat(1)}};
  CHECK_THROWS_AS(bar::check_algebra_map(a, b, shift), std::invalid_argument);
  // t ↦ x alone is multiplicative, t ↦ x + y still squares to zero; but
  // forgetting multiplicativity entirely must be caught
  auto arn4 = bar::from_arnold({2, 2});
  DenseMap not_mult = identity_map(arn4);
  not_mult[1] = {};
  // w ↦ 0 is still an algebra map here (w generates the ideal, w² = 0)…
  bar::check_algebra_map(arn4, arn4, not_mult);
  // …but on e_2*(3) killing a single generator is not
  const auto b3 = bar::from_arnold({2, 3});
  DenseMap kill_one = identity_map(b3);
  kill_one[1] = {};
  CHECK_THROWS_AS(bar::check_algebra_map(b3, b3, kill_one), std::invalid_argument);
}

TEST_CASE("bar with trivial middle algebra sits in weight zero") {
  const auto q = bar::rational_algebra();
  const auto c = bar::from_perm(2);
  const auto cx = bar::build_bar(c, q, c, bar::ideal_killing_map(q, c),
                                 bar::ideal_killing_map(q, c), 3);
  for (int d = 0; d <= 3; ++d) {
    CHECK(cx.dim(d, 1) == 0);
    CHECK(cx.dim(d, 0) == (d == 0 ? 4 : 0));
  }
  const auto tor = bar::tor_dimensions(cx);
  CHECK(tor.tor0.at(0) == 4);
  CHECK(tor.higher_total() == 0);
}

TEST_CASE("non-connected middle algebra is rejected") {
  const auto c = bar::from_perm(2);
  CHECK_THROWS_AS(bar::build_bar(c, c, c, identity_map(c), identity_map(c), 2),
                  std::invalid_argument);
}

TEST_CASE("square-zero control: one Tor class per weight, no differentials") {
  const auto q = bar::rational_algebra();
  const auto a = bar::square_zero_algebra(2);
  const auto cx = bar::build_bar(q, a, q, bar::ideal_killing_map(a, q),
                                 bar::ideal_killing_map(a, q), 8);
  for (int d = 0; d <= 8; ++d)
    for (std::size_t p = 0; p < cx.diff[d].size(); ++p)
      CHECK(cx.diff[d][p].is_zero());
  const auto tor = bar::tor_dimensions(cx);
  CHECK(tor.tor0.at(0) == 1);
  for (int d = 1; d <= 8; ++d) CHECK(tor.tor0.at(d) == 0);
  for (int p = 1; p <= 4; ++p) {
    CHECK(tor_at(tor, 2 * p, p) == 1);
    CHECK(cx.dim(2 * p, p) == 1);
  }
  CHECK(tor.higher_total() == 4);
}

TEST_CASE("free module over the middle algebra has no higher homology") {
  // bar(Q, A, A) with A acting on itself: contractible onto Q
  const auto q = bar::rational_algebra();
  const auto a = bar::square_zero_algebra(1);
  const auto cx = bar::build_bar(q, a, a, bar::ideal_killing_map(a, q),
                                 identity_map(a), 6);
  const auto tor = bar::tor_dimensions(cx);
  CHECK(tor.tor0.at(0) == 1);
  for (int d = 1; d <= 6; ++d) CHECK(tor.tor0.at(d) == 0);
  CHECK(tor.higher_total() == 0);
}

TEST_CASE("frozen bar homology of the smallest mixed triple") {
  // e_2*(3) over e_2*(2), coefficients in functions on two points
  const auto b = bar::from_arnold({2, 3});
  const auto a = bar::from_arnold({2, 2});
  const auto c = bar::from_perm(2);
  const auto cx = bar::build_bar(b, a, c, bar::lambda_inclusion_map(2, 1, 2),
                                 bar::ideal_killing_map(a, c), 6);
  const auto tor = bar::tor_dimensions(cx);
  CHECK(tor.tor0.at(0) == 2);
  CHECK(tor.tor0.at(1) == 4);
  for (int d = 2; d <= 6; ++d) CHECK(tor.tor0.at(d) == 0);
  CHECK(tor.higher_total() == 0);
}

TEST_CASE("non-free diagonal embedding leaves a weight-one class") {
  const auto b = bar::fault_target_algebra();
  const auto a = bar::square_zero_algebra(1);
  const auto q = bar::rational_algebra();
  const auto cx = bar::build_bar(b, a, q, bar::diagonal_fault_map(),
                                 bar::ideal_killing_map(a, q), 4);
  const auto tor = bar::tor_dimensions(cx);
  CHECK(tor_at(tor, 2, 1) == 1);
  CHECK(tor.higher_total() > 0);
}

TEST_CASE("collapse certificates for the supported families") {
  const auto r1 = bar::em_collapse_check(1, 2, 1, 2, 6);
  CHECK(r1.pass);
  CHECK(r1.method == "coefficient-splitting");
  CHECK(r1.tor.tor0.at(0) == 2);
  CHECK(r1.tor.tor0.at(1) == 4);
  CHECK(r1.expected == std::vector<long long>{2, 4});
  CHECK(r1.tor.higher_total() == 0);

  const auto r2 = bar::em_collapse_check(2, 3, 2, 2, 8);
  CHECK(r2.pass);
  CHECK(r2.expected == esc::esc_hilbert(esc::EscContext{2, 3, 2, 2}));

  const auto r3 = bar::em_collapse_check(1, 2, 0, 3, 6);
  CHECK(r3.pass);
  CHECK(r3.method == "contraction");
  CHECK(r3.tor.tor0.at(0) == 6);

  CHECK_THROWS_AS(bar::em_collapse_check(1, 2, 3, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(bar::em_collapse_check(2, 2, 1, 1, 4), std::invalid_argument);
}
