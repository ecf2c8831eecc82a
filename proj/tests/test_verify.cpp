#include <stdexcept>
#include <string>

#include "doctest.h"
#include "escops/testhooks.hpp"
#include "escops/verify.hpp"

using namespace escops;

namespace {

const verify::PropertyResult* prop(const verify::SuiteReport& rep,
                                   const std::string& name) {
  for (const auto& p : rep.properties)
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace

TEST_CASE("arnold suite passes and counts its instances") {
  const auto rep = verify::verify_arnold(2, 4, 7, 60);
  CHECK(rep.pass);
  CHECK(rep.suite == "arnold");
  CHECK(rep.params.at("r") == 4);
  CHECK(rep.first_failure() == nullptr);
  // 6 unordered pairs x (symmetry + two squares) + 24 ordered triples
  REQUIRE(prop(rep, "relators normalize to zero") != nullptr);
  CHECK(prop(rep, "relators normalize to zero")->instances == 42);
  CHECK(prop(rep, "normal form agrees with the oracle")->instances == 60);
  CHECK(prop(rep, "basis dimensions match the oracle and total r!")->pass);
  // three splittings, one cardinality check plus 60 round trips each
  CHECK(prop(rep, "freeness round trip")->instances == 3 * 61);

  const auto odd = verify::verify_arnold(3, 3, 11, 40);
  CHECK(odd.pass);
  CHECK(odd.total_instances() > 0);
}

TEST_CASE("sign mutation fails the arnold suite with a relator witness") {
  testhooks::flip_symmetry_sign = true;
  const auto rep = verify::verify_arnold(2, 3, 5, 15);
  testhooks::flip_symmetry_sign = false;
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.first_failure() != nullptr);
  CHECK(rep.first_failure()->name == "relators normalize to zero");
  CHECK(rep.first_failure()->counterexample.find("relator") != std::string::npos);
  // instance counts do not depend on how many instances fail
  CHECK(prop(rep, "relators normalize to zero")->instances == 15);
}

TEST_CASE("colored suite passes for both algebra families") {
  for (auto [m, n] : {std::pair{1, 2}, std::pair{2, 3}}) {
    const auto rep = verify::verify_hopf_cooperad(m, n, 3, 13);
    CAPTURE(m);
    CAPTURE(n);
    CHECK(rep.pass);
    if (!rep.pass) MESSAGE(rep.first_failure()->counterexample);
    CHECK(rep.properties.size() == 9);
    for (const auto& p : rep.properties) {
      CAPTURE(p.name);
      CHECK(p.pass);
      CHECK(p.instances > 0);
    }
  }
}

TEST_CASE("sign mutation fails the colored suite with a relator witness") {
  testhooks::flip_symmetry_sign = true;
  const auto rep = verify::verify_hopf_cooperad(1, 2, 2, 3);
  testhooks::flip_symmetry_sign = false;
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.first_failure() != nullptr);
  CHECK(rep.first_failure()->name == "generator relators vanish");
  CHECK(rep.first_failure()->counterexample.find("relator") != std::string::npos);
}

TEST_CASE("bar suite certifies collapse and the square-zero control") {
  const auto rep = verify::verify_bar(1, 2, 2, 6);
  CHECK(rep.pass);
  CHECK(prop(rep, "Eilenberg-Moore collapse certificates")->instances == 6);
  CHECK(prop(rep, "square-zero control exhibits higher Tor")->pass);
}

TEST_CASE("torsor suite runs the model and both controls") {
  const auto rep = verify::verify_torsor(1, 2, 3);
  CHECK(rep.pass);
  CHECK(rep.properties.size() == 3);
  CHECK(prop(rep, "cohomology model has swiss-cheese type")->instances == 4);
  CHECK(prop(rep, "role-swapped fault is rejected at arity 2")->pass);
  CHECK(prop(rep, "commutative control passes")->pass);
}

TEST_CASE("reports render deterministically") {
  const auto a1 = verify::verify_arnold(2, 3, 21, 25);
  const auto a2 = verify::verify_arnold(2, 3, 21, 25);
  const auto j1 = verify::reports_to_json({a1});
  CHECK(j1 == verify::reports_to_json({a2}));
  CHECK(j1.find("\"schema\": \"verify-report/1\"") != std::string::npos);
  CHECK(j1.find("\"instances\"") != std::string::npos);
  CHECK(j1.find("relators normalize to zero") != std::string::npos);

  const auto text = verify::reports_to_text({a1});
  CHECK(text.find("suite arnold") != std::string::npos);
  CHECK(text.find("overall: PASS") != std::string::npos);

  testhooks::flip_symmetry_sign = true;
  const auto bad = verify::verify_arnold(2, 3, 21, 10);
  testhooks::flip_symmetry_sign = false;
  const auto bad_text = verify::reports_to_text({bad});
  CHECK(bad_text.find("overall: FAIL") != std::string::npos);
  CHECK(bad_text.find("counterexample:") != std::string::npos);
  const auto bad_json = verify::reports_to_json({bad});
  CHECK(bad_json.find("\"counterexample\"") != std::string::npos);
  CHECK(bad_json.find("\"pass\": false") != std::string::npos);
}

TEST_CASE("suite parameter guards") {
  CHECK_THROWS_AS(verify::verify_arnold(1, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify::verify_arnold(2, 7, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify::verify_hopf_cooperad(2, 2, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify::verify_hopf_cooperad(1, 2, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify::verify_bar(1, 2, 5, 6), std::invalid_argument);
  CHECK_THROWS_AS(verify::verify_torsor(1, 2, 1), std::invalid_argument);
}
