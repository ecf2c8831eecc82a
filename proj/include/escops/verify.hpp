#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace escops::verify {

/// One checked property: how many instances ran, and the first
/// counterexample when an instance failed.
struct PropertyResult {
  std::string name;
  long long instances = 0;
  bool pass = true;
  std::string counterexample;
};

/// Result of one verification suite. Sampled instances are driven entirely
/// by the recorded seed, so identical parameters reproduce the report
/// byte for byte.
struct SuiteReport {
  std::string suite;
  std::map<std::string, long long> params;
  std::uint64_t seed = 0;
  bool pass = true;
  std::vector<PropertyResult> properties;

  long long total_instances() const;
  const PropertyResult* first_failure() const;
};

/// Relator, oracle-agreement, basis-count and freeness checks for e_n*(r).
/// `samples` scales the randomized properties (oracle words per run,
/// decompose/recompose elements per splitting).
SuiteReport verify_arnold(int n, int r, std::uint64_t seed, int samples = 200);

/// Hopf colored cooperad axioms for the ESC_{m,n} components with
/// K+L <= bound: generator relators, unital/graded-commutative/associative
/// products, cocompositions as unital algebra maps, the singleton counit,
/// two-level coassociativity, and compatibility of the point-forgetting
/// costructure with products and cocompositions. Exhaustive through
/// K+L <= 3; seeded sampling at K+L = 4.
SuiteReport verify_hopf_cooperad(int m, int n, int bound, std::uint64_t seed);

/// Eilenberg-Moore collapse certificates for every cell with
/// k+l <= sum_bound (internal degree up to degree_bound), plus the
/// square-zero control algebra whose higher Tor must NOT vanish.
SuiteReport verify_bar(int m, int n, int sum_bound, int degree_bound);

/// Swiss-cheese-type conditions on the zero-differential cohomology model
/// at the given truncation, with the role-swapped fault (must be rejected
/// at arity 2) and the commutative two-colored control.
SuiteReport verify_torsor(int m, int n, int truncation);

std::string report_to_text(const SuiteReport& rep);
std::string reports_to_text(const std::vector<SuiteReport>& reps);
/// Versioned deterministic JSON ("verify-report/1"): per property the name,
/// instance count, verdict, and first counterexample.
std::string reports_to_json(const std::vector<SuiteReport>& reps);

}  // namespace escops::verify
