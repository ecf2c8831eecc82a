// Acceptance gate: one line per criterion, exit 0 only if every criterion
// passes (including its runtime target).  argv[1] is the path of the escops
// CLI binary, used by the table and determinism criteria.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "escops/arnold.hpp"
#include "escops/bar.hpp"
#include "escops/escoperad.hpp"
#include "escops/oracle.hpp"
#include "escops/testhooks.hpp"
#include "escops/torsor.hpp"
#include "escops/verify.hpp"

using namespace escops;
using nlohmann::json;

namespace {

long long factorial(int k) {
  long long out = 1;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

// raw modulo keeps the stream identical across standard libraries
struct Sampler {
  std::mt19937_64 eng;
  explicit Sampler(std::uint64_t seed) : eng(seed) {}
  int below(int k) { return static_cast<int>(eng() % static_cast<std::uint64_t>(k)); }
  Rat coeff() {
    const int c = below(6) - 3;
    return c == 0 ? Rat(1) : Rat(c);
  }
};

std::vector<arnold::Factor> random_word(Sampler& rng, int r, int max_len) {
  const int len = rng.below(max_len + 1);
  std::vector<arnold::Factor> w;
  for (int t = 0; t < len; ++t) {
    const int a = 1 + rng.below(r);
    int b = 1 + rng.below(r - 1);
    if (b >= a) ++b;
    w.push_back({a, b});
  }
  return w;
}

arnold::ArnoldElement random_element(Sampler& rng, const arnold::AlgebraContext& ctx,
                                     const std::vector<arnold::Word>& basis_words) {
  arnold::ArnoldElement x = arnold::zero(ctx);
  const int terms = 1 + rng.below(3);
  for (int t = 0; t < terms; ++t) {
    const arnold::Word& w = basis_words[static_cast<std::size_t>(
        rng.below(static_cast<int>(basis_words.size())))];
    x += arnold::monomial(ctx, w, rng.coeff());
  }
  return x;
}

// coordinates of a rewritten element in the oracle's spanning basis
std::map<arnold::Word, Rat> oracle_coords(oracle::Oracle& o, const arnold::ArnoldElement& x) {
  std::map<arnold::Word, Rat> out;
  for (const auto& [w, c] : x.terms)
    for (const auto& [sw, sc] : o.normal_form(w)) {
      const Rat v = out[sw] + c * sc;
      if (v == 0)
        out.erase(sw);
      else
        out[sw] = v;
    }
  return out;
}

int run_cli(const std::string& cli, const std::string& args, const std::string& capture,
            std::string& out) {
  const std::string cmd = "\"" + cli + "\" " + args + " > " + capture + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(capture);
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<long long> trimmed(std::vector<long long> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  bool all_pass = true;

  const auto criterion = [&](int idx, const std::string& label, double budget_seconds,
                             const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = body(note);
    } catch (const std::exception& e) {
      ok = false;
      note = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs > budget_seconds) {
      ok = false;
      note = "runtime target exceeded";
    }
    all_pass = all_pass && ok;
    std::cout << "criterion " << idx << ": " << (ok ? "PASS" : "FAIL") << "  " << label
              << "  (" << std::fixed << std::setprecision(1) << secs << " s)";
    if (!note.empty()) std::cout << "  [" << note << "]";
    std::cout << "\n" << std::flush;
  };

  // 1. admissible-monomial dimensions equal the oracle quotient, total r!
  criterion(1, "basis dimensions vs oracle quotient, n in {2,3}, r <= 5", 60.0,
            [](std::string& note) {
              for (int n = 2; n <= 3; ++n)
                for (int r = 0; r <= 5; ++r) {
                  const int top = (n - 1) * std::max(r - 1, 0);
                  oracle::Oracle o(n, r);
                  const auto got = o.dims(top);
                  const auto want = arnold::hilbert_polynomial({n, r});
                  long long total = 0;
                  for (const long long d : got) total += d;
                  if (trimmed(got) != trimmed(want) || total != factorial(r)) {
                    note = "mismatch at n = " + std::to_string(n) + ", r = " + std::to_string(r);
                    return false;
                  }
                }
              return true;
            });

  // 2. rewriting normal form agrees with oracle coordinates on random words
  criterion(2, "normal form vs oracle on 500 words per (n,r), r <= 4", 120.0,
            [](std::string& note) {
              Sampler rng(2024);
              for (int n = 2; n <= 3; ++n)
                for (int r = 2; r <= 4; ++r) {
                  oracle::Oracle o(n, r);
                  const arnold::AlgebraContext ctx{n, r};
                  for (int trial = 0; trial < 500; ++trial) {
                    const auto w = random_word(rng, r, 4);
                    auto direct = o.normal_form(w);
                    for (auto it = direct.begin(); it != direct.end();)
                      it = it->second == 0 ? direct.erase(it) : std::next(it);
                    const auto via = oracle_coords(o, arnold::normal_form(ctx, w));
                    if (direct != via) {
                      note = "disagreement at n = " + std::to_string(n) +
                             ", r = " + std::to_string(r) + ", trial " + std::to_string(trial);
                      return false;
                    }
                  }
                }
              return true;
            });

  // 3. decompose/recompose identity and module-basis cardinality
  criterion(3, "freeness round trip, 200 elements per (n,r,k), r+k <= 5", 30.0,
            [](std::string& note) {
              Sampler rng(77);
              for (int n = 2; n <= 3; ++n)
                for (int r = 1; r <= 4; ++r)
                  for (int k = 1; r + k <= 5; ++k) {
                    const arnold::AlgebraContext ambient{n, r + k};
                    const auto words = arnold::basis(ambient);
                    const auto module = arnold::module_basis(n, r, k);
                    if (static_cast<long long>(module.size()) !=
                        factorial(r + k) / factorial(r)) {
                      note = "module basis count at (n, r, k) = (" + std::to_string(n) + ", " +
                             std::to_string(r) + ", " + std::to_string(k) + ")";
                      return false;
                    }
                    for (int trial = 0; trial < 200; ++trial) {
                      const auto x = random_element(rng, ambient, words);
                      const auto back = arnold::recompose(arnold::decompose(x, k), n, r, k);
                      if (!(back == x)) {
                        note = "round trip failed at (n, r, k) = (" + std::to_string(n) + ", " +
                               std::to_string(r) + ", " + std::to_string(k) + ")";
                        return false;
                      }
                    }
                  }
              return true;
            });

  // 4. Eilenberg-Moore collapse on every small cell, square-zero control
  criterion(4, "bar collapse for (1,2),(1,3),(2,3), k+l <= 4, bound 6", 300.0,
            [](std::string& note) {
              const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
              for (const auto& mn : pairs)
                for (int k = 0; k <= 4; ++k)
                  for (int l = 0; k + l <= 4; ++l) {
                    const auto rep = bar::em_collapse_check(mn[0], mn[1], k, l, 6);
                    if (!rep.pass) {
                      note = "collapse failed at (m, n, k, l) = (" + std::to_string(mn[0]) +
                             ", " + std::to_string(mn[1]) + ", " + std::to_string(k) + ", " +
                             std::to_string(l) + "): " + rep.failure;
                      return false;
                    }
                  }
              // Q[x]/(x^2) over Q: higher Tor must survive
              const auto q = bar::rational_algebra();
              const auto ring = bar::square_zero_algebra(1);
              const auto aug = bar::ideal_killing_map(ring, q);
              const auto tor = bar::tor_dimensions(bar::build_bar(q, ring, q, aug, aug, 8));
              if (tor.higher_total() == 0) {
                note = "square-zero control shows no higher Tor";
                return false;
              }
              return true;
            });

  // 5. Hopf cooperad property suite at arity 4, then the seeded sign fault
  criterion(5, "colored cooperad suites at arity 4, sign fault detected", 300.0,
            [](std::string& note) {
              const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
              for (const auto& mn : pairs) {
                const auto rep = verify::verify_hopf_cooperad(mn[0], mn[1], 4, 2024);
                if (!rep.pass) {
                  const auto* f = rep.first_failure();
                  note = "suite failed for (m, n) = (" + std::to_string(mn[0]) + ", " +
                         std::to_string(mn[1]) + ")" + (f ? ": " + f->name : "");
                  return false;
                }
              }
              testhooks::flip_symmetry_sign = true;
              const auto mutated = verify::verify_hopf_cooperad(1, 2, 2, 2024);
              testhooks::flip_symmetry_sign = false;
              if (mutated.pass) {
                note = "sign mutation went undetected";
                return false;
              }
              const auto* f = mutated.first_failure();
              if (f == nullptr || f->counterexample.find("relator") == std::string::npos) {
                note = "sign mutation failed without a relator witness";
                return false;
              }
              return true;
            });

  // 6. swiss-cheese type on the cohomology model, role swap rejected
  criterion(6, "torsor conditions at truncation 3, role swap rejected", 30.0,
            [](std::string& note) {
              const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
              for (const auto& mn : pairs) {
                const auto good = torsor::check_swiss_cheese_type(
                    torsor::from_cohomology(mn[0], mn[1], 3), 3);
                if (!good.pass) {
                  note = "model rejected for (m, n) = (" + std::to_string(mn[0]) + ", " +
                         std::to_string(mn[1]) + "): " + good.failure;
                  return false;
                }
                const auto bad = torsor::check_swiss_cheese_type(
                    torsor::role_swapped_fault(mn[0], mn[1], 2), 2);
                if (bad.pass || bad.failure.find("arity 2") == std::string::npos) {
                  note = "role swap not rejected at arity 2 for (m, n) = (" +
                         std::to_string(mn[0]) + ", " + std::to_string(mn[1]) + ")";
                  return false;
                }
              }
              return true;
            });

  // 7. table output matches independently enumerated values
  criterion(7, "sample table values from the CLI", 5.0, [&](std::string& note) {
    if (cli.empty()) {
      note = "CLI path missing (argv[1])";
      return false;
    }
    std::string out;
    if (run_cli(cli, "table --m 1 --n 2 --max-k 3 --max-l 2 --format json",
                "acceptance-table-12.json", out) != 0) {
      note = "table run failed";
      return false;
    }
    const json t12 = json::parse(out);
    std::map<std::pair<int, int>, std::vector<long long>> cells;
    for (const auto& cell : t12.at("cells"))
      cells[{cell.at("k").get<int>(), cell.at("l").get<int>()}] =
          cell.at("dims").get<std::vector<long long>>();
    if (trimmed(cells[{1, 1}]) != std::vector<long long>{1, 1} ||
        trimmed(cells[{1, 2}]) != std::vector<long long>{2, 4}) {
      note = "mixed cells (1,1)/(1,2) of (m,n) = (1,2) are wrong";
      return false;
    }
    for (int k = 0; k <= 3; ++k) {
      oracle::Oracle o(2, k);
      if (trimmed(cells[{k, 0}]) != trimmed(o.dims((k > 1) ? k - 1 : 0))) {
        note = "free column (k, 0) disagrees with the oracle at k = " + std::to_string(k);
        return false;
      }
    }
    if (run_cli(cli, "table --m 2 --n 3 --max-k 3 --max-l 0 --format json",
                "acceptance-table-23.json", out) != 0) {
      note = "table run failed for (m, n) = (2, 3)";
      return false;
    }
    const json t23 = json::parse(out);
    for (const auto& cell : t23.at("cells")) {
      const int k = cell.at("k").get<int>();
      oracle::Oracle o(3, k);
      if (trimmed(cell.at("dims").get<std::vector<long long>>()) !=
          trimmed(o.dims(2 * std::max(k - 1, 0)))) {
        note = "free column (k, 0) of (2,3) disagrees with the oracle at k = " +
               std::to_string(k);
        return false;
      }
    }
    return true;
  });

  // 8. identical configuration, byte-identical reports
  criterion(8, "byte-identical JSON reports on repeated runs", 60.0, [&](std::string& note) {
    if (cli.empty()) {
      note = "CLI path missing (argv[1])";
      return false;
    }
    const std::string invocations[] = {
        "table --m 1 --n 2 --max-k 2 --max-l 2 --format json",
        "verify arnold --n 2 --r 3 --seed 11 --samples 50 --format json",
        "verify colored --m 1 --n 2 --arity 2 --seed 3 --format json",
    };
    for (const std::string& args : invocations) {
      std::string first, second;
      if (run_cli(cli, args, "acceptance-det-a.json", first) != 0 ||
          run_cli(cli, args, "acceptance-det-b.json", second) != 0) {
        note = "run failed: " + args;
        return false;
      }
      if (first.empty() || first != second) {
        note = "outputs differ: " + args;
        return false;
      }
    }
    return true;
  });

  std::cout << (all_pass ? "acceptance: PASS" : "acceptance: FAIL") << "\n";
  return all_pass ? 0 : 1;
}
