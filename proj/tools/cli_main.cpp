// escops: command-line front end for the exact-rational engine.
//
// Subcommands: table (Poincare polynomials of the mixed components),
// verify (property suites), bar (collapse certificate for one cell),
// torsor (swiss-cheese type checks on dg operad data).
//
// Exit codes: 0 = pass, 1 = a verification failed, 2 = usage or
// validation error.  Output carries no timestamps, so identical
// invocations produce byte-identical reports.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "escops/bar.hpp"
#include "escops/escoperad.hpp"
#include "escops/testhooks.hpp"
#include "escops/torsor.hpp"
#include "escops/verify.hpp"

using namespace escops;

namespace {

using nlohmann::json;

// bumped whenever the algebra changes; stale cache entries stop matching
constexpr const char* kVersion = "0.1.0";

std::string poincare_string(const std::vector<long long>& dims) {
  std::string out;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (dims[d] == 0) continue;
    if (!out.empty()) out += " + ";
    if (dims[d] != 1 || d == 0) out += std::to_string(dims[d]);
    if (d == 1)
      out += "t";
    else if (d >= 2)
      out += "t^" + std::to_string(d);
  }
  return out.empty() ? "0" : out;
}

void validate_family(int m, int n) {
  if (m < 1 || n <= m) {
    std::ostringstream os;
    os << "invalid family (m, n) = (" << m << ", " << n << "): need n > m >= 1";
    throw std::invalid_argument(os.str());
  }
}

// The environment variable wins over the flag so wrappers can redirect
// the cache without touching the invocation.
std::string cache_root(const std::string& flag_value) {
  if (const char* env = std::getenv("ESCOPS_CACHE_DIR"); env != nullptr && *env != '\0')
    return env;
  return flag_value;
}

// One file per component cell.  A hit must match every key field and the
// version; anything else (missing, stale, corrupt) falls back to a fresh
// computation and an atomic rewrite.
std::vector<long long> cell_dims(int m, int n, int k, int l, const std::string& dir) {
  const esc::EscContext ctx{m, n, k, l, esc::Color::mixed};
  if (dir.empty()) return esc::esc_hilbert(ctx);
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ostringstream name;
  name << "cell-m" << m << "-n" << n << "-k" << k << "-l" << l << "-v" << kVersion << ".json";
  const fs::path path = fs::path(dir) / name.str();
  if (std::ifstream in(path); in) {
    try {
      const json j = json::parse(in);
      if (j.at("m") == m && j.at("n") == n && j.at("k") == k && j.at("l") == l &&
          j.at("version").get<std::string>() == kVersion)
        return j.at("dims").get<std::vector<long long>>();
    } catch (const std::exception&) {
      // unreadable entry: recompute and overwrite
    }
  }
  const std::vector<long long> dims = esc::esc_hilbert(ctx);
  json j;
  j["m"] = m;
  j["n"] = n;
  j["k"] = k;
  j["l"] = l;
  j["version"] = kVersion;
  j["dims"] = dims;
  const fs::path tmp = path.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    out << j.dump(2) << "\n";
  }
  fs::rename(tmp, path);
  return dims;
}

struct TableOpts {
  int m = 1, n = 2, max_k = 2, max_l = 2;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string cache_dir;
};

int run_table(const TableOpts& o) {
  validate_family(o.m, o.n);
  if (o.max_k < 0 || o.max_l < 0 || o.max_k + o.max_l > 6)
    throw std::invalid_argument("table bounds: need max-k, max-l >= 0 and max-k + max-l <= 6");
  const std::string dir = cache_root(o.cache_dir);

  // independent cells, computed in parallel but gathered in a fixed order
  std::vector<std::future<std::vector<long long>>> futures;
  for (int k = 0; k <= o.max_k; ++k)
    for (int l = 0; l <= o.max_l; ++l)
      futures.push_back(std::async(std::launch::async, cell_dims, o.m, o.n, k, l, dir));

  struct Cell {
    int k, l;
    std::vector<long long> dims;
  };
  std::vector<Cell> cells;
  std::size_t idx = 0;
  for (int k = 0; k <= o.max_k; ++k)
    for (int l = 0; l <= o.max_l; ++l) cells.push_back({k, l, futures[idx++].get()});

  if (o.format == "json") {
    json out;
    out["schema"] = "table/1";
    out["m"] = o.m;
    out["n"] = o.n;
    out["max_k"] = o.max_k;
    out["max_l"] = o.max_l;
    out["seed"] = o.seed;
    out["version"] = kVersion;
    out["cells"] = json::array();
    for (const auto& c : cells) {
      json cell;
      cell["k"] = c.k;
      cell["l"] = c.l;
      cell["dims"] = c.dims;
      cell["poincare"] = poincare_string(c.dims);
      out["cells"].push_back(std::move(cell));
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (o.format == "csv") {
    std::size_t width = 1;
    for (const auto& c : cells) width = std::max(width, c.dims.size());
    std::cout << "k,l";
    for (std::size_t d = 0; d < width; ++d) std::cout << ",c" << d;
    std::cout << "\n";
    for (const auto& c : cells) {
      std::cout << c.k << "," << c.l;
      for (std::size_t d = 0; d < width; ++d)
        std::cout << "," << (d < c.dims.size() ? c.dims[d] : 0);
      std::cout << "\n";
    }
    return 0;
  }

  // text: one row per k, one aligned column per l
  std::vector<std::vector<std::string>> grid(static_cast<std::size_t>(o.max_k) + 1);
  for (const auto& c : cells)
    grid[static_cast<std::size_t>(c.k)].push_back(poincare_string(c.dims));
  std::vector<std::size_t> widths(static_cast<std::size_t>(o.max_l) + 1);
  for (int l = 0; l <= o.max_l; ++l) {
    widths[static_cast<std::size_t>(l)] = std::to_string(l).size();
    for (const auto& row : grid)
      widths[static_cast<std::size_t>(l)] =
          std::max(widths[static_cast<std::size_t>(l)], row[static_cast<std::size_t>(l)].size());
  }
  std::cout << "Poincare polynomials of H(ESC_{" << o.m << "," << o.n << "})(k, l), seed = "
            << o.seed << "\n";
  const std::string head = "k \\ l";
  std::cout << head;
  for (int l = 0; l <= o.max_l; ++l) {
    const std::string s = std::to_string(l);
    std::cout << "  " << std::string(widths[static_cast<std::size_t>(l)] - s.size(), ' ') << s;
  }
  std::cout << "\n";
  for (int k = 0; k <= o.max_k; ++k) {
    const std::string s = std::to_string(k);
    std::cout << std::string(head.size() - s.size(), ' ') << s;
    for (int l = 0; l <= o.max_l; ++l) {
      const std::string& cell = grid[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
      std::cout << "  " << std::string(widths[static_cast<std::size_t>(l)] - cell.size(), ' ')
                << cell;
    }
    std::cout << "\n";
  }
  return 0;
}

struct VerifyOpts {
  std::string suite;
  int m = 1, n = 2, r = 4, arity = 3, bound = 6, samples = 200;
  std::uint64_t seed = 0;
  std::string format = "text";
  bool mutate = false;
};

int run_verify(const VerifyOpts& o) {
  if (o.mutate) escops::testhooks::flip_symmetry_sign = true;
  std::vector<verify::SuiteReport> reports;
  const auto add = [&](const std::string& which) {
    if (which == "arnold")
      reports.push_back(verify::verify_arnold(o.n, o.r, o.seed, o.samples));
    else if (which == "colored")
      reports.push_back(verify::verify_hopf_cooperad(o.m, o.n, o.arity, o.seed));
    else if (which == "bar")
      reports.push_back(verify::verify_bar(o.m, o.n, o.arity, o.bound));
    else
      reports.push_back(verify::verify_torsor(o.m, o.n, o.arity));
  };
  if (o.suite == "all") {
    add("arnold");
    add("colored");
    add("bar");
    add("torsor");
  } else {
    add(o.suite);
  }
  const bool pass = std::all_of(reports.begin(), reports.end(),
                                [](const verify::SuiteReport& r) { return r.pass; });
  if (o.format == "json")
    std::cout << verify::reports_to_json(reports);
  else
    std::cout << verify::reports_to_text(reports);
  return pass ? 0 : 1;
}

struct BarOpts {
  int m = 1, n = 2, k = 0, l = 0, bound = 6;
  std::uint64_t seed = 0;
  std::string format = "text";
};

int run_bar(const BarOpts& o) {
  const bar::CollapseReport rep = bar::em_collapse_check(o.m, o.n, o.k, o.l, o.bound);
  if (o.format == "json") {
    std::vector<long long> tor0(static_cast<std::size_t>(rep.bound) + 1, 0);
    for (const auto& [deg, dim] : rep.tor.tor0)
      if (deg >= 0 && deg <= rep.bound) tor0[static_cast<std::size_t>(deg)] = dim;
    json out;
    out["schema"] = "bar-report/1";
    out["m"] = rep.m;
    out["n"] = rep.n;
    out["k"] = rep.k;
    out["l"] = rep.l;
    out["bound"] = rep.bound;
    out["method"] = rep.method;
    out["seed"] = o.seed;
    out["pass"] = rep.pass;
    out["expected"] = rep.expected;
    out["tor0"] = tor0;
    out["higher"] = json::array();
    for (const auto& [key, dim] : rep.tor.higher) {
      json entry;
      entry["degree"] = key.first;
      entry["weight"] = key.second;
      entry["dim"] = dim;
      out["higher"].push_back(std::move(entry));
    }
    if (!rep.failure.empty()) out["failure"] = rep.failure;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "two-sided bar collapse for (m, n) = (" << rep.m << ", " << rep.n
              << "), cell (k, l) = (" << rep.k << ", " << rep.l << "), degree bound "
              << rep.bound << "\n";
    std::cout << "method: " << rep.method << "\n";
    std::cout << "expected component dimensions:";
    for (const long long d : rep.expected) std::cout << " " << d;
    if (rep.expected.empty()) std::cout << " (none)";
    std::cout << "\n";
    std::cout << "Tor_0 by degree:";
    bool any = false;
    for (const auto& [deg, dim] : rep.tor.tor0)
      if (dim != 0) {
        std::cout << " " << deg << ":" << dim;
        any = true;
      }
    if (!any) std::cout << " (all zero)";
    std::cout << "\n";
    if (rep.tor.higher.empty()) {
      std::cout << "higher Tor: all zero up to the bound\n";
    } else {
      std::cout << "higher Tor entries:\n";
      for (const auto& [key, dim] : rep.tor.higher)
        std::cout << "  degree " << key.first << ", weight " << key.second << ": " << dim
                  << "\n";
    }
    if (!rep.failure.empty()) std::cout << "failure: " << rep.failure << "\n";
    std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
  }
  return rep.pass ? 0 : 1;
}

struct TorsorOpts {
  int m = 1, n = 2, truncation = 3;
  std::string file;
  std::string format = "text";
};

int emit_torsor(const torsor::TorsorReport& rep, const std::string& format) {
  if (format == "json")
    std::cout << torsor::report_to_json(rep);
  else
    std::cout << torsor::report_to_text(rep);
  return rep.pass ? 0 : 1;
}

int run_torsor_synth(const TorsorOpts& o) {
  validate_family(o.m, o.n);
  const torsor::DgColoredOperadData data = torsor::from_cohomology(o.m, o.n, o.truncation);
  return emit_torsor(torsor::check_swiss_cheese_type(data, o.truncation), o.format);
}

int run_torsor_check(const TorsorOpts& o) {
  std::ifstream in(o.file);
  if (!in) throw std::invalid_argument("cannot read file: " + o.file);
  std::ostringstream buf;
  buf << in.rdbuf();
  // from_json and validate throw with a location on schema problems
  const torsor::DgColoredOperadData data = torsor::from_json(buf.str());
  return emit_torsor(torsor::check_swiss_cheese_type(data, data.truncation), o.format);
}

}  // namespace

int main(int argc, char** argv) {
  TableOpts t;
  VerifyOpts v;
  BarOpts b;
  TorsorOpts ts;

  CLI::App app{"exact-rational engine for two-colored disk-configuration cohomology"};
  app.require_subcommand(1);

  CLI::App* table_cmd =
      app.add_subcommand("table", "Poincare polynomials of the mixed components");
  table_cmd->add_option("--m", t.m, "constrained family dimension")->capture_default_str();
  table_cmd->add_option("--n", t.n, "free family dimension")->capture_default_str();
  table_cmd->add_option("--max-k", t.max_k, "largest free arity")->capture_default_str();
  table_cmd->add_option("--max-l", t.max_l, "largest constrained arity")->capture_default_str();
  table_cmd->add_option("--seed", t.seed, "recorded in the report")->capture_default_str();
  table_cmd->add_option("--format", t.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  table_cmd->add_option("--cache-dir", t.cache_dir,
                        "cell cache directory (ESCOPS_CACHE_DIR overrides)");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "property suites with counterexample reporting");
  verify_cmd->add_option("suite", v.suite, "arnold, colored, bar, torsor or all")
      ->required()
      ->check(CLI::IsMember({"arnold", "colored", "bar", "torsor", "all"}));
  verify_cmd->add_option("--m", v.m, "constrained family dimension")->capture_default_str();
  verify_cmd->add_option("--n", v.n, "free family dimension")->capture_default_str();
  verify_cmd->add_option("--r", v.r, "arity for the one-colored suite")->capture_default_str();
  verify_cmd->add_option("--arity", v.arity, "arity bound for the colored suites")
      ->capture_default_str();
  verify_cmd->add_option("--bound", v.bound, "internal degree bound for the bar suite")
      ->capture_default_str();
  verify_cmd->add_option("--samples", v.samples, "sampled checks per property")
      ->capture_default_str();
  verify_cmd->add_option("--seed", v.seed, "sampling seed, recorded in the report")
      ->capture_default_str();
  verify_cmd->add_option("--format", v.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  verify_cmd->add_flag("--mutate-sign", v.mutate)->group("");  // fault-injection hook

  CLI::App* bar_cmd =
      app.add_subcommand("bar", "two-sided bar collapse certificate for one cell");
  bar_cmd->add_option("m", b.m, "constrained family dimension")->required();
  bar_cmd->add_option("n", b.n, "free family dimension")->required();
  bar_cmd->add_option("k", b.k, "free arity")->required();
  bar_cmd->add_option("l", b.l, "constrained arity")->required();
  bar_cmd->add_option("--bound", b.bound, "internal degree bound")->capture_default_str();
  bar_cmd->add_option("--seed", b.seed, "recorded in the report")->capture_default_str();
  bar_cmd->add_option("--format", b.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  CLI::App* torsor_cmd = app.add_subcommand("torsor", "swiss-cheese type checks");
  torsor_cmd->require_subcommand(1);
  CLI::App* synth_cmd =
      torsor_cmd->add_subcommand("synth", "build the cohomology model and check it");
  synth_cmd->add_option("m", ts.m, "constrained family dimension")->required();
  synth_cmd->add_option("n", ts.n, "free family dimension")->required();
  synth_cmd->add_option("truncation", ts.truncation, "largest arity checked")->required();
  synth_cmd->add_option("--format", ts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  CLI::App* check_cmd =
      torsor_cmd->add_subcommand("check", "check a dg operad data file");
  check_cmd->add_option("file", ts.file, "dg-colored-operad/1 JSON file")->required();
  check_cmd->add_option("--format", ts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*table_cmd) return run_table(t);
    if (*verify_cmd) return run_verify(v);
    if (*bar_cmd) return run_bar(b);
    if (*synth_cmd) return run_torsor_synth(ts);
    if (*check_cmd) return run_torsor_check(ts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
