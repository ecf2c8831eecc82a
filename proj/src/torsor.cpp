#include "escops/torsor.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace escops::torsor {

namespace {

using nlohmann::json;

std::string color_name(esc::Color c) {
  return c == esc::Color::free_output ? "free" : "mixed";
}

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

std::string vec_to_string(const SparseVec& v, const std::vector<std::string>& labels) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [i, c] : v) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << rat_to_string(c) << "*";
    os << labels[static_cast<std::size_t>(i)];
  }
  return os.str();
}

}  // namespace

std::string key_to_string(const CellKey& key) {
  if (key.output == esc::Color::free_output && key.con_inputs == 0)
    return "Q(" + std::to_string(key.free_inputs) + ")";
  if (key.output == esc::Color::mixed && key.con_inputs == 0 && key.free_inputs > 0)
    return "M(" + std::to_string(key.free_inputs) + ")";
  if (key.output == esc::Color::mixed && key.free_inputs == 0 && key.con_inputs > 0)
    return "P(" + std::to_string(key.con_inputs) + ")";
  return "(" + color_name(key.output) + "; " + std::to_string(key.free_inputs) +
         " free, " + std::to_string(key.con_inputs) + " constrained)";
}

CellKey q_key(int r) { return {esc::Color::free_output, r, 0}; }
CellKey m_key(int r) { return {esc::Color::mixed, r, 0}; }
CellKey p_key(int l) { return {esc::Color::mixed, 0, l}; }

long long Cell::dim_in_degree(int d) const {
  long long out = 0;
  for (int deg : degrees)
    if (deg == d) ++out;
  return out;
}

void Cell::validate(const std::string& name) const {
  if (degrees.size() != labels.size())
    throw std::invalid_argument(name + ": basis arrays disagree in length");
  if (differential.rows != dim() || differential.cols != dim())
    throw std::invalid_argument(name + ": differential is not square on the basis");
  space();  // throws on duplicate labels within a degree
  for (int r = 0; r < differential.rows; ++r)
    for (auto& [c, v] : differential.entries[static_cast<std::size_t>(r)])
      if (degrees[static_cast<std::size_t>(r)] !=
          degrees[static_cast<std::size_t>(c)] + 1)
        throw std::invalid_argument(
            name + ": differential entry " + labels[static_cast<std::size_t>(c)] +
            " -> " + labels[static_cast<std::size_t>(r)] + " is not of degree +1");
  if (!SparseMatrix::multiply(differential, differential).is_zero())
    throw std::invalid_argument(name + ": d∘d ≠ 0");
}

lin::GradedSpace Cell::space() const {
  lin::GradedSpace g;
  for (int i = 0; i < dim(); ++i)
    g.add(degrees[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(i)]);
  return g;
}

int Cell::position(int i) const {
  int pos = 0;
  for (int j = 0; j < i; ++j)
    if (degrees[static_cast<std::size_t>(j)] == degrees[static_cast<std::size_t>(i)])
      ++pos;
  return pos;
}

lin::ChainComplex Cell::complex() const {
  auto g = space();
  lin::LinearMap d(g, g, 1);
  for (int r = 0; r < differential.rows; ++r)
    for (auto& [c, v] : differential.entries[static_cast<std::size_t>(r)])
      d.set_entry(degrees[static_cast<std::size_t>(c)], position(r), position(c), v);
  return lin::ChainComplex(std::move(g), std::move(d));
}

const Cell& DgColoredOperadData::cell(const CellKey& key) const {
  auto it = cells.find(key);
  if (it == cells.end())
    throw std::invalid_argument("missing cell " + key_to_string(key));
  return it->second;
}

const Composition* DgColoredOperadData::composition(const CellKey& outer,
                                                    const CellKey& inner,
                                                    const CellKey& result) const {
  for (auto& comp : compositions)
    if (comp.outer == outer && comp.inner == inner && comp.result == result)
      return &comp;
  return nullptr;
}

void DgColoredOperadData::validate() const {
  if (truncation < 1) throw std::invalid_argument("truncation arity must be >= 1");
  for (auto& [key, c] : cells) {
    if (key.free_inputs < 0 || key.con_inputs < 0)
      throw std::invalid_argument("cell with negative input count");
    if (key.free_inputs + key.con_inputs == 0)
      throw std::invalid_argument("reduced data cannot contain the 0-input cell " +
                                  key_to_string(key));
    c.validate(key_to_string(key));
  }
  for (auto& [key, u] : units) {
    const Cell& c = cell(key);
    for (auto& [i, v] : u) {
      if (i < 0 || i >= c.dim())
        throw std::invalid_argument("unit of " + key_to_string(key) +
                                    ": coordinate out of range");
      if (c.degrees[static_cast<std::size_t>(i)] != 0)
        throw std::invalid_argument("unit of " + key_to_string(key) +
                                    " is not in degree 0");
    }
  }
  for (auto& comp : compositions) {
    const Cell& oc = cell(comp.outer);
    const Cell& ic = cell(comp.inner);
    const Cell& rc = cell(comp.result);
    const std::string name = "composition " + key_to_string(comp.outer) + " ⊗ " +
                             key_to_string(comp.inner) + " → " +
                             key_to_string(comp.result);
    std::map<std::pair<int, int>, SparseVec> gamma;
    for (auto& [a, b, c, v] : comp.entries) {
      if (a < 0 || a >= oc.dim() || b < 0 || b >= ic.dim() || c < 0 || c >= rc.dim())
        throw std::invalid_argument(name + ": entry index out of range");
      if (rc.degrees[static_cast<std::size_t>(c)] !=
          oc.degrees[static_cast<std::size_t>(a)] +
              ic.degrees[static_cast<std::size_t>(b)])
        throw std::invalid_argument(
            name + ": entry (" + oc.labels[static_cast<std::size_t>(a)] + ", " +
            ic.labels[static_cast<std::size_t>(b)] + ") → " +
            rc.labels[static_cast<std::size_t>(c)] + " is not degree-additive");
      add_scaled(gamma[{a, b}], SparseVec{{c, Rat(1)}}, v);
    }
    // chain map: d γ(a⊗b) = γ(da ⊗ b) + (−1)^{|a|} γ(a ⊗ db)
    auto gamma_vec = [&](int a, int b) -> SparseVec {
      auto it = gamma.find({a, b});
      return it == gamma.end() ? SparseVec{} : it->second;
    };
    for (int a = 0; a < oc.dim(); ++a)
      for (int b = 0; b < ic.dim(); ++b) {
        SparseVec lhs;
        for (auto& [c, v] : gamma_vec(a, b))
          add_scaled(lhs, rc.differential.column(c), v);
        SparseVec rhs;
        for (auto& [a2, v] : oc.differential.column(a))
          add_scaled(rhs, gamma_vec(a2, b), v);
        const Rat sign = oc.degrees[static_cast<std::size_t>(a)] % 2 != 0 ? -1 : 1;
        for (auto& [b2, v] : ic.differential.column(b))
          add_scaled(rhs, gamma_vec(a, b2), v * sign);
        if (lhs != rhs)
          throw std::invalid_argument(
              name + ": chain-map equation fails at (" +
              oc.labels[static_cast<std::size_t>(a)] + ", " +
              ic.labels[static_cast<std::size_t>(b)] + ") in degree " +
              std::to_string(oc.degrees[static_cast<std::size_t>(a)] +
                             ic.degrees[static_cast<std::size_t>(b)]));
      }
    // unit axiom when the inner cell carries a unit and the shape allows it
    auto uit = units.find(comp.inner);
    if (uit != units.end() && comp.outer == comp.result) {
      for (int a = 0; a < oc.dim(); ++a) {
        SparseVec img;
        for (auto& [b, v] : uit->second) add_scaled(img, gamma_vec(a, b), v);
        if (img != SparseVec{{a, Rat(1)}})
          throw std::invalid_argument(name + ": unit axiom fails on " +
                                      oc.labels[static_cast<std::size_t>(a)]);
      }
    }
  }
}

Constituents extract_constituents(const DgColoredOperadData& s) {
  std::vector<std::string> missing;
  for (int r = 1; r <= s.truncation; ++r)
    for (const CellKey& key : {p_key(r), m_key(r), q_key(r)})
      if (!s.cells.count(key)) missing.push_back(key_to_string(key));
  if (!missing.empty()) {
    std::string joined;
    for (auto& name : missing) joined += (joined.empty() ? "" : ", ") + name;
    throw std::invalid_argument("extraction: missing cells: " + joined);
  }
  if (s.cell(m_key(1)).dim() == 0)
    throw std::invalid_argument("extraction: M(1) cell is empty");
  Constituents out;
  for (int r = 1; r <= s.truncation; ++r) {
    out.p.emplace(r, s.cell(p_key(r)));
    out.m.emplace(r, s.cell(m_key(r)));
    out.q.emplace(r, s.cell(q_key(r)));
  }
  return out;
}

namespace {

/// Flat coordinates of the first homology representative in the one
/// nontrivial degree of the cell (positions converted back to flat indices).
SparseVec flat_representative(const Cell& cell, int degree, const SparseVec& by_pos) {
  std::vector<int> flat_of_pos;
  for (int i = 0; i < cell.dim(); ++i)
    if (cell.degrees[static_cast<std::size_t>(i)] == degree) flat_of_pos.push_back(i);
  SparseVec out;
  for (auto& [pos, v] : by_pos) out.emplace(flat_of_pos[static_cast<std::size_t>(pos)], v);
  return out;
}

struct ArityRun {
  std::vector<ArityVerdict> verdicts;
  bool pass = true;
  std::string failure;
};

ArityRun run_arity_checks(const DgColoredOperadData& s, const Constituents& cons,
                          int truncation, const SparseVec& one_flat) {
  ArityRun run;
  for (int r = 1; r <= truncation; ++r) {
    const Cell& qc = cons.q.at(r);
    const Cell& mc = cons.m.at(r);
    ArityVerdict v;
    v.arity = r;
    const Composition* comp = s.composition(m_key(1), q_key(r), m_key(r));
    if (comp == nullptr) {
      v.pass = false;
      v.failure = "missing composition M(1) ⊗ Q(" + std::to_string(r) + ") → M(" +
                  std::to_string(r) + ")";
    } else {
      const auto q_space = qc.space();
      const auto m_space = mc.space();
      lin::LinearMap f(q_space, m_space, 0);
      for (auto& [a, b, c, val] : comp->entries) {
        auto it = one_flat.find(a);
        if (it == one_flat.end()) continue;
        f.add_entry(qc.degrees[static_cast<std::size_t>(b)], mc.position(c),
                    qc.position(b), val * it->second);
      }
      const int lo = std::min(q_space.min_degree(), m_space.min_degree());
      const int hi = std::max(q_space.max_degree(), m_space.max_degree());
      const auto qi = lin::is_quasi_iso(qc.complex(), mc.complex(), f, lo, hi);
      v.pass = qi.ok;
      v.failure = qi.failure;
      for (auto& [d, dim] : lin::homology(qc.complex(), lo, hi).dims)
        if (dim != 0) v.source_h[d] = dim;
      for (auto& [d, dim] : lin::homology(mc.complex(), lo, hi).dims)
        if (dim != 0) v.target_h[d] = dim;
    }
    if (!v.pass && run.pass) {
      run.pass = false;
      run.failure = "arity " + std::to_string(r) + ": " +
                    (v.failure.empty() ? "quasi-isomorphism fails" : v.failure);
    }
    run.verdicts.push_back(std::move(v));
  }
  return run;
}

}  // namespace

TorsorReport check_swiss_cheese_type(const DgColoredOperadData& s, int truncation) {
  if (truncation < 1 || truncation > s.truncation)
    throw std::invalid_argument("check truncation must lie in 1.." +
                                std::to_string(s.truncation));
  s.validate();
  DgColoredOperadData view = s;
  view.truncation = truncation;
  const Constituents cons = extract_constituents(view);

  TorsorReport report;
  report.truncation = truncation;

  const Cell& m1 = cons.m.at(1);
  const auto m1_complex = m1.complex();
  const auto m1_space = m1.space();
  const auto h1 =
      lin::homology(m1_complex, m1_space.min_degree(), m1_space.max_degree());
  int total = 0, gen_degree = 0;
  for (auto& [d, dim] : h1.dims) {
    total += dim;
    if (dim > 0) gen_degree = d;
  }
  report.unary_condition = total == 1;
  if (!report.unary_condition) {
    report.pass = false;
    report.failure =
        "H(M(1)) has total dimension " + std::to_string(total) + ", expected 1";
    return report;
  }

  const SparseVec one =
      flat_representative(m1, gen_degree, h1.representatives.at(gen_degree).front());
  report.generator = vec_to_string(one, m1.labels);

  const ArityRun primary = run_arity_checks(s, cons, truncation, one);
  report.arities = primary.verdicts;
  report.pass = primary.pass;
  report.failure = primary.failure;

  // the verdict may not depend on which cocycle represents the class: rescale
  // always, and shift by a coboundary when the differential provides one
  std::vector<SparseVec> alternates;
  SparseVec doubled = one;
  for (auto& [i, v] : doubled) v *= 2;
  alternates.push_back(std::move(doubled));
  for (int c = 0; c < m1.dim() && alternates.size() < 3; ++c) {
    const auto col = m1.differential.column(c);
    if (col.empty()) continue;
    if (m1.degrees[static_cast<std::size_t>(col.begin()->first)] != gen_degree)
      continue;
    SparseVec shifted = one;
    add_scaled(shifted, col, Rat(1));
    alternates.push_back(std::move(shifted));
    report.independence_checked = true;
  }
  for (const auto& alt : alternates) {
    const ArityRun other = run_arity_checks(s, cons, truncation, alt);
    for (std::size_t i = 0; i < other.verdicts.size(); ++i)
      if (other.verdicts[i].pass != primary.verdicts[i].pass) {
        report.pass = false;
        report.failure = "verdict at arity " +
                         std::to_string(primary.verdicts[i].arity) +
                         " depends on the representative cocycle";
        return report;
      }
  }
  return report;
}

DgColoredOperadData from_cohomology(int m, int n, int truncation) {
  if (m < 1 || n <= m) throw std::invalid_argument("need n > m >= 1");
  if (truncation < 1 || truncation > 4)
    throw std::invalid_argument("truncation arity must lie in 1..4");

  DgColoredOperadData s;
  s.truncation = truncation;

  auto make_cell = [](const esc::EscContext& ctx) {
    Cell c;
    for (auto& lbl : esc::esc_basis(ctx)) {
      c.labels.push_back(esc::label_to_string(lbl));
      c.degrees.push_back(esc::label_degree(ctx, lbl));
    }
    c.differential = SparseMatrix(c.dim(), c.dim());
    return c;
  };

  for (int r = 1; r <= truncation; ++r) {
    s.cells.emplace(q_key(r),
                    make_cell({m, n, r, 0, esc::Color::free_output}));
    s.cells.emplace(m_key(r), make_cell({m, n, r, 0, esc::Color::mixed}));
    s.cells.emplace(p_key(r), make_cell({m, n, 0, r, esc::Color::mixed}));
  }
  s.units[q_key(1)] = {{0, Rat(1)}};
  s.units[p_key(1)] = {{0, Rat(1)}};

  const esc::EscContext m1_ctx{m, n, 1, 0, esc::Color::mixed};
  std::map<esc::EscLabel, int> m1_index;
  {
    int i = 0;
    for (auto& lbl : esc::esc_basis(m1_ctx)) m1_index.emplace(lbl, i++);
  }
  for (int r = 1; r <= truncation; ++r) {
    const esc::EscContext mr_ctx{m, n, r, 0, esc::Color::mixed};
    const esc::EscContext qr_ctx{m, n, r, 0, esc::Color::free_output};
    std::map<arnold::Word, int> q_index;
    {
      int i = 0;
      for (auto& lbl : esc::esc_basis(qr_ctx)) q_index.emplace(lbl.free_part, i++);
    }
    Composition comp;
    comp.outer = m_key(1);
    comp.inner = q_key(r);
    comp.result = m_key(r);
    const auto mr_basis = esc::esc_basis(mr_ctx);
    for (int c = 0; c < static_cast<int>(mr_basis.size()); ++c) {
      const auto co = esc::esc_cocompose(
          esc::esc_monomial(mr_ctx, mr_basis[static_cast<std::size_t>(c)]),
          esc::ColoredBlocks{{r}, {}});
      for (auto& [colabel, v] : co.terms)
        comp.entries.emplace_back(m1_index.at(colabel.base),
                                  q_index.at(colabel.free_slots.front()), c, v);
    }
    s.compositions.push_back(std::move(comp));
  }
  return s;
}

DgColoredOperadData commutative_two_colored(int truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation arity must be >= 1");
  DgColoredOperadData s;
  s.truncation = truncation;
  Cell point;
  point.labels = {"1"};
  point.degrees = {0};
  point.differential = SparseMatrix(1, 1);
  for (int r = 1; r <= truncation; ++r) {
    s.cells.emplace(q_key(r), point);
    s.cells.emplace(m_key(r), point);
    s.cells.emplace(p_key(r), point);
    Composition comp;
    comp.outer = m_key(1);
    comp.inner = q_key(r);
    comp.result = m_key(r);
    comp.entries.emplace_back(0, 0, 0, Rat(1));
    s.compositions.push_back(std::move(comp));
  }
  s.units[q_key(1)] = {{0, Rat(1)}};
  s.units[p_key(1)] = {{0, Rat(1)}};
  return s;
}

DgColoredOperadData role_swapped_fault(int m, int n, int truncation) {
  DgColoredOperadData s = from_cohomology(m, n, truncation);
  for (int r = 1; r <= truncation; ++r) s.cells[m_key(r)] = s.cells.at(p_key(r));
  s.compositions.clear();
  for (int r = 1; r <= truncation; ++r) {
    // the only degree-additive option left: unit of Q(r) to the bottom cell
    Composition comp;
    comp.outer = m_key(1);
    comp.inner = q_key(r);
    comp.result = m_key(r);
    comp.entries.emplace_back(0, 0, 0, Rat(1));
    s.compositions.push_back(std::move(comp));
  }
  return s;
}

namespace {

json key_to_json(const CellKey& key) {
  return json{{"output", color_name(key.output)},
              {"free_inputs", key.free_inputs},
              {"con_inputs", key.con_inputs}};
}

const json& field(const json& j, const std::string& name, const std::string& path) {
  auto it = j.find(name);
  if (it == j.end())
    throw std::invalid_argument(path + ": missing field \"" + name + "\"");
  return *it;
}

int int_field(const json& j, const std::string& name, const std::string& path) {
  const json& f = field(j, name, path);
  if (!f.is_number_integer())
    throw std::invalid_argument(path + "." + name + ": expected an integer");
  return f.get<int>();
}

std::string string_field(const json& j, const std::string& name,
                         const std::string& path) {
  const json& f = field(j, name, path);
  if (!f.is_string())
    throw std::invalid_argument(path + "." + name + ": expected a string");
  return f.get<std::string>();
}

CellKey key_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw std::invalid_argument(path + ": expected an object");
  CellKey key;
  const std::string color = string_field(j, "output", path);
  if (color == "free")
    key.output = esc::Color::free_output;
  else if (color == "mixed")
    key.output = esc::Color::mixed;
  else
    throw std::invalid_argument(path + ".output: expected \"free\" or \"mixed\"");
  key.free_inputs = int_field(j, "free_inputs", path);
  key.con_inputs = int_field(j, "con_inputs", path);
  return key;
}

Rat rat_field(const json& j, const std::string& name, const std::string& path) {
  const std::string text = string_field(j, name, path);
  try {
    return rat_from_string(text);
  } catch (const std::exception&) {
    throw std::invalid_argument(path + "." + name + ": bad rational \"" + text +
                                "\"");
  }
}

}  // namespace

std::string to_json(const DgColoredOperadData& s) {
  json out;
  out["schema"] = "dg-colored-operad/1";
  out["truncation"] = s.truncation;
  out["cells"] = json::array();
  for (auto& [key, cell] : s.cells) {
    json jc = key_to_json(key);
    jc["basis"] = json::array();
    for (int i = 0; i < cell.dim(); ++i)
      jc["basis"].push_back(json{{"label", cell.labels[static_cast<std::size_t>(i)]},
                                 {"degree", cell.degrees[static_cast<std::size_t>(i)]}});
    jc["differential"] = json::array();
    for (int r = 0; r < cell.differential.rows; ++r)
      for (auto& [c, v] : cell.differential.entries[static_cast<std::size_t>(r)])
        jc["differential"].push_back(
            json{{"row", cell.labels[static_cast<std::size_t>(r)]},
                 {"col", cell.labels[static_cast<std::size_t>(c)]},
                 {"value", rat_to_string(v)}});
    out["cells"].push_back(std::move(jc));
  }
  out["units"] = json::array();
  for (auto& [key, u] : s.units) {
    const Cell& cell = s.cell(key);
    json ju{{"cell", key_to_json(key)}};
    ju["coordinates"] = json::array();
    for (auto& [i, v] : u)
      ju["coordinates"].push_back(
          json{{"label", cell.labels[static_cast<std::size_t>(i)]},
               {"value", rat_to_string(v)}});
    out["units"].push_back(std::move(ju));
  }
  out["compositions"] = json::array();
  for (auto& comp : s.compositions) {
    const Cell& oc = s.cell(comp.outer);
    const Cell& ic = s.cell(comp.inner);
    const Cell& rc = s.cell(comp.result);
    json jc{{"outer", key_to_json(comp.outer)},
            {"inner", key_to_json(comp.inner)},
            {"result", key_to_json(comp.result)}};
    jc["entries"] = json::array();
    for (auto& [a, b, c, v] : comp.entries)
      jc["entries"].push_back(
          json{{"outer", oc.labels[static_cast<std::size_t>(a)]},
               {"inner", ic.labels[static_cast<std::size_t>(b)]},
               {"result", rc.labels[static_cast<std::size_t>(c)]},
               {"value", rat_to_string(v)}});
    out["compositions"].push_back(std::move(jc));
  }
  return out.dump(2) + "\n";
}

DgColoredOperadData from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("$: expected an object");
  if (string_field(j, "schema", "$") != "dg-colored-operad/1")
    throw std::invalid_argument("$.schema: unsupported schema \"" +
                                string_field(j, "schema", "$") + "\"");
  DgColoredOperadData s;
  s.truncation = int_field(j, "truncation", "$");

  const json& cells = field(j, "cells", "$");
  if (!cells.is_array()) throw std::invalid_argument("$.cells: expected an array");
  std::map<CellKey, std::map<std::string, int>> label_index;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const std::string path = "$.cells[" + std::to_string(ci) + "]";
    const json& jc = cells[ci];
    const CellKey key = key_from_json(jc, path);
    if (s.cells.count(key))
      throw std::invalid_argument(path + ": duplicate cell " + key_to_string(key));
    Cell cell;
    const json& basis = field(jc, "basis", path);
    if (!basis.is_array())
      throw std::invalid_argument(path + ".basis: expected an array");
    auto& index = label_index[key];
    for (std::size_t bi = 0; bi < basis.size(); ++bi) {
      const std::string bpath = path + ".basis[" + std::to_string(bi) + "]";
      cell.labels.push_back(string_field(basis[bi], "label", bpath));
      cell.degrees.push_back(int_field(basis[bi], "degree", bpath));
      if (!index.emplace(cell.labels.back(), static_cast<int>(bi)).second)
        throw std::invalid_argument(bpath + ": duplicate label \"" +
                                    cell.labels.back() + "\"");
    }
    cell.differential = SparseMatrix(cell.dim(), cell.dim());
    const json& diff = field(jc, "differential", path);
    if (!diff.is_array())
      throw std::invalid_argument(path + ".differential: expected an array");
    for (std::size_t di = 0; di < diff.size(); ++di) {
      const std::string dpath = path + ".differential[" + std::to_string(di) + "]";
      const std::string row = string_field(diff[di], "row", dpath);
      const std::string col = string_field(diff[di], "col", dpath);
      for (auto& lbl : {row, col})
        if (!index.count(lbl))
          throw std::invalid_argument(dpath + ": unknown label \"" + lbl + "\"");
      cell.differential.add_to(index.at(row), index.at(col),
                               rat_field(diff[di], "value", dpath));
    }
    s.cells.emplace(key, std::move(cell));
  }

  if (j.count("units")) {
    const json& units = j["units"];
    if (!units.is_array()) throw std::invalid_argument("$.units: expected an array");
    for (std::size_t ui = 0; ui < units.size(); ++ui) {
      const std::string path = "$.units[" + std::to_string(ui) + "]";
      const CellKey key = key_from_json(field(units[ui], "cell", path), path + ".cell");
      if (!label_index.count(key))
        throw std::invalid_argument(path + ".cell: no such cell " +
                                    key_to_string(key));
      SparseVec u;
      const json& coords = field(units[ui], "coordinates", path);
      if (!coords.is_array())
        throw std::invalid_argument(path + ".coordinates: expected an array");
      for (std::size_t i = 0; i < coords.size(); ++i) {
        const std::string cpath = path + ".coordinates[" + std::to_string(i) + "]";
        const std::string lbl = string_field(coords[i], "label", cpath);
        if (!label_index.at(key).count(lbl))
          throw std::invalid_argument(cpath + ": unknown label \"" + lbl + "\"");
        u[label_index.at(key).at(lbl)] = rat_field(coords[i], "value", cpath);
      }
      s.units[key] = std::move(u);
    }
  }

  const json& comps = field(j, "compositions", "$");
  if (!comps.is_array())
    throw std::invalid_argument("$.compositions: expected an array");
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const std::string path = "$.compositions[" + std::to_string(ci) + "]";
    Composition comp;
    comp.outer = key_from_json(field(comps[ci], "outer", path), path + ".outer");
    comp.inner = key_from_json(field(comps[ci], "inner", path), path + ".inner");
    comp.result = key_from_json(field(comps[ci], "result", path), path + ".result");
    for (auto& [role, key] : {std::pair<std::string, CellKey>{"outer", comp.outer},
                              {"inner", comp.inner},
                              {"result", comp.result}})
      if (!label_index.count(key))
        throw std::invalid_argument(path + "." + role + ": no such cell " +
                                    key_to_string(key));
    const json& entries = field(comps[ci], "entries", path);
    if (!entries.is_array())
      throw std::invalid_argument(path + ".entries: expected an array");
    for (std::size_t ei = 0; ei < entries.size(); ++ei) {
      const std::string epath = path + ".entries[" + std::to_string(ei) + "]";
      auto look = [&](const std::string& role, const CellKey& key) {
        const std::string lbl = string_field(entries[ei], role, epath);
        auto& index = label_index.at(key);
        auto it = index.find(lbl);
        if (it == index.end())
          throw std::invalid_argument(epath + "." + role + ": unknown label \"" +
                                      lbl + "\"");
        return it->second;
      };
      comp.entries.emplace_back(look("outer", comp.outer), look("inner", comp.inner),
                                look("result", comp.result),
                                rat_field(entries[ei], "value", epath));
    }
    s.compositions.push_back(std::move(comp));
  }
  return s;
}

std::string report_to_json(const TorsorReport& r) {
  json out;
  out["schema"] = "torsor-report/1";
  out["pass"] = r.pass;
  out["truncation"] = r.truncation;
  out["unary_condition"] = r.unary_condition;
  out["generator"] = r.generator;
  out["independence_checked"] = r.independence_checked;
  out["failure"] = r.failure;
  out["arities"] = json::array();
  for (auto& v : r.arities) {
    json jv{{"arity", v.arity}, {"pass", v.pass}, {"failure", v.failure}};
    jv["source_homology"] = json::object();
    for (auto& [d, dim] : v.source_h) jv["source_homology"][std::to_string(d)] = dim;
    jv["target_homology"] = json::object();
    for (auto& [d, dim] : v.target_h) jv["target_homology"][std::to_string(d)] = dim;
    out["arities"].push_back(std::move(jv));
  }
  return out.dump(2) + "\n";
}

std::string report_to_text(const TorsorReport& r) {
  std::ostringstream os;
  os << "swiss-cheese type check, arities 1.." << r.truncation << "\n";
  os << "  H(M(1)) one-dimensional: " << (r.unary_condition ? "yes" : "no") << "\n";
  if (!r.generator.empty()) os << "  generator: " << r.generator << "\n";
  auto dims = [](const std::map<int, int>& h) {
    std::ostringstream d;
    bool first = true;
    for (auto& [deg, dim] : h) {
      if (!first) d << ", ";
      first = false;
      d << dim << " in degree " << deg;
    }
    return first ? std::string("0") : d.str();
  };
  for (auto& v : r.arities) {
    os << "  arity " << v.arity << ": " << (v.pass ? "pass" : "FAIL")
       << "  [H(Q) = " << dims(v.source_h) << "; H(M) = " << dims(v.target_h) << "]";
    if (!v.failure.empty()) os << "  " << v.failure;
    os << "\n";
  }
  os << (r.pass ? "PASS" : "FAIL: " + r.failure) << "\n";
  return os.str();
}

}  // namespace escops::torsor
