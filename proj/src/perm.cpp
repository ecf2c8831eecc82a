#include "escops/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace escops::e1 {

namespace {

void add_value(std::map<Perm, Rat>& acc, const Perm& p, const Rat& c) {
  auto it = acc.find(p);
  if (it == acc.end()) {
    if (c != 0) acc.emplace(p, c);
  } else {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

void check_member(const PermFunction& f, const Perm& p) {
  if (static_cast<int>(p.size()) != f.l || !is_perm(p))
    throw std::invalid_argument("not a permutation of {1.." + std::to_string(f.l) +
                                "}");
}

}  // namespace

bool is_perm(const Perm& p) {
  std::vector<char> seen(p.size() + 1, 0);
  for (int v : p) {
    if (v < 1 || v > static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)])
      return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

std::vector<Perm> all_perms(int l) {
  if (l < 0) throw std::invalid_argument("all_perms: negative arity");
  Perm id(static_cast<std::size_t>(l));
  std::iota(id.begin(), id.end(), 1);
  std::vector<Perm> out;
  do {
    out.push_back(id);
  } while (std::next_permutation(id.begin(), id.end()));
  return out;
}

PermFunction& PermFunction::operator+=(const PermFunction& o) {
  if (l != o.l) throw std::invalid_argument("arity mismatch in +");
  for (auto& [p, c] : o.values) add_value(values, p, c);
  return *this;
}

PermFunction& PermFunction::operator*=(const Rat& c) {
  if (c == 0) {
    values.clear();
    return *this;
  }
  for (auto& [p, v] : values) v *= c;
  return *this;
}

PermFunction zero_function(int l) {
  if (l < 0) throw std::invalid_argument("negative arity");
  return PermFunction{l, {}};
}

PermFunction unit_function(int l) {
  PermFunction out = zero_function(l);
  for (auto& p : all_perms(l)) out.values.emplace(p, Rat(1));
  return out;
}

PermFunction delta(int l, const Perm& p, const Rat& c) {
  PermFunction out = zero_function(l);
  check_member(out, p);
  if (c != 0) out.values.emplace(p, c);
  return out;
}

PermFunction multiply(const PermFunction& a, const PermFunction& b) {
  if (a.l != b.l) throw std::invalid_argument("arity mismatch in multiply");
  PermFunction out = zero_function(a.l);
  for (auto& [p, ca] : a.values) {
    auto it = b.values.find(p);
    if (it != b.values.end()) out.values.emplace(p, ca * it->second);
  }
  return out;
}

Perm block_compose(const Perm& base, const std::vector<Perm>& slots) {
  if (base.size() != slots.size() || !is_perm(base))
    throw std::invalid_argument("block_compose: malformed base");
  std::vector<int> offset(slots.size() + 1, 0);
  for (std::size_t b = 0; b < slots.size(); ++b) {
    if (!is_perm(slots[b])) throw std::invalid_argument("block_compose: malformed slot");
    offset[b + 1] = offset[b] + static_cast<int>(slots[b].size());
  }
  Perm out;
  out.reserve(static_cast<std::size_t>(offset.back()));
  for (int b : base)
    for (int v : slots[static_cast<std::size_t>(b) - 1])
      out.push_back(v + offset[static_cast<std::size_t>(b) - 1]);
  return out;
}

Perm forget_pattern(const Perm& sigma, const arnold::Injection& j) {
  j.validate();
  if (j.target_arity != static_cast<int>(sigma.size()) || !is_perm(sigma))
    throw std::invalid_argument("forget_pattern: arity mismatch");
  std::vector<int> back(sigma.size() + 1, 0);  // back[j(i)] = i
  for (std::size_t i = 0; i < j.images.size(); ++i)
    back[static_cast<std::size_t>(j.images[i])] = static_cast<int>(i) + 1;
  Perm out;
  out.reserve(j.images.size());
  for (int v : sigma)
    if (back[static_cast<std::size_t>(v)] != 0)
      out.push_back(back[static_cast<std::size_t>(v)]);
  return out;
}

PermFunction relabel(const PermFunction& x, const arnold::Injection& j) {
  if (j.arity() != x.l)
    throw std::invalid_argument("relabel: injection domain != function arity");
  PermFunction out = zero_function(j.target_arity);
  for (auto& sigma : all_perms(j.target_arity)) {
    auto it = x.values.find(forget_pattern(sigma, j));
    if (it != x.values.end()) out.values.emplace(sigma, it->second);
  }
  return out;
}

PermCoElement cocompose(const PermFunction& x, const std::vector<int>& block_sizes) {
  int total = 0;
  for (int b : block_sizes) {
    if (b < 1) throw std::invalid_argument("cocompose: block sizes must be >= 1");
    total += b;
  }
  if (total != x.l) throw std::invalid_argument("cocompose: blocks do not partition {1..l}");

  PermCoElement out;
  out.base_arity = static_cast<int>(block_sizes.size());
  out.slot_arities = block_sizes;
  std::vector<int> offset(block_sizes.size() + 1, 0);
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    offset[b + 1] = offset[b] + block_sizes[b];
  std::vector<int> block_of(static_cast<std::size_t>(total) + 1, 0);
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    for (int v = offset[b] + 1; v <= offset[b + 1]; ++v)
      block_of[static_cast<std::size_t>(v)] = static_cast<int>(b);

  for (auto& [sigma, c] : x.values) {
    // σ factors through block composition iff each block's labels are
    // contiguous in σ; the factorization is then unique.
    std::vector<Perm> key(block_sizes.size() + 1);
    bool ok = true;
    std::size_t pos = 0;
    while (pos < sigma.size() && ok) {
      const int b = block_of[static_cast<std::size_t>(sigma[pos])];
      const std::size_t len = static_cast<std::size_t>(block_sizes[static_cast<std::size_t>(b)]);
      Perm local;
      local.reserve(len);
      for (std::size_t t = 0; t < len; ++t) {
        if (pos + t >= sigma.size() ||
            block_of[static_cast<std::size_t>(sigma[pos + t])] != b) {
          ok = false;
          break;
        }
        local.push_back(sigma[pos + t] - offset[static_cast<std::size_t>(b)]);
      }
      if (!ok) break;
      if (!key[static_cast<std::size_t>(b) + 1].empty()) {
        ok = false;  // block revisited: labels not contiguous
        break;
      }
      key[static_cast<std::size_t>(b) + 1] = std::move(local);
      key[0].push_back(b + 1);
      pos += len;
    }
    if (!ok) continue;
    auto it = out.terms.find(key);
    if (it == out.terms.end())
      out.terms.emplace(std::move(key), c);
    else
      it->second += c;
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = (it->second == 0) ? out.terms.erase(it) : std::next(it);
  return out;
}

PermFunction restrict_to_functions(const arnold::ArnoldElement& x) {
  PermFunction out = unit_function(x.ctx.r);
  out *= x.unit_coefficient();
  return out;
}

std::string perm_to_string(const Perm& p) {
  std::ostringstream os;
  os << "p[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ",";
    os << p[i];
  }
  os << "]";
  return os.str();
}

std::string to_string(const PermFunction& x) {
  if (x.values.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [p, c] : x.values) {
    const bool neg = c < 0;
    const Rat a = neg ? Rat(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (a == 1)
      os << perm_to_string(p);
    else
      os << rat_to_string(a) << "*" << perm_to_string(p);
  }
  return os.str();
}

PermFunction parse_function(int l, const std::string& text) {
  PermFunction out = zero_function(l);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto digits = [&]() -> std::string {
    skip();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start)
      throw std::invalid_argument("parse error at position " + std::to_string(i) +
                                  ": expected an integer");
    return text.substr(start, i - start);
  };
  auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c)
      throw std::invalid_argument("parse error at position " + std::to_string(i) +
                                  ": expected '" + std::string(1, c) + "'");
    ++i;
  };
  skip();
  if (i >= text.size()) throw std::invalid_argument("parse error: empty input");
  if (text[i] == '0') {
    std::size_t t = i + 1;
    while (t < text.size() && std::isspace(static_cast<unsigned char>(text[t]))) ++t;
    if (t >= text.size()) return out;
  }
  bool first_term = true;
  while (true) {
    skip();
    if (i >= text.size()) break;
    Rat coeff(1);
    if (text[i] == '-') {
      coeff = -1;
      ++i;
    } else if (text[i] == '+') {
      ++i;
    } else if (!first_term) {
      throw std::invalid_argument("parse error: expected '+' or '-' between terms");
    }
    first_term = false;
    skip();
    bool have_perm = false;
    Perm p;
    while (true) {
      skip();
      if (i < text.size() && text[i] == 'p') {
        ++i;
        expect('[');
        Perm q;
        q.push_back(std::stoi(digits()));
        while (true) {
          skip();
          if (i < text.size() && text[i] == ',') {
            ++i;
            q.push_back(std::stoi(digits()));
          } else {
            break;
          }
        }
        expect(']');
        if (have_perm) throw std::invalid_argument("parse error: two deltas in one term");
        have_perm = true;
        p = std::move(q);
      } else {
        Rat num(digits());
        skip();
        if (i < text.size() && text[i] == '/') {
          ++i;
          Rat den(digits());
          if (den == 0) throw std::invalid_argument("parse error: zero denominator");
          coeff *= num / den;
        } else {
          coeff *= num;
        }
      }
      skip();
      if (i < text.size() && text[i] == '*')
        ++i;
      else
        break;
    }
    if (!have_perm)
      throw std::invalid_argument("parse error: term without a delta p[..]");
    PermFunction piece = delta(l, p, coeff);
    out += piece;
  }
  return out;
}

}  // namespace escops::e1
