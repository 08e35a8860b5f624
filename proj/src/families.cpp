#include "lalg/families.hpp"

#include <algorithm>
#include <string>

#include "lalg/ideals.hpp"
#include "lalg/io.hpp"

namespace lalg {

using nlohmann::json;

namespace {

void require_positive(std::size_t n) {
  if (n == 0) throw MalformedTable("a family member needs at least one element");
  if (n > 65535) throw TooLarge("family size exceeds the element range");
}

}  // namespace

AlgebraTable make_A(std::size_t n) {
  require_positive(n);
  std::vector<Element> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = static_cast<Element>(j > i ? j - i : 0);
  }
  return AlgebraTable(n, std::move(e));
}

AlgebraTable make_LH(std::size_t n) {
  require_positive(n);
  std::vector<Element> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = static_cast<Element>(i < j ? j : 0);
  }
  return AlgebraTable(n, std::move(e));
}

AlgebraTable four_element_ckl() {
  return AlgebraTable::from_rows({{0, 1, 2, 3}, {0, 0, 2, 1}, {0, 1, 0, 3}, {0, 0, 2, 0}},
                                 {"1", "x", "y", "z"});
}

AlgebraTable seven_element_ckl() {
  return AlgebraTable::from_rows({{0, 1, 2, 3, 4, 5, 6},
                                  {0, 0, 2, 3, 4, 5, 6},
                                  {0, 0, 0, 3, 4, 5, 6},
                                  {0, 0, 2, 0, 4, 3, 4},
                                  {0, 0, 0, 3, 0, 5, 3},
                                  {0, 0, 2, 0, 4, 0, 4},
                                  {0, 0, 0, 0, 0, 3, 0}},
                                 {"1", "x1", "x2", "x3", "x4", "x5", "x6"});
}

ActionMap two_by_three_action() {
  auto x = AlgebraTable::from_rows({{0, 1, 2}, {0, 0, 1}, {0, 1, 0}}, {"1", "x", "y"});
  auto y = AlgebraTable::from_rows({{0, 1}, {0, 0}}, {"1", "u"});
  return make_action(std::move(x), std::move(y), {{0, 1, 2}, {0, 0, 0}});
}

ActionMap rho_k_action(std::size_t n, std::size_t k) {
  if (k >= n) throw IndexOutOfRange("rho^(k) needs k < n");
  auto x = make_LH(n);
  std::vector<Element> id(n), r0(n);
  for (std::size_t i = 0; i < n; ++i) {
    id[i] = static_cast<Element>(i);
    r0[i] = i <= k ? 0 : static_cast<Element>(i);
  }
  // A_2 = {1 > 0}: index 0 is the unit, index 1 the bottom.
  return make_action(std::move(x), make_A(2), {id, r0});
}

std::vector<Element> chain_order(const AlgebraTable& t) {
  if (!is_linear(t)) throw Falsified("chain order requested for a non-linear algebra");
  const auto n = t.size();
  std::vector<Element> out(n);
  for (Element x = 0; x < n; ++x) out[upset(t, x).size() - 1] = x;
  return out;
}

namespace {

// Minimal elements of the subalgebra `s` whose upset inside `s` is a chain.
std::vector<Tail> tails_in(const AlgebraTable& t, ElementSet s) {
  std::vector<Tail> out;
  for (auto z : s) {
    bool minimal = true;
    for (auto y : s) {
      if (y != z && leq(t, y, z)) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    const auto up = upset(t, z) & s;
    if (is_chain(t, up)) out.push_back({z, up});
  }
  return out;
}

// The smallest element of `s`, if it has one.
std::optional<Element> minimum_of(const AlgebraTable& t, ElementSet s) {
  for (auto z : s) {
    bool below_all = true;
    for (auto y : s) {
      if (!leq(t, z, y)) {
        below_all = false;
        break;
      }
    }
    if (below_all) return z;
  }
  return std::nullopt;
}

json witness_json(const std::optional<TailPlusWitness>& w) {
  if (!w) return nullptr;
  return {{"y", to_json(w->y)}, {"y0", to_json(w->y0)}, {"z0", w->z0}};
}

}  // namespace

json TailReport::to_json() const {
  json ts = json::array();
  for (const auto& t : tails) ts.push_back({{"z", t.z}, {"upset", lalg::to_json(t.up)}});
  return {{"tails", ts},
          {"tail_plus", is_tail_plus},
          {"witness", witness_json(witness)},
          {"tail_plus_complement_of_y0", is_tail_plus_alt},
          {"witness_complement_of_y0", witness_json(witness_alt)}};
}

TailReport tail_analysis(const AlgebraTable& t) {
  require_l_algebra(t);
  const auto n = t.size();
  if (n > 64) throw TooLarge("tail analysis is limited to 64 elements");
  const auto full = ElementSet::full(n);
  TailReport r;
  r.tails = tails_in(t, full);
  r.has_tail = !r.tails.empty();
  if (is_ckl(t)) {
    for (const auto& tail : r.tails) {
      if (!is_ideal(t, tail.up)) {
        throw Falsified("tail of " + std::to_string(tail.z) + " in a CKL algebra is not an ideal");
      }
    }
  }
  if (r.has_tail) {
    r.is_tail_plus = r.is_tail_plus_alt = true;
    return r;
  }
  if (n > 20) throw TooLarge("tail+ search is limited to 20 elements");
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t rest = 0; rest < count && !(r.is_tail_plus && r.is_tail_plus_alt); ++rest) {
    const ElementSet y0(1 | (rest << 1));
    if (y0.size() < 2 || !is_subalgebra(t, y0)) continue;
    const auto z0 = minimum_of(t, y0);
    if (!z0 || *z0 == 0) continue;
    auto y = y0;
    y.erase(*z0);
    if (!is_subalgebra(t, y) || tails_in(t, y).empty()) continue;
    const TailPlusWitness w{y, y0, *z0};
    if (!r.is_tail_plus && is_chain(t, full.minus(y))) {
      r.is_tail_plus = true;
      r.witness = w;
    }
    if (!r.is_tail_plus_alt && is_chain(t, full.minus(y0))) {
      r.is_tail_plus_alt = true;
      r.witness_alt = w;
    }
  }
  return r;
}

std::vector<ElementSet> hasse_components(const AlgebraTable& t) {
  const auto order = order_structure(t);
  const auto n = t.size();
  std::vector<int> comp(n, -1);
  std::vector<ElementSet> out;
  for (Element s = 1; s < n; ++s) {
    if (comp[s] >= 0) continue;
    ElementSet c{s};
    comp[s] = static_cast<int>(out.size());
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& [hi, lo] : order.hasse_edges) {
        if (hi == 0 || lo == 0) continue;
        if (c.contains(hi) != c.contains(lo)) {
          const auto add = c.contains(hi) ? lo : hi;
          c.insert(add);
          comp[add] = comp[s];
          grew = true;
        }
      }
    }
    out.push_back(c);
  }
  return out;
}

GlivenkoCheck glivenko_check(const AlgebraTable& t) {
  GlivenkoCheck r;
  if (t.size() < 2 || !is_ckl(t)) return r;
  const auto mins = minimal_elements(t);
  if (mins.size() != 1) return r;
  r.applicable = true;
  const Element zero = mins.front();
  auto y = ElementSet::full(t.size());
  y.erase(zero);
  r.subalgebra = is_subalgebra(t, y);
  if (!r.subalgebra) {
    r.witness = {{"reason", "X minus its minimum is not closed"}};
    return r;
  }
  const auto members = y.to_vector();
  std::vector<ElementSet> of_y;
  const auto lattice_y = all_ideals(subalgebra(t, y));
  for (const auto& i : lattice_y.ideals()) {
    ElementSet back;
    for (auto k : i) back.insert(members[k]);
    of_y.push_back(back);
  }
  std::vector<ElementSet> expected;
  const auto lattice = all_ideals(t);
  for (const auto& i : lattice.ideals()) {
    if (!i.contains(zero)) expected.push_back(i);
  }
  if (std::find(expected.begin(), expected.end(), y) == expected.end()) expected.push_back(y);
  std::sort(of_y.begin(), of_y.end(), size_lex_less);
  std::sort(expected.begin(), expected.end(), size_lex_less);
  r.ideals_match = of_y == expected;
  if (!r.ideals_match) {
    json a = json::array(), b = json::array();
    for (const auto& i : of_y) a.push_back(to_json(i));
    for (const auto& i : expected) b.push_back(to_json(i));
    r.witness = {{"ideals_of_y", a}, {"expected", b}};
  }
  return r;
}

}  // namespace lalg
