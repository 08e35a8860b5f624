#include "lalg/algebra.hpp"

#include <algorithm>
#include <tuple>

#include "lalg/ideals.hpp"

namespace lalg {

AlgebraTable::AlgebraTable(std::size_t n, std::vector<Element> entries, std::vector<std::string> names)
    : n_(n), entries_(std::move(entries)), names_(std::move(names)) {
  if (n_ == 0) throw MalformedTable("table must have at least one element");
  if (n_ > 0xFFFF) throw MalformedTable("table too large");
  if (entries_.size() != n_ * n_) {
    throw MalformedTable("expected " + std::to_string(n_ * n_) + " entries, got " +
                         std::to_string(entries_.size()));
  }
  for (auto e : entries_) {
    if (e >= n_) throw MalformedTable("entry " + std::to_string(e) + " out of range");
  }
  if (!names_.empty() && names_.size() != n_) {
    throw MalformedTable("expected " + std::to_string(n_) + " names, got " +
                         std::to_string(names_.size()));
  }
}

AlgebraTable AlgebraTable::from_rows(const std::vector<std::vector<int>>& rows,
                                     std::vector<std::string> names) {
  const auto n = rows.size();
  std::vector<Element> entries;
  entries.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw MalformedTable("table is not square");
    for (int v : r) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw MalformedTable("entry " + std::to_string(v) + " out of range");
      }
      entries.push_back(static_cast<Element>(v));
    }
  }
  return AlgebraTable(n, std::move(entries), std::move(names));
}

std::string AlgebraTable::name(Element x) const {
  if (!names_.empty()) return names_.at(x);
  return x == 0 ? std::string("1") : "x" + std::to_string(x);
}

std::string_view to_string(Identity id) {
  switch (id) {
    case Identity::unit_left: return "unit_left";
    case Identity::unit_right: return "unit_right";
    case Identity::self: return "self";
    case Identity::cycloid: return "cycloid";
    case Identity::antisymmetry: return "antisymmetry";
    case Identity::kl: return "kl";
    case Identity::ckl: return "ckl";
    case Identity::hilbert: return "hilbert";
    case Identity::linear: return "linear";
    case Identity::bounded: return "bounded";
    case Identity::simple: return "simple";
  }
  return "unknown";
}

namespace {

bool is_minimal(const AlgebraTable& t, Element z) {
  for (Element y = 0; y < t.size(); ++y) {
    if (y != z && leq(t, y, z)) return false;
  }
  return true;
}

}  // namespace

bool witness_violates(const AlgebraTable& t, const Witness& w) {
  const auto& v = w.tuple;
  auto arity = [&](std::size_t k) {
    if (v.size() != k) return false;
    return std::all_of(v.begin(), v.end(), [&](Element e) { return e < t.size(); });
  };
  switch (w.identity) {
    case Identity::unit_left: return arity(1) && t.dot(0, v[0]) != v[0];
    case Identity::unit_right: return arity(1) && t.dot(v[0], 0) != 0;
    case Identity::self: return arity(1) && t.dot(v[0], v[0]) != 0;
    case Identity::cycloid: {
      if (!arity(3)) return false;
      auto [x, y, z] = std::tuple(v[0], v[1], v[2]);
      return t.dot(t.dot(x, y), t.dot(x, z)) != t.dot(t.dot(y, x), t.dot(y, z));
    }
    case Identity::antisymmetry:
      return arity(2) && v[0] != v[1] && t.dot(v[0], v[1]) == 0 && t.dot(v[1], v[0]) == 0;
    case Identity::kl: return arity(2) && t.dot(v[0], t.dot(v[1], v[0])) != 0;
    case Identity::ckl: {
      if (!arity(3)) return false;
      return t.dot(v[0], t.dot(v[1], v[2])) != t.dot(v[1], t.dot(v[0], v[2]));
    }
    case Identity::hilbert: {
      if (!arity(3)) return false;
      return t.dot(v[0], t.dot(v[1], v[2])) != t.dot(t.dot(v[0], v[1]), t.dot(v[0], v[2]));
    }
    case Identity::linear:
      return arity(2) && t.dot(v[0], v[1]) != 0 && t.dot(v[1], v[0]) != 0;
    case Identity::bounded:
      return arity(2) && v[0] != v[1] && is_minimal(t, v[0]) && is_minimal(t, v[1]);
    case Identity::simple:
      if (v.empty()) return t.size() < 2;
      if (!arity(1) || t.size() > ElementSet::capacity) return false;
      {
        auto g = generated_ideal(t, ElementSet{v[0]});
        return g.size() != 1 && g != ElementSet::full(t.size());
      }
  }
  return false;
}

const Witness* ClassificationReport::witness_for(std::string_view flag) const {
  for (const auto& [name, w] : witnesses) {
    if (name == flag) return &w;
  }
  return nullptr;
}

std::optional<Witness> l_algebra_violation(const AlgebraTable& t) {
  const auto n = static_cast<Element>(t.size());
  for (Element x = 0; x < n; ++x) {
    if (t.dot(0, x) != x) return Witness{Identity::unit_left, {x}};
    if (t.dot(x, 0) != 0) return Witness{Identity::unit_right, {x}};
    if (t.dot(x, x) != 0) return Witness{Identity::self, {x}};
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      if (t.dot(x, y) == 0 && t.dot(y, x) == 0) return Witness{Identity::antisymmetry, {x, y}};
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      const auto xy = t.dot(x, y);
      const auto yx = t.dot(y, x);
      for (Element z = 0; z < n; ++z) {
        if (t.dot(xy, t.dot(x, z)) != t.dot(yx, t.dot(y, z))) {
          return Witness{Identity::cycloid, {x, y, z}};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_l_algebra(const AlgebraTable& t) { return !l_algebra_violation(t); }

void require_l_algebra(const AlgebraTable& t) {
  if (auto w = l_algebra_violation(t)) {
    throw NotAnLAlgebra("table violates the " + std::string(to_string(w->identity)) + " axiom");
  }
}

namespace {

std::optional<Witness> kl_violation(const AlgebraTable& t) {
  const auto n = static_cast<Element>(t.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (t.dot(x, t.dot(y, x)) != 0) return Witness{Identity::kl, {x, y}};
    }
  }
  return std::nullopt;
}

std::optional<Witness> ckl_violation(const AlgebraTable& t) {
  const auto n = static_cast<Element>(t.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      for (Element z = 0; z < n; ++z) {
        if (t.dot(x, t.dot(y, z)) != t.dot(y, t.dot(x, z))) return Witness{Identity::ckl, {x, y, z}};
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> hilbert_violation(const AlgebraTable& t) {
  const auto n = static_cast<Element>(t.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      const auto xy = t.dot(x, y);
      for (Element z = 0; z < n; ++z) {
        if (t.dot(x, t.dot(y, z)) != t.dot(xy, t.dot(x, z))) {
          return Witness{Identity::hilbert, {x, y, z}};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> linear_violation(const AlgebraTable& t) {
  const auto n = static_cast<Element>(t.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      if (t.dot(x, y) != 0 && t.dot(y, x) != 0) return Witness{Identity::linear, {x, y}};
    }
  }
  return std::nullopt;
}

std::optional<Witness> bounded_violation(const AlgebraTable& t) {
  auto mins = minimal_elements(t);
  if (mins.size() >= 2) return Witness{Identity::bounded, {mins[0], mins[1]}};
  return std::nullopt;
}

}  // namespace

bool is_kl(const AlgebraTable& t) { return is_l_algebra(t) && !kl_violation(t); }
bool is_ckl(const AlgebraTable& t) { return is_l_algebra(t) && !ckl_violation(t); }
bool is_hilbert(const AlgebraTable& t) { return is_l_algebra(t) && !hilbert_violation(t); }
bool is_linear(const AlgebraTable& t) { return is_l_algebra(t) && !linear_violation(t); }

ClassificationReport validate(const AlgebraTable& t) {
  ClassificationReport r;
  auto lw = l_algebra_violation(t);
  r.is_l = !lw;
  if (lw) {
    // Every subclass flag fails with the same underlying witness.
    for (const char* flag : {"l", "kl", "ckl", "hilbert", "linear", "bounded", "simple"}) {
      r.witnesses.emplace_back(flag, *lw);
    }
    return r;
  }
  auto record = [&](bool& flag, const char* name, std::optional<Witness> w) {
    flag = !w;
    if (w) r.witnesses.emplace_back(name, std::move(*w));
  };
  record(r.is_kl, "kl", kl_violation(t));
  record(r.is_ckl, "ckl", ckl_violation(t));
  record(r.is_hilbert, "hilbert", hilbert_violation(t));
  record(r.is_linear, "linear", linear_violation(t));
  record(r.is_bounded, "bounded", bounded_violation(t));
  record(r.is_simple, "simple", simplicity_violation(t));
  return r;
}

ElementSet downset(const AlgebraTable& t, Element x) {
  t.check_index(x);
  if (t.size() > ElementSet::capacity) throw TooLarge("element sets hold at most 64 elements");
  ElementSet s;
  for (Element y = 0; y < t.size(); ++y) {
    if (leq(t, y, x)) s.insert(y);
  }
  return s;
}

ElementSet upset(const AlgebraTable& t, Element x) {
  t.check_index(x);
  if (t.size() > ElementSet::capacity) throw TooLarge("element sets hold at most 64 elements");
  ElementSet s;
  for (Element y = 0; y < t.size(); ++y) {
    if (leq(t, x, y)) s.insert(y);
  }
  return s;
}

bool is_invariant_element(const AlgebraTable& t, Element x) {
  for (Element y = 0; y < t.size(); ++y) {
    if (y != x && leq(t, x, y) && t.dot(y, x) != x) return false;
  }
  return true;
}

bool is_prime_element(const AlgebraTable& t, Element x) {
  if (x == 0) return false;
  for (Element y = 0; y < t.size(); ++y) {
    if (y != x && leq(t, x, y) && !leq(t, t.dot(y, x), x)) return false;
  }
  return true;
}

std::vector<Element> minimal_elements(const AlgebraTable& t) {
  std::vector<Element> out;
  for (Element z = 0; z < t.size(); ++z) {
    if (is_minimal(t, z)) out.push_back(z);
  }
  return out;
}

bool is_chain(const AlgebraTable& t, ElementSet subset) {
  for (auto x : subset) {
    for (auto y : subset) {
      if (x < y && !leq(t, x, y) && !leq(t, y, x)) return false;
    }
  }
  return true;
}

bool is_subalgebra(const AlgebraTable& t, ElementSet subset) {
  for (auto x : subset) {
    for (auto y : subset) {
      if (!subset.contains(t.dot(x, y))) return false;
    }
  }
  return true;
}

AlgebraTable subalgebra(const AlgebraTable& t, ElementSet subset) {
  if (!subset.contains(0) || !is_subalgebra(t, subset)) {
    throw NotAnLAlgebra("subset is not a unital subalgebra");
  }
  auto members = subset.to_vector();
  std::vector<Element> position(t.size(), 0);
  for (std::size_t i = 0; i < members.size(); ++i) position[members[i]] = static_cast<Element>(i);
  std::vector<Element> entries;
  entries.reserve(members.size() * members.size());
  std::vector<std::string> names;
  for (auto x : members) {
    if (!t.names().empty()) names.push_back(t.names()[x]);
    for (auto y : members) entries.push_back(position[t.dot(x, y)]);
  }
  return AlgebraTable(members.size(), std::move(entries), std::move(names));
}

OrderStructure order_structure(const AlgebraTable& t) {
  require_l_algebra(t);
  const auto n = t.size();
  OrderStructure o;
  o.n = n;
  o.leq.assign(n, std::vector<bool>(n, false));
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) o.leq[x][y] = leq(t, x, y);
  }
  for (Element upper = 0; upper < n; ++upper) {
    for (Element lower = 0; lower < n; ++lower) {
      if (upper == lower || !o.leq[lower][upper]) continue;
      bool covers = true;
      for (Element mid = 0; mid < n && covers; ++mid) {
        if (mid != upper && mid != lower && o.leq[lower][mid] && o.leq[mid][upper]) covers = false;
      }
      if (covers) o.hasse_edges.emplace_back(upper, lower);
    }
  }
  o.minimal_elements = minimal_elements(t);
  for (Element x = 0; x < n; ++x) {
    if (is_invariant_element(t, x)) o.invariant_elements.push_back(x);
    if (is_prime_element(t, x)) o.prime_elements.push_back(x);
  }
  return o;
}

bool is_morphism(const AlgebraTable& source, const AlgebraTable& target,
                 std::span<const Element> map) {
  if (map.size() != source.size()) return false;
  for (auto m : map) {
    if (m >= target.size()) return false;
  }
  if (map[0] != 0) return false;
  for (Element x = 0; x < source.size(); ++x) {
    for (Element y = 0; y < source.size(); ++y) {
      if (map[source.dot(x, y)] != target.dot(map[x], map[y])) return false;
    }
  }
  return true;
}

ElementSet kernel(const Morphism& f) {
  ElementSet k;
  for (Element x = 0; x < f.source_size; ++x) {
    if (f.map[x] == 0) k.insert(x);
  }
  return k;
}

std::vector<Morphism> endomorphisms(const AlgebraTable& t) {
  const auto n = t.size();
  std::vector<Morphism> out;
  std::vector<Element> map(n, 0);
  // Assign images in index order; a product x·y can be checked as soon as x,
  // y and x·y all have images.
  auto consistent = [&](Element last) {
    for (Element x = 0; x <= last; ++x) {
      for (Element y = 0; y <= last; ++y) {
        const auto xy = t.dot(x, y);
        if (xy > last) continue;
        if (x != last && y != last && xy != last) continue;
        if (map[xy] != t.dot(map[x], map[y])) return false;
      }
    }
    return true;
  };
  auto search = [&](auto&& self, Element next) -> void {
    if (next == n) {
      out.push_back(Morphism{n, n, map});
      return;
    }
    for (Element image = 0; image < n; ++image) {
      map[next] = image;
      if (consistent(next)) self(self, static_cast<Element>(next + 1));
    }
    map[next] = 0;
  };
  if (!consistent(0)) return out;
  search(search, 1);
  return out;
}

}  // namespace lalg
