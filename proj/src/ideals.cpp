#include "lalg/ideals.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "lalg/io.hpp"

namespace lalg {

namespace {

void require_small(const AlgebraTable& t) {
  if (t.size() > ElementSet::capacity) {
    throw TooLarge("ideal computations support at most 64 elements");
  }
}

void check_subset(const AlgebraTable& t, ElementSet s) {
  require_small(t);
  if (!s.subset_of(ElementSet::full(t.size()))) throw IndexOutOfRange("subset has out-of-range members");
}

}  // namespace

std::string_view to_string(IdealCondition c) {
  switch (c) {
    case IdealCondition::unit: return "unit";
    case IdealCondition::i1: return "I1";
    case IdealCondition::i2: return "I2";
    case IdealCondition::i3: return "I3";
    case IdealCondition::i4: return "I4";
  }
  return "unknown";
}

std::optional<std::vector<Element>> condition_violation(const AlgebraTable& t, ElementSet s,
                                                        IdealCondition c) {
  const auto n = static_cast<Element>(t.size());
  if (c == IdealCondition::unit) {
    if (!s.contains(0)) return std::vector<Element>{};
    return std::nullopt;
  }
  for (auto x : s) {
    for (Element y = 0; y < n; ++y) {
      const auto xy = t.dot(x, y);
      switch (c) {
        case IdealCondition::i1:
          if (s.contains(xy) && !s.contains(y)) return std::vector<Element>{x, y};
          break;
        case IdealCondition::i2:
          if (!s.contains(t.dot(y, x))) return std::vector<Element>{x, y};
          break;
        case IdealCondition::i3:
          if (!s.contains(t.dot(xy, y))) return std::vector<Element>{x, y};
          break;
        case IdealCondition::i4:
          if (!s.contains(t.dot(y, xy))) return std::vector<Element>{x, y};
          break;
        case IdealCondition::unit: break;
      }
    }
  }
  return std::nullopt;
}

IdealCheck check_ideal(const AlgebraTable& t, ElementSet s) {
  check_subset(t, s);
  IdealCheck out;
  for (auto c : {IdealCondition::unit, IdealCondition::i1, IdealCondition::i2, IdealCondition::i3,
                 IdealCondition::i4}) {
    if (auto w = condition_violation(t, s, c)) {
      out.is_ideal = false;
      out.violated = c;
      out.witness = std::move(*w);
      break;
    }
  }
  // Reduced characterisations for the subclasses.
  const bool has_unit = s.contains(0);
  if (is_kl(t)) {
    const bool reduced = has_unit && !condition_violation(t, s, IdealCondition::i1) &&
                         !condition_violation(t, s, IdealCondition::i3);
    if (reduced != out.is_ideal) throw Falsified("KL ideal characterisation (I1)+(I3) disagrees");
  }
  if (is_ckl(t)) {
    const bool reduced = has_unit && !condition_violation(t, s, IdealCondition::i1);
    if (reduced != out.is_ideal) throw Falsified("CKL ideal characterisation 1 ∈ I + (I1) disagrees");
  }
  return out;
}

bool is_ideal(const AlgebraTable& t, ElementSet s) {
  check_subset(t, s);
  if (!s.contains(0)) return false;
  for (auto c : {IdealCondition::i1, IdealCondition::i2, IdealCondition::i3, IdealCondition::i4}) {
    if (condition_violation(t, s, c)) return false;
  }
  return true;
}

ElementSet generated_ideal(const AlgebraTable& t, ElementSet seed) {
  check_subset(t, seed);
  const auto n = static_cast<Element>(t.size());
  ElementSet s = seed;
  s.insert(0);
  for (bool changed = true; changed;) {
    const ElementSet before = s;
    for (auto x : before) {
      for (Element y = 0; y < n; ++y) {
        const auto xy = t.dot(x, y);
        s.insert(t.dot(y, x));
        s.insert(t.dot(xy, y));
        s.insert(t.dot(y, xy));
      }
    }
    // (I1) with the enlarged set.
    for (bool grew = true; grew;) {
      grew = false;
      for (auto x : s) {
        for (Element y = 0; y < n; ++y) {
          if (!s.contains(y) && s.contains(t.dot(x, y))) {
            s.insert(y);
            grew = true;
          }
        }
      }
    }
    changed = s != before;
  }
  return s;
}

std::vector<ElementSet> principal_ideals(const AlgebraTable& t) {
  std::vector<ElementSet> out;
  out.reserve(t.size());
  for (Element x = 0; x < t.size(); ++x) out.push_back(generated_ideal(t, ElementSet{x}));
  return out;
}

namespace {

void sort_ideals(std::vector<ElementSet>& v) {
  std::sort(v.begin(), v.end(), size_lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<ElementSet> ideals_by_upset_closure(const AlgebraTable& t) {
  require_small(t);
  const auto n = t.size();
  if (n > 24) throw TooLarge("upset enumeration is limited to 24 elements");
  std::vector<ElementSet> ups(n);
  for (Element x = 0; x < n; ++x) ups[x] = upset(t, x);
  std::set<std::uint64_t> seen;
  std::vector<ElementSet> out;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t rest = 0; rest < count; ++rest) {
    ElementSet s(1 | (rest << 1));
    bool upward = true;
    for (auto x : s) {
      if (!ups[x].subset_of(s)) {
        upward = false;
        break;
      }
    }
    if (!upward) continue;
    auto g = generated_ideal(t, s);
    if (seen.insert(g.bits()).second) out.push_back(g);
  }
  sort_ideals(out);
  return out;
}

std::vector<ElementSet> ideals_by_search(const AlgebraTable& t) {
  require_small(t);
  const auto n = static_cast<Element>(t.size());
  std::set<std::uint64_t> seen;
  std::vector<ElementSet> out;
  std::deque<ElementSet> queue;
  auto bottom = generated_ideal(t, ElementSet{0});
  seen.insert(bottom.bits());
  queue.push_back(bottom);
  while (!queue.empty()) {
    auto ideal = queue.front();
    queue.pop_front();
    out.push_back(ideal);
    for (Element x = 0; x < n; ++x) {
      if (ideal.contains(x)) continue;
      auto bigger = ideal;
      bigger.insert(x);
      auto g = generated_ideal(t, bigger);
      if (seen.insert(g.bits()).second) queue.push_back(g);
    }
  }
  sort_ideals(out);
  return out;
}

ElementSet ideal_product_set(const AlgebraTable& t, const std::vector<ElementSet>& principal,
                             ElementSet i, ElementSet j) {
  ElementSet out;
  for (Element x = 0; x < t.size(); ++x) {
    if ((principal[x] & i).subset_of(j)) out.insert(x);
  }
  return out;
}

IdealLattice::IdealLattice(AlgebraTable parent, std::vector<ElementSet> ideals)
    : parent_(std::move(parent)), ideals_(std::move(ideals)) {
  require_small(parent_);
  const auto k = ideals_.size();
  for (std::size_t i = 0; i < k; ++i) index_.emplace(ideals_[i].bits(), i);
  principal_ = principal_ideals(parent_);
  product_.resize(k * k);
  join_.resize(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      auto p = ideal_product_set(parent_, principal_, ideals_[i], ideals_[j]);
      auto pi = find(p);
      if (!pi) throw Falsified("ideal product is not an ideal");
      product_[i * k + j] = *pi;
      if (j < i) {
        join_[i * k + j] = join_[j * k + i];
      } else {
        auto ji = find(generated_ideal(parent_, ideals_[i] | ideals_[j]));
        if (!ji) throw Falsified("join of ideals missing from the ideal list");
        join_[i * k + j] = *ji;
      }
    }
  }
}

std::optional<std::size_t> IdealLattice::find(ElementSet s) const {
  auto it = index_.find(s.bits());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t IdealLattice::index_of(ElementSet s) const {
  auto i = find(s);
  if (!i) throw NotAnIdeal("subset is not an ideal of this algebra");
  return *i;
}

std::size_t IdealLattice::meet(std::size_t i, std::size_t j) const {
  auto m = find(ideals_[i] & ideals_[j]);
  if (!m) throw Falsified("intersection of ideals is not an ideal");
  return *m;
}

std::vector<std::size_t> IdealLattice::algebra_labels() const {
  std::vector<std::size_t> label(size());
  const auto t = top();
  label[t] = 0;
  std::size_t next = 1;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i != t) label[i] = next++;
  }
  return label;
}

AlgebraTable IdealLattice::as_algebra() const {
  const auto k = size();
  auto label = algebra_labels();
  std::vector<Element> entries(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      entries[label[i] * k + label[j]] = static_cast<Element>(label[product(i, j)]);
    }
  }
  return AlgebraTable(k, std::move(entries));
}

bool IdealLattice::is_distributive() const {
  const auto k = size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      for (std::size_t c = b; c < k; ++c) {
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) return false;
      }
    }
  }
  return true;
}

IdealLattice all_ideals(const AlgebraTable& t) {
  require_small(t);
  require_l_algebra(t);
  auto ideals = t.size() <= 8 ? ideals_by_upset_closure(t) : ideals_by_search(t);
  IdealLattice lattice(t, std::move(ideals));
  if (lattice[lattice.top()] != ElementSet::full(t.size()) || lattice[0] != ElementSet{0}) {
    throw Falsified("ideal list does not run from {1} to X");
  }
  if (!lattice.is_distributive()) throw Falsified("ideal lattice is not distributive");
  if (auto w = l_algebra_violation(lattice.as_algebra())) {
    throw Falsified("ideal product violates the " + std::string(to_string(w->identity)) + " axiom");
  }
  return lattice;
}

ElementSet ideal_product(const IdealLattice& lattice, ElementSet i, ElementSet j) {
  const auto ii = lattice.index_of(i);
  const auto jj = lattice.index_of(j);
  const auto p = lattice[lattice.product(ii, jj)];
  if (!(p & i).subset_of(j)) throw Falsified("(I·J) ∩ I is not contained in J");
  for (const auto& k : lattice.ideals()) {
    if ((k & i).subset_of(j) && !k.subset_of(p)) throw Falsified("I·J is not maximal");
  }
  return p;
}

bool is_prime_ideal(const IdealLattice& lattice, ElementSet p) {
  const auto pi = lattice.index_of(p);
  if (pi == lattice.top()) throw NotProper("X is not a proper ideal");
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (lattice.includes(i, pi)) continue;
    if (!lattice[lattice.product(i, pi)].subset_of(p)) return false;
  }
  return true;
}

bool is_prime_by_meets(const IdealLattice& lattice, ElementSet p) {
  const auto pi = lattice.index_of(p);
  if (pi == lattice.top()) throw NotProper("X is not a proper ideal");
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    for (std::size_t b = a; b < lattice.size(); ++b) {
      if ((lattice[a] & lattice[b]).subset_of(p) && !lattice.includes(a, pi) && !lattice.includes(b, pi)) {
        return false;
      }
    }
  }
  return true;
}

Spectrum spectrum(const IdealLattice& lattice) {
  Spectrum s;
  for (std::size_t i = 0; i + 1 < lattice.size(); ++i) {
    if (is_prime_ideal(lattice, lattice[i])) s.primes.push_back(lattice[i]);
  }
  for (const auto& ideal : lattice.ideals()) {
    std::vector<std::size_t> open;
    for (std::size_t p = 0; p < s.primes.size(); ++p) {
      if (!ideal.subset_of(s.primes[p])) open.push_back(p);
    }
    s.basis.push_back(std::move(open));
  }
  return s;
}

Spectrum spectrum(const AlgebraTable& t) { return spectrum(all_ideals(t)); }

ElementSet ideal_join(const IdealLattice& lattice, ElementSet i, ElementSet j) {
  return lattice[lattice.join(lattice.index_of(i), lattice.index_of(j))];
}

bool verify_join_membership(const IdealLattice& lattice, ElementSet i, ElementSet j) {
  const auto& t = lattice.parent();
  auto q = try_quotient(t, j);
  if (!q.result) throw CongruenceUndefined("congruence mod J: " + q.failure);
  const auto join = ideal_join(lattice, i, j);
  for (Element y = 0; y < t.size(); ++y) {
    bool witnessed = false;
    for (auto x : i) {
      if (congruent_mod(t, j, x, y)) {
        witnessed = true;
        break;
      }
    }
    if (witnessed != join.contains(y)) return false;
  }
  return true;
}

TryQuotient try_quotient(const AlgebraTable& t, ElementSet s) {
  check_subset(t, s);
  const auto n = static_cast<Element>(t.size());
  TryQuotient out;
  if (!s.contains(0)) {
    out.failure = "relation is not reflexive (1 missing)";
    return out;
  }
  // Relation rows as bitmasks.
  std::vector<ElementSet> rel(n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (congruent_mod(t, s, x, y)) rel[x].insert(y);
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (auto y : rel[x]) {
      if (!rel[y].subset_of(rel[x])) {
        out.failure = "relation is not transitive at (" + std::to_string(x) + ", " + std::to_string(y) + ")";
        return out;
      }
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (auto x2 : rel[x]) {
      for (Element y = 0; y < n; ++y) {
        if (!rel[t.dot(x, y)].contains(t.dot(x2, y)) || !rel[t.dot(y, x)].contains(t.dot(y, x2))) {
          out.failure = "relation is not compatible with the operation at (" + std::to_string(x) + ", " +
                        std::to_string(x2) + ", " + std::to_string(y) + ")";
          return out;
        }
      }
    }
  }
  std::vector<Element> cls(n, 0);
  std::vector<ElementSet> classes;
  std::vector<Element> representative;
  std::vector<bool> assigned(n, false);
  for (Element x = 0; x < n; ++x) {
    if (assigned[x]) continue;
    for (auto y : rel[x]) {
      assigned[y] = true;
      cls[y] = static_cast<Element>(classes.size());
    }
    classes.push_back(rel[x]);
    representative.push_back(x);
  }
  const auto k = classes.size();
  std::vector<Element> entries(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) entries[a * k + b] = cls[t.dot(representative[a], representative[b])];
  }
  AlgebraTable q(k, std::move(entries));
  if (auto w = l_algebra_violation(q)) {
    out.failure = "class table violates the " + std::string(to_string(w->identity)) + " axiom";
    return out;
  }
  out.result = QuotientResult{std::move(q), Morphism{n, k, cls}, std::move(classes)};
  return out;
}

QuotientResult quotient(const AlgebraTable& t, ElementSet ideal) {
  if (!is_ideal(t, ideal)) throw NotAnIdeal("quotient requires an ideal");
  auto q = try_quotient(t, ideal);
  if (!q.result) throw CongruenceUndefined(q.failure);
  if (kernel(q.result->projection) != ideal) throw Falsified("projection kernel differs from the ideal");
  return std::move(*q.result);
}

std::optional<Witness> simplicity_violation(const AlgebraTable& t) {
  if (t.size() < 2) return Witness{Identity::simple, {}};
  require_small(t);
  const auto full = ElementSet::full(t.size());
  for (Element x = 1; x < t.size(); ++x) {
    if (generated_ideal(t, ElementSet{x}) != full) return Witness{Identity::simple, {x}};
  }
  return std::nullopt;
}

bool is_simple(const AlgebraTable& t) {
  require_l_algebra(t);
  return !simplicity_violation(t);
}

nlohmann::json ideal_report(const IdealLattice& lattice) {
  using nlohmann::json;
  json ideals = json::array();
  for (const auto& i : lattice.ideals()) ideals.push_back(to_json(i));
  json product = json::array();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < lattice.size(); ++j) row.push_back(lattice.product(i, j));
    product.push_back(row);
  }
  auto spec = spectrum(lattice);
  json prime = json::array();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    prime.push_back(std::find(spec.primes.begin(), spec.primes.end(), lattice[i]) != spec.primes.end());
  }
  json primes = json::array();
  for (const auto& p : spec.primes) primes.push_back(lattice.index_of(p));
  json basis = json::array();
  for (std::size_t i = 0; i < spec.basis.size(); ++i) {
    json open = json::array();
    for (auto p : spec.basis[i]) open.push_back(lattice.index_of(spec.primes[p]));
    basis.push_back({{"ideal", i}, {"open", open}});
  }
  return {{"ideals", ideals},
          {"product", product},
          {"prime", prime},
          {"spectrum", {{"primes", primes}, {"basis", basis}}}};
}

}  // namespace lalg
