#include "lalg/products.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lalg/io.hpp"

namespace lalg {

using nlohmann::json;

std::string_view to_string(OperationClass c) {
  switch (c) {
    case OperationClass::l: return "L";
    case OperationClass::kl: return "KL";
    case OperationClass::ckl: return "CKL";
    case OperationClass::hilbert: return "Hilbert";
  }
  return "L";
}

OperationClass operation_class_from_string(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "l") return OperationClass::l;
  if (lower == "kl") return OperationClass::kl;
  if (lower == "ckl") return OperationClass::ckl;
  if (lower == "hilbert") return OperationClass::hilbert;
  throw MalformedTable("unknown operation class '" + std::string(s) + "'");
}

bool ActionMap::is_trivial() const {
  for (const auto& row : rho) {
    for (Element x = 0; x < row.size(); ++x) {
      if (row[x] != x) return false;
    }
  }
  return true;
}

namespace {

using Map = std::vector<Element>;

bool is_identity(const Map& f) {
  for (Element x = 0; x < f.size(); ++x) {
    if (f[x] != x) return false;
  }
  return true;
}

bool kl_compatible(const AlgebraTable& x, const Map& f) {
  for (Element a = 0; a < x.size(); ++a) {
    if (x.dot(a, f[a]) != 0) return false;
  }
  return true;
}

bool ckl_compatible(const AlgebraTable& x, const Map& f) {
  for (Element a = 0; a < x.size(); ++a) {
    for (Element b = 0; b < x.size(); ++b) {
      if (f[x.dot(a, b)] != x.dot(a, f[b])) return false;
    }
  }
  return true;
}

bool idempotent(const Map& f) {
  for (Element a = 0; a < f.size(); ++a) {
    if (f[f[a]] != f[a]) return false;
  }
  return true;
}

}  // namespace

OperationCheck check_operation(const AlgebraTable& base, const AlgebraTable& actor,
                               const std::vector<std::vector<Element>>& rho) {
  require_l_algebra(base);
  require_l_algebra(actor);
  OperationCheck out;
  const auto nx = base.size();
  const auto ny = actor.size();
  if (rho.size() != ny) {
    out.failure = "expected one map per element of the actor";
    return out;
  }
  for (Element u = 0; u < ny; ++u) {
    if (rho[u].size() != nx) {
      out.failure = "map " + std::to_string(u) + " has the wrong length";
      out.witness = {u};
      return out;
    }
    for (auto v : rho[u]) {
      if (v >= nx) {
        out.failure = "map " + std::to_string(u) + " has an out-of-range value";
        out.witness = {u};
        return out;
      }
    }
  }
  if (!is_identity(rho[0])) {
    out.failure = "rho of the unit is not the identity";
    out.witness = {0};
    return out;
  }
  for (Element u = 0; u < ny; ++u) {
    if (!is_morphism(base, base, rho[u])) {
      out.failure = "rho_" + std::to_string(u) + " is not an endomorphism";
      out.witness = {u};
      return out;
    }
  }
  for (Element u = 0; u < ny; ++u) {
    for (Element v = 0; v < ny; ++v) {
      const auto& a = rho[actor.dot(u, v)];
      const auto& b = rho[actor.dot(v, u)];
      for (Element x = 0; x < nx; ++x) {
        if (a[rho[u][x]] != b[rho[v][x]]) {
          out.failure = "compatibility rho_{u.v} rho_u = rho_{v.u} rho_v fails";
          out.witness = {u, v, x};
          return out;
        }
      }
    }
  }
  out.valid = true;
  out.cls = OperationClass::l;
  if (!is_kl(base) || !is_kl(actor)) return out;
  for (const auto& f : rho) {
    if (!kl_compatible(base, f)) return out;
  }
  out.cls = OperationClass::kl;
  if (!is_ckl(base) || !is_ckl(actor)) return out;
  for (Element u = 0; u < ny; ++u) {
    if (!ckl_compatible(base, rho[u])) return out;
    for (Element v = 0; v < ny; ++v) {
      for (Element x = 0; x < nx; ++x) {
        if (rho[u][rho[v][x]] != rho[v][rho[u][x]]) return out;
      }
    }
  }
  out.cls = OperationClass::ckl;
  if (!is_hilbert(base) || !is_hilbert(actor)) return out;
  for (const auto& f : rho) {
    if (!idempotent(f)) return out;
  }
  out.cls = OperationClass::hilbert;
  return out;
}

ActionMap make_action(AlgebraTable base, AlgebraTable actor, std::vector<std::vector<Element>> rho) {
  auto check = check_operation(base, actor, rho);
  if (!check.valid) throw ActionInvalid(check.failure);
  return ActionMap{std::move(base), std::move(actor), std::move(rho), check.cls};
}

bool is_operation(const ActionMap& action) {
  return check_operation(action.base, action.actor, action.rho).valid;
}

ActionMap trivial_action(const AlgebraTable& base, const AlgebraTable& actor) {
  Map id(base.size());
  for (Element x = 0; x < base.size(); ++x) id[x] = x;
  return make_action(base, actor, std::vector<Map>(actor.size(), id));
}

ActionMap self_action(const AlgebraTable& t) {
  std::vector<Map> rho(t.size(), Map(t.size()));
  for (Element u = 0; u < t.size(); ++u) {
    for (Element x = 0; x < t.size(); ++x) rho[u][x] = t.dot(u, x);
  }
  return make_action(t, t, std::move(rho));
}

std::vector<ActionMap> enumerate_operations(const AlgebraTable& base, const AlgebraTable& actor,
                                            OperationClass min_class, std::size_t limit) {
  require_l_algebra(base);
  require_l_algebra(actor);
  if (base.size() > limit || actor.size() > limit) {
    throw TooLarge("operation enumeration is limited to components of size " + std::to_string(limit));
  }
  std::vector<ActionMap> out;
  const bool want_kl = min_class >= OperationClass::kl;
  const bool want_ckl = min_class >= OperationClass::ckl;
  const bool want_hilbert = min_class >= OperationClass::hilbert;
  if (want_kl && (!is_kl(base) || !is_kl(actor))) return out;
  if (want_ckl && (!is_ckl(base) || !is_ckl(actor))) return out;
  if (want_hilbert && (!is_hilbert(base) || !is_hilbert(actor))) return out;

  std::vector<Map> ends;
  for (auto& m : endomorphisms(base)) {
    if (want_kl && !kl_compatible(base, m.map)) continue;
    if (want_ckl && !ckl_compatible(base, m.map)) continue;
    if (want_hilbert && !idempotent(m.map)) continue;
    ends.push_back(std::move(m.map));
  }
  const auto nx = base.size();
  const auto ny = actor.size();
  std::map<Map, std::size_t> index;
  for (std::size_t i = 0; i < ends.size(); ++i) index.emplace(ends[i], i);
  auto id_it = index.find([&] {
    Map id(nx);
    for (Element x = 0; x < nx; ++x) id[x] = static_cast<Element>(x);
    return id;
  }());
  if (id_it == index.end()) return out;

  // Composition table: comp[a][b] = ends[a] ∘ ends[b] as a raw map.
  const auto k = ends.size();
  std::vector<Map> comp(k * k, Map(nx));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      for (Element x = 0; x < nx; ++x) comp[a * k + b][x] = ends[a][ends[b][x]];
    }
  }

  std::vector<std::size_t> choice(ny, 0);
  choice[0] = id_it->second;
  auto consistent = [&](Element upto) {
    for (Element u = 0; u <= upto; ++u) {
      for (Element v = 0; v <= upto; ++v) {
        const auto uv = actor.dot(u, v);
        const auto vu = actor.dot(v, u);
        if (uv > upto || vu > upto) continue;
        if (comp[choice[uv] * k + choice[u]] != comp[choice[vu] * k + choice[v]]) return false;
        if (want_ckl && comp[choice[u] * k + choice[v]] != comp[choice[v] * k + choice[u]]) return false;
      }
    }
    return true;
  };
  auto search = [&](auto& self, Element u) -> void {
    if (u == ny) {
      std::vector<Map> rho(ny);
      for (Element w = 0; w < ny; ++w) rho[w] = ends[choice[w]];
      out.push_back(make_action(base, actor, std::move(rho)));
      return;
    }
    for (std::size_t e = 0; e < k; ++e) {
      choice[u] = e;
      if (consistent(u)) self(self, static_cast<Element>(u + 1));
    }
  };
  if (ny == 1) {
    out.push_back(make_action(base, actor, {ends[choice[0]]}));
    return out;
  }
  search(search, 1);
  return out;
}

Element ProductAlgebra::index(Element x, Element u) const {
  const auto p = pair_index[x * action.actor.size() + u];
  if (p < 0) throw IndexOutOfRange("pair is not in the product carrier");
  return static_cast<Element>(p);
}

ElementSet ProductAlgebra::embed(ElementSet i, ElementSet u) const {
  ElementSet out;
  for (auto x : i) {
    for (auto v : u) {
      if (contains(x, v)) out.insert(index(x, v));
    }
  }
  return out;
}

namespace {

ProductAlgebra build_product(const ActionMap& action, ProductKind kind) {
  ProductAlgebra p;
  p.kind = kind;
  p.action = action;
  const auto& X = action.base;
  const auto& Y = action.actor;
  const auto nx = X.size();
  const auto ny = Y.size();
  p.pair_index.assign(nx * ny, -1);
  for (Element x = 0; x < nx; ++x) {
    for (Element u = 0; u < ny; ++u) {
      if (kind == ProductKind::symmetric && action.rho[u][x] != x) continue;
      p.pair_index[x * ny + u] = static_cast<int>(p.carrier.size());
      p.carrier.emplace_back(x, u);
    }
  }
  const auto n = p.carrier.size();
  if (n > 65535) throw TooLarge("product too large");
  std::vector<Element> entries(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto [x, u] = p.carrier[a];
    for (std::size_t b = 0; b < n; ++b) {
      const auto [y, v] = p.carrier[b];
      const auto uv = Y.dot(u, v);
      const auto vu = Y.dot(v, u);
      const auto z = X.dot(action.rho[uv][x], action.rho[vu][y]);
      const auto idx = p.pair_index[z * ny + uv];
      if (idx < 0) {
        throw Falsified("symmetric carrier is not closed at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
      }
      entries[a * n + b] = static_cast<Element>(idx);
    }
  }
  p.algebra = AlgebraTable(n, std::move(entries));
  if (auto w = l_algebra_violation(p.algebra)) {
    throw Falsified("product violates the " + std::string(to_string(w->identity)) + " axiom");
  }
  return p;
}

}  // namespace

ProductAlgebra semidirect(const ActionMap& action) {
  auto check = check_operation(action.base, action.actor, action.rho);
  if (!check.valid) throw ActionInvalid(check.failure);
  auto p = build_product(action, ProductKind::semidirect);
  p.action.cls = check.cls;
  bool predicted = is_kl(action.base) && is_kl(action.actor);
  for (const auto& f : action.rho) predicted = predicted && kl_compatible(action.base, f);
  if (is_kl(p.algebra) != predicted) throw Falsified("KL verdict of the semidirect product differs from the prediction");
  return p;
}

ProductAlgebra symmetric_semidirect(const ActionMap& action) {
  auto check = check_operation(action.base, action.actor, action.rho);
  if (!check.valid) throw ActionInvalid(check.failure);
  if (check.cls < OperationClass::ckl) {
    throw ActionClassTooWeak("symmetric products need a CKL operation, got " + std::string(to_string(check.cls)));
  }
  auto p = build_product(action, ProductKind::symmetric);
  p.action.cls = check.cls;
  if (!is_ckl(p.algebra)) throw Falsified("symmetric product is not CKL");
  if (check.cls == OperationClass::hilbert && !is_hilbert(p.algebra)) {
    throw Falsified("symmetric product of a Hilbert operation is not Hilbert");
  }
  return p;
}

IdealSplit project_ideal(const ProductAlgebra& product, ElementSet k) {
  if (!is_ideal(product.algebra, k)) throw NotAnIdeal("subset is not an ideal of the product");
  IdealSplit s;
  for (Element x = 0; x < product.action.base.size(); ++x) {
    if (k.contains(product.index(x, 0))) s.kx.insert(x);
  }
  for (Element u = 0; u < product.action.actor.size(); ++u) {
    if (k.contains(product.index(0, u))) s.ky.insert(u);
  }
  if (!is_ideal(product.action.base, s.kx)) throw Falsified("K_X is not an ideal");
  if (!is_ideal(product.action.actor, s.ky)) throw Falsified("K_Y is not an ideal");
  if (product.embed(s.kx, s.ky) != k) throw Falsified("ideal does not split as K_X x K_Y");
  return s;
}

bool is_rho_stable(const ActionMap& action, ElementSet i) {
  for (const auto& f : action.rho) {
    for (auto x : i) {
      if (!i.contains(f[x])) return false;
    }
  }
  return true;
}

PairConditions check_pair_conditions(const ProductAlgebra& product, ElementSet i, ElementSet u) {
  const auto& a = product.action;
  const auto& X = a.base;
  if (!is_ideal(X, i)) throw NotAnIdeal("I is not an ideal of X");
  if (!is_ideal(a.actor, u)) throw NotAnIdeal("U is not an ideal of Y");
  PairConditions pc;
  for (Element v = 0; v < a.actor.size() && pc.i1; ++v) {
    for (auto x : i) {
      if (!i.contains(a.rho[v][x])) {
        pc.i1 = false;
        pc.i1_witness = {v, x};
        break;
      }
    }
  }
  for (auto w : u) {
    for (auto x : i) {
      for (Element y = 0; y < X.size(); ++y) {
        const auto t = X.dot(x, a.rho[w][y]);
        if (!i.contains(X.dot(t, y)) || !i.contains(X.dot(y, t))) {
          pc.i2 = false;
          pc.i2_witness = {w, x, y};
          goto done;
        }
      }
    }
  }
done:
  if (product.kind == ProductKind::semidirect) {
    pc.product_is_ideal = is_ideal(product.algebra, product.embed(i, u));
    if (pc.product_is_ideal != pc.holds()) {
      throw Falsified("(I'1)+(I'2) verdict differs from the ideal test of I x U");
    }
  }
  return pc;
}

PairConditions check_pair_conditions(const ActionMap& action, ElementSet i, ElementSet u) {
  return check_pair_conditions(semidirect(action), i, u);
}

ProductAnalysis::ProductAnalysis(const ActionMap& a)
    : action(a),
      product(semidirect(a)),
      ideals_x(all_ideals(a.base)),
      ideals_y(all_ideals(a.actor)),
      ideals_product(all_ideals(product.algebra)) {
  action.cls = product.action.cls;
}

std::vector<ElementSet> rho_ideals(const ProductAnalysis& an) {
  std::vector<ElementSet> out;
  std::vector<std::size_t> idx;
  const auto& lx = an.ideals_x;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const bool stable = is_rho_stable(an.action, lx[i]);
    const bool lifted = an.ideals_product.find(an.product.embed(lx[i], ElementSet{0})).has_value();
    if (stable != lifted) throw Falsified("rho-ideal differs from the I x {1} ideal test");
    if (stable) {
      out.push_back(lx[i]);
      idx.push_back(i);
    }
  }
  for (auto a : idx) {
    for (auto b : idx) {
      if (!is_rho_stable(an.action, lx[lx.meet(a, b)]) || !is_rho_stable(an.action, lx[lx.join(a, b)])) {
        throw Falsified("rho-ideals are not closed under meet and join");
      }
    }
  }
  return out;
}

std::vector<ElementSet> rho_ideals(const ActionMap& action) { return rho_ideals(ProductAnalysis(action)); }

namespace {

bool rho_prime_in(const std::vector<ElementSet>& rho_ids, ElementSet i) {
  for (std::size_t a = 0; a < rho_ids.size(); ++a) {
    for (std::size_t b = a; b < rho_ids.size(); ++b) {
      if ((rho_ids[a] & rho_ids[b]).subset_of(i) && !rho_ids[a].subset_of(i) && !rho_ids[b].subset_of(i)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_rho_prime(const ProductAnalysis& an, ElementSet i) {
  if (!is_ideal(an.action.base, i) || !is_rho_stable(an.action, i)) throw NotRhoIdeal("not a rho-ideal");
  if (i == ElementSet::full(an.action.base.size())) throw NotProper("X is not a proper ideal");
  return rho_prime_in(rho_ideals(an), i);
}

std::vector<ElementSet> rho_spectrum(const ProductAnalysis& an) {
  auto ids = rho_ideals(an);
  const auto full = ElementSet::full(an.action.base.size());
  std::vector<ElementSet> out;
  for (const auto& i : ids) {
    if (i != full && rho_prime_in(ids, i)) out.push_back(i);
  }
  return out;
}

ElementSet ker_rho_mod(const ActionMap& action, ElementSet i) {
  const auto& X = action.base;
  if (!is_ideal(X, i) || !is_rho_stable(action, i)) throw NotRhoIdeal("not a rho-ideal");
  auto q = try_quotient(X, i);
  if (!q.result) throw CongruenceUndefined(q.failure);
  ElementSet ker;
  for (Element u = 0; u < action.actor.size(); ++u) {
    bool fixes = true;
    for (Element x = 0; x < X.size() && fixes; ++x) fixes = congruent_mod(X, i, action.rho[u][x], x);
    if (fixes) ker.insert(u);
  }
  return ker;
}

ElementSet rho_kernel_ideal(const ProductAnalysis& an, ElementSet i) {
  const auto ker = ker_rho_mod(an.action, i);
  const auto& ly = an.ideals_y;
  std::size_t v = ly.bottom();
  for (std::size_t k = 0; k < ly.size(); ++k) {
    if (ly[k].subset_of(ker)) v = ly.join(v, k);
  }
  if (!ly[v].subset_of(ker)) throw Falsified("ideals inside ker rho^I have no largest member");
  if (!an.ideals_product.find(an.product.embed(i, ly[v]))) {
    throw Falsified("I x V is not an ideal for the largest ideal V inside ker rho^I");
  }
  return ly[v];
}

namespace {

// S ⊆ space is open for the basis {B ∩ space}.
bool is_open(const std::vector<ElementSet>& basis_sets, ElementSet space, ElementSet s) {
  for (auto p : s) {
    bool covered = false;
    for (const auto& b : basis_sets) {
      const auto piece = b & space;
      if (piece.contains(p) && piece.subset_of(s)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

// Positions of `sets` inside `universe` as a bitmask over universe positions.
ElementSet positions(const std::vector<ElementSet>& universe, const std::vector<ElementSet>& sets) {
  ElementSet out;
  for (const auto& s : sets) {
    auto it = std::find(universe.begin(), universe.end(), s);
    if (it != universe.end()) out.insert(static_cast<Element>(it - universe.begin()));
  }
  return out;
}

json sets_json(const std::vector<ElementSet>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

}  // namespace

SpecDecomposition spec_decomposition(const ProductAnalysis& an) {
  SpecDecomposition r;
  const auto& X = an.action.base;
  const auto fullx = ElementSet::full(X.size());
  auto spec_p = spectrum(an.ideals_product);
  auto spec_y = spectrum(an.ideals_y);
  auto rho_spec = rho_spectrum(an);
  r.spec_product = spec_p.primes.size();
  r.rho_spec_x = rho_spec.size();
  r.spec_y = spec_y.primes.size();

  // Positions in the disjoint union: ρSpec first, then Spec(Y).
  std::vector<int> image(spec_p.primes.size(), -1);
  for (std::size_t k = 0; k < spec_p.primes.size(); ++k) {
    const auto s = project_ideal(an.product, spec_p.primes[k]);
    if (s.kx == fullx) {
      auto it = std::find(spec_y.primes.begin(), spec_y.primes.end(), s.ky);
      if (it != spec_y.primes.end()) image[k] = static_cast<int>(rho_spec.size() + (it - spec_y.primes.begin()));
    } else {
      auto it = std::find(rho_spec.begin(), rho_spec.end(), s.kx);
      if (it != rho_spec.end() && rho_kernel_ideal(an, s.kx) == s.ky) image[k] = static_cast<int>(it - rho_spec.begin());
    }
    if (image[k] < 0 && r.shapes) {
      r.shapes = false;
      r.witness = {{"prime", to_json(spec_p.primes[k])}, {"kx", to_json(s.kx)}, {"ky", to_json(s.ky)}};
    }
  }
  // Converse: every candidate shape is prime.
  for (const auto& q : spec_y.primes) {
    if (std::find(spec_p.primes.begin(), spec_p.primes.end(), an.product.embed(fullx, q)) == spec_p.primes.end()) {
      r.shapes = false;
      r.witness = {{"missing", "X x Q"}, {"q", to_json(q)}};
    }
  }
  for (const auto& p : rho_spec) {
    const auto ker = ker_rho_mod(an.action, p);
    if (!is_ideal(an.action.actor, ker)) ++r.kernel_not_ideal;
    const auto k = an.product.embed(p, rho_kernel_ideal(an, p));
    if (std::find(spec_p.primes.begin(), spec_p.primes.end(), k) == spec_p.primes.end()) {
      r.shapes = false;
      r.witness = {{"missing", "P x ker"}, {"p", to_json(p)}};
    }
  }
  // Bijection onto the disjoint union.
  std::vector<int> sorted = image;
  std::sort(sorted.begin(), sorted.end());
  const auto total = rho_spec.size() + spec_y.primes.size();
  r.bijection = r.spec_product == total && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
                (sorted.empty() || sorted.front() >= 0);
  if (!r.bijection && r.witness.is_null()) {
    r.witness = {{"spec_product", r.spec_product}, {"rho_spec", r.rho_spec_x}, {"spec_y", r.spec_y}};
  }
  // Open map on the basic opens U_K.
  if (r.shapes && r.bijection) {
    const auto xs_space = ElementSet::full(rho_spec.size());
    const auto ys_space = ElementSet::full(spec_y.primes.size());
    // Basis of ρSpec: U_I ∩ ρSpec for I ∈ 𝒮(X); of Spec(Y): U_V.
    std::vector<ElementSet> basis_x;
    for (const auto& i : an.ideals_x.ideals()) {
      std::vector<ElementSet> open;
      for (const auto& p : rho_spec) {
        if (!i.subset_of(p)) open.push_back(p);
      }
      basis_x.push_back(positions(rho_spec, open));
    }
    std::vector<ElementSet> basis_y;
    for (const auto& members : spec_y.basis) {
      ElementSet b;
      for (auto m : members) b.insert(static_cast<Element>(m));
      basis_y.push_back(b);
    }
    for (std::size_t k = 0; k < spec_p.basis.size(); ++k) {
      ElementSet sx, sy;
      for (auto m : spec_p.basis[k]) {
        const auto t = static_cast<std::size_t>(image[m]);
        if (t < rho_spec.size()) {
          sx.insert(static_cast<Element>(t));
        } else {
          sy.insert(static_cast<Element>(t - rho_spec.size()));
        }
      }
      if (!is_open(basis_x, xs_space, sx) || !is_open(basis_y, ys_space, sy)) {
        r.open_map = false;
        r.witness = {{"open_set_of", to_json(an.ideals_product[k])}};
        break;
      }
    }
  }
  // KL-class operations: every ideal is a ρ-ideal and ρSpec = Spec.
  if (an.action.cls >= OperationClass::kl) {
    auto spec_x = spectrum(an.ideals_x);
    if (rho_ideals(an).size() != an.ideals_x.size() || rho_spec != spec_x.primes) {
      r.shapes = false;
      r.witness = {{"kl_case", "rho-spectrum differs from the spectrum"}, {"rho_spec", sets_json(rho_spec)}};
    }
  }
  return r;
}

IdealCounts ideal_count_formulas(const ProductAnalysis& an) {
  IdealCounts c;
  c.product = an.ideals_product.size();
  c.x = an.ideals_x.size();
  c.y = an.ideals_y.size();
  c.direct = an.action.is_trivial();
  c.bound = c.product <= c.x * c.y;
  c.equality_iff_direct = (c.product == c.x * c.y) == c.direct;
  for (const auto& i : rho_ideals(an)) {
    const auto ker = ker_rho_mod(an.action, i);
    for (const auto& u : an.ideals_y.ideals()) {
      if (u.subset_of(ker)) ++c.sum_formula;
    }
  }
  c.sum_matches = c.sum_formula == c.product;
  return c;
}

SymmetricBijection symmetric_ideal_bijection(const ActionMap& action) {
  auto sym = symmetric_semidirect(action);
  auto semi = semidirect(action);
  auto ls = all_ideals(sym.algebra);
  auto lp = all_ideals(semi.algebra);
  SymmetricBijection r;
  r.symmetric_ideals = ls.size();
  r.semidirect_ideals = lp.size();
  auto restrict = [&](ElementSet k) {
    ElementSet out;
    for (std::size_t s = 0; s < sym.carrier.size(); ++s) {
      const auto [x, u] = sym.carrier[s];
      if (k.contains(semi.index(x, u))) out.insert(static_cast<Element>(s));
    }
    return out;
  };
  auto lift = [&](ElementSet l) {
    ElementSet lx, ly;
    for (Element x = 0; x < action.base.size(); ++x) {
      if (l.contains(sym.index(x, 0))) lx.insert(x);
    }
    for (Element u = 0; u < action.actor.size(); ++u) {
      if (l.contains(sym.index(0, u))) ly.insert(u);
    }
    return semi.embed(lx, ly);
  };
  for (const auto& l : ls.ideals()) {
    const auto k = lift(l);
    if (!lp.find(k) || restrict(k) != l) {
      r.holds = false;
      r.witness = {{"symmetric_ideal", to_json(l)}, {"lift", to_json(k)}};
      return r;
    }
  }
  for (const auto& k : lp.ideals()) {
    const auto l = restrict(k);
    if (!ls.find(l) || lift(l) != k) {
      r.holds = false;
      r.witness = {{"semidirect_ideal", to_json(k)}, {"restriction", to_json(l)}};
      return r;
    }
  }
  r.holds = r.symmetric_ideals == r.semidirect_ideals;
  return r;
}

std::optional<std::vector<std::vector<Element>>> induced_on_quotient(const ActionMap& action,
                                                                     const QuotientResult& q) {
  const auto k = q.quotient.size();
  std::vector<std::vector<Element>> out(action.actor.size(), std::vector<Element>(k));
  for (Element u = 0; u < action.actor.size(); ++u) {
    for (std::size_t c = 0; c < k; ++c) {
      bool first = true;
      for (auto x : q.classes[c]) {
        const auto image = q.projection(action.rho[u][x]);
        if (first) {
          out[u][c] = image;
          first = false;
        } else if (out[u][c] != image) {
          return std::nullopt;
        }
      }
    }
  }
  return out;
}

QuotientEquivalence quotient_equivalence(const ProductAnalysis& an, ElementSet i, ElementSet u) {
  QuotientEquivalence e;
  const auto& a = an.action;
  const auto k = an.product.embed(i, u);
  e.ideal = an.ideals_product.find(k).has_value();
  e.pair_conditions = check_pair_conditions(an.product, i, u).holds();

  auto qx = quotient(a.base, i);
  auto rho_i = induced_on_quotient(a, qx);
  if (rho_i) {
    auto op = check_operation(qx.quotient, a.actor, *rho_i);
    if (!op.valid) throw Falsified("induced map on X/I is not an operation: " + op.failure);
    ActionMap induced{qx.quotient, a.actor, *rho_i, op.cls};

    e.trivial_on_u = true;
    for (auto w : u) {
      for (Element c = 0; c < qx.quotient.size(); ++c) {
        if ((*rho_i)[w][c] != c) e.trivial_on_u = false;
      }
    }
    auto pq = semidirect(induced);
    e.unit_times_u = is_ideal(pq.algebra, pq.embed(ElementSet{0}, u));

    // ρ̃ on Y/U and the quotient isomorphism.
    auto qy = quotient(a.actor, u);
    std::vector<std::vector<Element>> tilde(qy.quotient.size());
    bool defined = true;
    for (std::size_t c = 0; c < qy.classes.size() && defined; ++c) {
      for (auto w : qy.classes[c]) {
        if (tilde[c].empty()) {
          tilde[c] = (*rho_i)[w];
        } else if (tilde[c] != (*rho_i)[w]) {
          defined = false;
          break;
        }
      }
    }
    if (defined && check_operation(qx.quotient, qy.quotient, tilde).valid) {
      auto small = semidirect(make_action(qx.quotient, qy.quotient, tilde));
      auto big = try_quotient(an.product.algebra, k);
      if (big.result && big.result->quotient.size() == small.algebra.size()) {
        const auto& bq = *big.result;
        std::vector<Element> map(bq.quotient.size());
        std::vector<bool> seen(bq.quotient.size(), false);
        bool consistent = true;
        for (std::size_t p = 0; p < an.product.carrier.size() && consistent; ++p) {
          const auto [x, w] = an.product.carrier[p];
          const auto target = small.index(qx.projection(x), qy.projection(w));
          const auto c = bq.projection(static_cast<Element>(p));
          if (seen[c] && map[c] != target) consistent = false;
          map[c] = target;
          seen[c] = true;
        }
        std::vector<Element> sorted = map;
        std::sort(sorted.begin(), sorted.end());
        consistent = consistent && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        e.quotient_product = consistent && is_morphism(bq.quotient, small.algebra, map);
      }
    }
  }
  if (!e.agree()) {
    json w = {{"I", to_json(i)},
              {"U", to_json(u)},
              {"ideal", e.ideal},
              {"quotient_product", e.quotient_product},
              {"trivial_on_U", e.trivial_on_u},
              {"unit_times_U", e.unit_times_u},
              {"pair_conditions", e.pair_conditions}};
    throw Falsified("quotient equivalence fails: " + w.dump());
  }
  return e;
}

namespace {

json violation(const std::string& law, json detail) { return {{"law", law}, {"detail", std::move(detail)}}; }

}  // namespace

json product_law_violations(const ProductAnalysis& an) {
  const auto& a = an.action;
  const auto& X = a.base;
  const auto& Y = a.actor;
  const auto& P = an.product;
  const auto& T = P.algebra;
  const auto nx = static_cast<Element>(X.size());
  const auto ny = static_cast<Element>(Y.size());

  // Downsets and the factorisation (1,u)·(x,u) = (x,1).
  for (Element x = 0; x < nx; ++x) {
    for (Element u = 0; u < ny; ++u) {
      const auto p = P.index(x, u);
      ElementSet expected;
      for (Element y = 0; y < nx; ++y) {
        for (Element v = 0; v < ny; ++v) {
          if (leq(Y, v, u) && leq(X, y, a.rho[Y.dot(u, v)][x])) expected.insert(P.index(y, v));
        }
      }
      if (downset(T, p) != expected) return violation("downset", {{"x", x}, {"u", u}});
      if (T.dot(P.index(0, u), p) != P.index(x, 0)) return violation("(1,u)(x,u)=(x,1)", {{"x", x}, {"u", u}});
    }
  }
  for (Element u = 0; u < ny; ++u) {
    const auto one_u = P.index(0, u);
    for (auto q : downset(T, one_u)) {
      const auto [y, v] = P.carrier[q];
      if (!leq(Y, v, u) || T.dot(one_u, q) != P.index(y, Y.dot(u, v))) return violation("sigma_(1,u)", {{"u", u}});
    }
    if (downset(T, one_u).size() != nx * downset(Y, u).size()) return violation("downset (1,u)", {{"u", u}});
  }
  for (Element x = 0; x < nx; ++x) {
    const auto x_one = P.index(x, 0);
    ElementSet expected;
    for (Element v = 0; v < ny; ++v) {
      for (auto y : downset(X, a.rho[v][x])) expected.insert(P.index(y, v));
    }
    if (downset(T, x_one) != expected) return violation("downset (x,1)", {{"x", x}});
    for (auto q : expected) {
      const auto [y, v] = P.carrier[q];
      if (T.dot(x_one, q) != P.index(X.dot(a.rho[v][x], y), v)) return violation("sigma_(x,1)", {{"x", x}});
    }
  }

  // Generated ideals split as K_X x <u> with <x> ⊆ K_X.
  for (Element x = 0; x < nx; ++x) {
    for (Element u = 0; u < ny; ++u) {
      const auto k = generated_ideal(T, ElementSet{P.index(x, u)});
      const auto s = project_ideal(P, k);
      if (s.ky != generated_ideal(Y, ElementSet{u}) || !generated_ideal(X, ElementSet{x}).subset_of(s.kx)) {
        return violation("generated ideal", {{"x", x}, {"u", u}});
      }
    }
  }

  // Component bounds of ideal products and the (X x {1})·(I x U) formula.
  const auto& lp = an.ideals_product;
  std::vector<IdealSplit> splits;
  for (const auto& k : lp.ideals()) splits.push_back(project_ideal(P, k));
  const auto x_one = lp.index_of(P.embed(ElementSet::full(nx), ElementSet{0}));
  for (std::size_t s = 0; s < lp.size(); ++s) {
    for (std::size_t t = 0; t < lp.size(); ++t) {
      const auto& l = splits[lp.product(s, t)];
      const auto ij = an.ideals_x[an.ideals_x.product(an.ideals_x.index_of(splits[s].kx),
                                                       an.ideals_x.index_of(splits[t].kx))];
      const auto uv = an.ideals_y[an.ideals_y.product(an.ideals_y.index_of(splits[s].ky),
                                                       an.ideals_y.index_of(splits[t].ky))];
      if (!l.kx.subset_of(ij) || !l.ky.subset_of(uv)) {
        return violation("product bounds", {{"A", to_json(lp[s])}, {"B", to_json(lp[t])}});
      }
    }
    const auto v = rho_kernel_ideal(an, splits[s].kx);
    if (lp[lp.product(x_one, s)] != P.embed(splits[s].kx, v)) {
      return violation("(X x {1}).(I x U)", {{"K", to_json(lp[s])}});
    }
    if (!splits[s].ky.subset_of(v)) return violation("U within ker", {{"K", to_json(lp[s])}});
  }

  // ker is monotone on ρ-ideals; ideals below ker pair up.
  const auto rho_ids = rho_ideals(an);
  std::vector<ElementSet> kers;
  for (const auto& i : rho_ids) kers.push_back(ker_rho_mod(a, i));
  for (std::size_t s = 0; s < rho_ids.size(); ++s) {
    for (std::size_t t = 0; t < rho_ids.size(); ++t) {
      if (rho_ids[s].subset_of(rho_ids[t]) && !kers[s].subset_of(kers[t])) {
        return violation("ker monotone", {{"J", to_json(rho_ids[s])}, {"I", to_json(rho_ids[t])}});
      }
    }
    for (const auto& u : an.ideals_y.ideals()) {
      if (u.subset_of(kers[s]) && !lp.find(P.embed(rho_ids[s], u))) {
        return violation("U within ker gives an ideal", {{"I", to_json(rho_ids[s])}, {"U", to_json(u)}});
      }
    }
  }

  // ρ-ideals form a distributive sublattice.
  for (const auto& p : rho_ids) {
    for (const auto& q : rho_ids) {
      for (const auto& r : rho_ids) {
        const auto& lx = an.ideals_x;
        const auto pi = lx.index_of(p), qi = lx.index_of(q), ri = lx.index_of(r);
        if (lx.meet(pi, lx.join(qi, ri)) != lx.join(lx.meet(pi, qi), lx.meet(pi, ri))) {
          return violation("rho-ideal distributivity", {{"I", to_json(p)}});
        }
      }
    }
  }

  // Prime and ρ-stable implies ρ-prime.
  const auto rho_spec = rho_spectrum(an);
  for (const auto& p : spectrum(an.ideals_x).primes) {
    if (is_rho_stable(a, p) && std::find(rho_spec.begin(), rho_spec.end(), p) == rho_spec.end()) {
      return violation("prime and stable is rho-prime", {{"P", to_json(p)}});
    }
  }

  // {1} x U is an ideal iff ρ_u = id on U.
  for (const auto& u : an.ideals_y.ideals()) {
    bool identity = true;
    for (auto w : u) identity = identity && is_identity(a.rho[w]);
    if (lp.find(P.embed(ElementSet{0}, u)).has_value() != identity) {
      return violation("{1} x U", {{"U", to_json(u)}});
    }
  }
  return json::object();
}

json to_json(const ActionMap& action) {
  return {{"base", table_to_json(action.base)},
          {"actor", table_to_json(action.actor)},
          {"rho", action.rho},
          {"class", std::string(to_string(action.cls))}};
}

ActionMap action_from_json(const json& j) {
  try {
    auto base = table_from_json(j.at("base"));
    auto actor = table_from_json(j.at("actor"));
    auto rho = j.at("rho").get<std::vector<std::vector<int>>>();
    std::vector<Map> maps;
    for (const auto& row : rho) {
      Map m;
      for (int v : row) {
        if (v < 0 || static_cast<std::size_t>(v) >= base.size()) throw MalformedTable("rho value out of range");
        m.push_back(static_cast<Element>(v));
      }
      maps.push_back(std::move(m));
    }
    return make_action(std::move(base), std::move(actor), std::move(maps));
  } catch (const json::exception& e) {
    throw MalformedTable(std::string("bad action JSON: ") + e.what());
  }
}

ActionMap parse_action(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<long long> nums;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw MalformedTable("not an integer: '" + tok + "'");
      }
      if (used != tok.size()) throw MalformedTable("not an integer: '" + tok + "'");
      nums.push_back(v);
    }
  }
  std::size_t pos = 0;
  auto next = [&]() {
    if (pos >= nums.size()) throw MalformedTable("action file ends early");
    return nums[pos++];
  };
  auto read_table = [&]() {
    const auto n = next();
    if (n < 1 || n > 4096) throw MalformedTable("bad table size");
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
    for (auto& row : rows) {
      for (long long j = 0; j < n; ++j) {
        const auto v = next();
        if (v < 0 || v >= n) throw MalformedTable("entry out of range");
        row.push_back(static_cast<int>(v));
      }
    }
    return AlgebraTable::from_rows(rows);
  };
  auto base = read_table();
  auto actor = read_table();
  std::vector<Map> rho(actor.size(), Map(base.size()));
  for (auto& row : rho) {
    for (auto& v : row) {
      const auto value = next();
      if (value < 0 || static_cast<std::size_t>(value) >= base.size()) throw MalformedTable("rho value out of range");
      v = static_cast<Element>(value);
    }
  }
  if (pos != nums.size()) throw MalformedTable("trailing data in action file");
  return make_action(std::move(base), std::move(actor), std::move(rho));
}

ActionMap read_action_file(const std::string& path) {
  const auto text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw MalformedTable(std::string("bad JSON: ") + e.what());
    }
    return action_from_json(j);
  }
  return parse_action(text);
}

}  // namespace lalg
