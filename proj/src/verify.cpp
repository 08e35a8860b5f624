#include "lalg/verify.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <thread>

#include "lalg/canonical.hpp"
#include "lalg/families.hpp"
#include "lalg/ideals.hpp"
#include "lalg/io.hpp"
#include "lalg/products.hpp"
#include "lalg/words.hpp"

namespace lalg {

using nlohmann::json;

void CheckResult::fail(json w) {
  if (holds) witness = std::move(w);
  holds = false;
}

json CheckResult::to_json() const {
  return {{"name", name}, {"holds", holds}, {"checked", checked}, {"details", details}, {"witness", witness}};
}

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
public:
  explicit Timer(CheckResult& r) : r_(r), start_(Clock::now()) {}
  ~Timer() { r_.seconds = std::chrono::duration<double>(Clock::now() - start_).count(); }

private:
  CheckResult& r_;
  Clock::time_point start_;
};

// Runs fn(i) for i in [0, count) on up to `workers` threads; results keep
// index order so the merge does not depend on the schedule.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned workers, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  const unsigned w = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (w <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < w; ++t) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
    });
  }
  for (auto& th : threads) th.join();
  return out;
}

json sets_json(const std::vector<ElementSet>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

ElementSet chain_upset(const std::vector<Element>& chain, std::size_t i) {
  ElementSet s;
  for (std::size_t k = 0; k <= i; ++k) s.insert(chain[k]);
  return s;
}

}  // namespace

std::vector<AlgebraTable> algebras_up_to(std::size_t max_n, ClassFilter filter, const SearchBudget& budget) {
  std::vector<AlgebraTable> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    EnumerationTask task;
    task.size = n;
    task.class_filter = filter;
    for (auto& t : enumerate_or_throw(task, budget)) out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::vector<Element>> endomorphisms_naive(const AlgebraTable& t) {
  const auto n = t.size();
  if (n > 7) throw TooLarge("the naive endomorphism filter is limited to 7 elements");
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= n;
  std::vector<std::vector<Element>> out;
  std::vector<Element> map(n);
  for (std::size_t code = 0; code < total; ++code) {
    auto c = code;
    for (std::size_t k = n; k-- > 0;) {
      map[k] = static_cast<Element>(c % n);
      c /= n;
    }
    if (map[0] == 0 && is_morphism(t, t, map)) out.push_back(map);
  }
  return out;
}

CheckResult verify_worked_examples() {
  CheckResult r;
  r.name = "worked_examples";
  Timer timer(r);
  auto expect = [&](bool ok, const std::string& what) {
    ++r.checked;
    if (!ok) r.fail({{"example", what}});
  };

  // Semidirect product of {1, x, y} by {1, u} with ρ_u = 1.
  const auto action = two_by_three_action();
  const auto p = semidirect(action);
  const auto lattice = all_ideals(p.algebra);
  const ElementSet k1{0}, k2{p.index(0, 0), p.index(1, 0), p.index(2, 0)};
  const auto k3 = ElementSet::full(p.algebra.size());
  expect(lattice.ideals() == std::vector<ElementSet>{k1, k2, k3}, "three ideals K1, K2, K3");
  expect(ideal_product(lattice, k2, k1) == k1, "K2·K1 = K1");
  const ElementSet i1j2{p.index(0, 0), p.index(0, 1)};
  const auto c = check_ideal(p.algebra, i1j2);
  expect(!c.is_ideal && c.violated == IdealCondition::i1 &&
             c.witness == std::vector<Element>{p.index(0, 1), p.index(1, 0)},
         "I1 x J2 fails (I1) at ((1,u),(x,1))");
  expect(p.algebra.dot(p.index(0, 1), p.index(1, 0)) == p.index(0, 0), "(1,u)·(x,1) = (1,1)");
  expect(generated_ideal(p.algebra, ElementSet{p.index(0, 1)}) == k3, "<(1,u)> = K3");
  const auto split = project_ideal(p, k2);
  expect(split.kx == ElementSet::full(3) && split.ky == ElementSet{0}, "K2 splits as X x {1}");
  expect(!check_pair_conditions(p, ElementSet{0}, ElementSet::full(2)).holds(), "(I'1)/(I'2) reject {1} x Y");
  const auto ends = endomorphisms(action.base);
  expect(ends.size() == 2 && ends[0].map == std::vector<Element>{0, 0, 0} &&
             ends[1].map == std::vector<Element>{0, 1, 2},
         "End(X) = {id, constant 1}");
  r.details["semidirect_ideals"] = sets_json(lattice.ideals());

  // Four-element CKL example.
  const auto four = four_element_ckl();
  const auto four_ideals = all_ideals(four);
  auto has = [](const IdealLattice& l, ElementSet s) { return l.find(s).has_value(); };
  expect(is_ckl(four), "four-element example is CKL");
  expect(has(four_ideals, ElementSet{0, 1, 3}) && has(four_ideals, ElementSet{0, 2}), "ideals {1,x,z} and {1,y}");
  const auto four_tails = tail_analysis(four);
  expect(four_tails.tails.size() == 2 && four_tails.tails[0].up == ElementSet{0, 2} &&
             four_tails.tails[1].up == ElementSet{0, 1, 3},
         "tails up(y) and up(z)");
  r.details["four_element_ideals"] = sets_json(four_ideals.ideals());

  // Seven-element CKL example.
  const auto seven = seven_element_ckl();
  expect(is_ckl(seven), "seven-element example is CKL");
  expect(upset(seven, 5) == ElementSet{0, 1, 3, 5}, "up(x5) = {1, x1, x3, x5}");
  expect(is_ideal(seven, upset(seven, 5)), "up(x5) is an ideal");
  expect(!is_ideal(seven, upset(seven, 6)), "up(x6) is not an ideal");
  auto edges = order_structure(seven).hasse_edges;
  std::sort(edges.begin(), edges.end());
  const std::vector<std::pair<Element, Element>> drawn{{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 5}, {3, 6}, {4, 6}};
  expect(edges == drawn, "Hasse diagram of the seven-element example");

  // S(X) for X = {1, x, y}.
  const auto sx = reproduce_sx_counterexample();
  expect(sx.holds(), "x·(y·xx) = 1 and y·(x·xx) = x in S(X)");
  r.details["sx"] = sx.to_json();
  return r;
}

CheckResult verify_families(const VerifyConfig& config) {
  CheckResult r;
  r.name = "families";
  Timer timer(r);
  for (std::size_t n = 2; n <= config.family_n; ++n) {
    ++r.checked;
    const auto a = make_A(n);
    const auto rep = validate(a);
    const bool hilbert_ok = n <= 2 ? rep.is_hilbert : !rep.is_hilbert;
    const auto inv = order_structure(a).invariant_elements;
    if (!(rep.is_l && rep.is_kl && rep.is_ckl && rep.is_linear && rep.is_simple && hilbert_ok) ||
        inv != std::vector<Element>{0, 1}) {
      r.fail({{"family", "A"}, {"n", n}});
    }
    const auto lh = make_LH(n);
    const auto lrep = validate(lh);
    const auto lattice = all_ideals(lh);
    const auto spec = spectrum(lattice);
    if (!(lrep.is_l && lrep.is_linear && lrep.is_hilbert) || lattice.size() != n || spec.primes.size() != n - 1 ||
        order_structure(lh).invariant_elements.size() != n) {
      r.fail({{"family", "LH"}, {"n", n}, {"ideals", lattice.size()}, {"primes", spec.primes.size()}});
    }
  }
  for (std::size_t n = 1; n <= config.rho_k_n; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      ++r.checked;
      const auto action = rho_k_action(n, k);
      if (action.cls != OperationClass::hilbert) r.fail({{"rho_k", "not a Hilbert operation"}, {"n", n}, {"k", k}});
      const auto sym = symmetric_semidirect(action);
      const auto count = all_ideals(sym.algebra).size();
      if (count != 2 * n - k) r.fail({{"rho_k", "ideal count"}, {"n", n}, {"k", k}, {"ideals", count}});
    }
  }
  r.details["A_and_LH_sizes"] = {2, config.family_n};
  r.details["rho_k_sizes"] = {1, config.rho_k_n};
  return r;
}

namespace {

struct ProductTally {
  std::uint64_t pairs = 0;
  std::uint64_t splits = 0;
  std::uint64_t symmetric = 0;
  std::uint64_t quotient_pairs = 0;
  std::uint64_t congruence_undefined = 0;
  std::uint64_t kernel_not_ideal = 0;
  std::uint64_t prime_kernel_not_ideal = 0;
  json failure;
};

ProductTally analyse_action(const ActionMap& a, bool quotients) {
  ProductTally t;
  try {
    const ProductAnalysis an(a);
    for (const auto& k : an.ideals_product.ideals()) {
      const auto s = project_ideal(an.product, k);
      if (an.product.embed(s.kx, s.ky) != k) throw Falsified("K differs from K_X x K_Y");
      ++t.splits;
    }
    for (const auto& i : an.ideals_x.ideals()) {
      for (const auto& u : an.ideals_y.ideals()) {
        check_pair_conditions(an.product, i, u);
        ++t.pairs;
      }
    }
    const auto counts = ideal_count_formulas(an);
    if (!counts.holds()) {
      throw Falsified("ideal counts: product " + std::to_string(counts.product) + ", sum formula " +
                      std::to_string(counts.sum_formula));
    }
    const auto sd = spec_decomposition(an);
    if (!sd.holds()) throw Falsified("spectrum decomposition: " + sd.witness.dump());
    t.prime_kernel_not_ideal += sd.kernel_not_ideal;
    const auto law = product_law_violations(an);
    if (!law.empty()) throw Falsified("product law: " + law.dump());
    for (const auto& i : rho_ideals(an)) {
      if (!is_ideal(a.actor, ker_rho_mod(a, i))) ++t.kernel_not_ideal;
    }
    if (a.cls >= OperationClass::ckl) {
      const auto b = symmetric_ideal_bijection(a);
      if (!b.holds) throw Falsified("symmetric bijection: " + b.witness.dump());
      ++t.symmetric;
    }
    if (quotients) {
      for (const auto& i : an.ideals_x.ideals()) {
        for (const auto& u : an.ideals_y.ideals()) {
          try {
            quotient_equivalence(an, i, u);
            ++t.quotient_pairs;
          } catch (const CongruenceUndefined&) {
            ++t.congruence_undefined;
          }
        }
      }
    }
  } catch (const Falsified& e) {
    t.failure = {{"error", e.what()}, {"action", to_json(a)}};
  } catch (const CongruenceUndefined& e) {
    ++t.congruence_undefined;
  }
  return t;
}

}  // namespace

CheckResult verify_product_theorems(const VerifyConfig& config) {
  CheckResult r;
  r.name = "product_theorems";
  Timer timer(r);
  const auto n = config.cap(config.product_n);
  const auto algebras = algebras_up_to(n, ClassFilter::l, config.budget);
  std::vector<ActionMap> actions;
  for (const auto& x : algebras) {
    for (const auto& y : algebras) {
      for (auto& a : enumerate_operations(x, y)) actions.push_back(std::move(a));
    }
  }
  const std::function<ProductTally(std::size_t)> fn = [&](std::size_t k) {
    const auto& a = actions[k];
    return analyse_action(a, a.base.size() <= 3 && a.actor.size() <= 3);
  };
  const auto tallies = parallel_map(actions.size(), config.budget.workers, fn);
  ProductTally sum;
  std::array<std::uint64_t, 4> by_class{};
  for (std::size_t k = 0; k < tallies.size(); ++k) {
    const auto& t = tallies[k];
    ++r.checked;
    ++by_class[static_cast<int>(actions[k].cls)];
    sum.pairs += t.pairs;
    sum.splits += t.splits;
    sum.symmetric += t.symmetric;
    sum.quotient_pairs += t.quotient_pairs;
    sum.congruence_undefined += t.congruence_undefined;
    sum.kernel_not_ideal += t.kernel_not_ideal;
    sum.prime_kernel_not_ideal += t.prime_kernel_not_ideal;
    if (!t.failure.is_null()) r.fail(t.failure);
  }
  r.details = {{"max_component_size", n},
               {"algebras", algebras.size()},
               {"actions", actions.size()},
               {"actions_by_class", {{"L", by_class[0]}, {"KL", by_class[1]}, {"CKL", by_class[2]}, {"Hilbert", by_class[3]}}},
               {"pair_condition_checks", sum.pairs},
               {"ideal_splits", sum.splits},
               {"symmetric_bijections", sum.symmetric},
               {"quotient_equivalences", sum.quotient_pairs},
               {"congruence_undefined", sum.congruence_undefined},
               {"rho_ideals_with_non_ideal_kernel", sum.kernel_not_ideal},
               {"rho_primes_with_non_ideal_kernel", sum.prime_kernel_not_ideal}};
  return r;
}

CheckResult verify_ideal_lattices(const VerifyConfig& config) {
  CheckResult r;
  r.name = "ideal_lattices";
  Timer timer(r);
  const auto n = config.cap(config.lattice_n);
  const auto algebras = algebras_up_to(n, ClassFilter::l, config.budget);
  struct Tally {
    std::uint64_t joins = 0;
    std::uint64_t congruence_undefined = 0;
    std::uint64_t primes = 0;
    json failure;
  };
  const std::function<Tally(std::size_t)> fn = [&](std::size_t k) {
    Tally t;
    const auto& x = algebras[k];
    try {
      const auto lattice = all_ideals(x);
      // Independent re-check of the product through generated ideals.
      for (const auto& i : lattice.ideals()) {
        for (const auto& j : lattice.ideals()) {
          const auto prod = ideal_product(lattice, i, j);
          for (Element e = 0; e < x.size(); ++e) {
            const bool direct = (generated_ideal(x, ElementSet{e}) & i).subset_of(j);
            if (direct != prod.contains(e)) throw Falsified("product membership disagrees with <x> ∩ I ⊆ J");
          }
          try {
            if (!verify_join_membership(lattice, i, j)) throw Falsified("join membership");
            ++t.joins;
          } catch (const CongruenceUndefined&) {
            ++t.congruence_undefined;
          }
        }
      }
      for (std::size_t p = 0; p + 1 < lattice.size(); ++p) {
        if (is_prime_ideal(lattice, lattice[p]) != is_prime_by_meets(lattice, lattice[p])) {
          throw Falsified("primality by definition and by meets disagree");
        }
        ++t.primes;
      }
    } catch (const Falsified& e) {
      t.failure = {{"error", e.what()}, {"table", table_to_json(x)}};
    }
    return t;
  };
  const auto tallies = parallel_map(algebras.size(), config.budget.workers, fn);
  std::uint64_t joins = 0, undefined = 0, primes = 0;
  for (const auto& t : tallies) {
    ++r.checked;
    joins += t.joins;
    undefined += t.congruence_undefined;
    primes += t.primes;
    if (!t.failure.is_null()) r.fail(t.failure);
  }
  r.details = {{"max_size", n},
               {"algebras", algebras.size()},
               {"join_pairs_verified", joins},
               {"join_pairs_congruence_undefined", undefined},
               {"prime_checks", primes}};
  return r;
}

CheckResult verify_simple_linear_classification(const VerifyConfig& config) {
  CheckResult r;
  r.name = "simple_linear_classification";
  Timer timer(r);
  const auto max_n = config.cap(config.linear_n);
  json per_size = json::array();
  for (std::size_t n = 2; n <= max_n; ++n) {
    EnumerationTask task;
    task.size = n;
    task.class_filter = ClassFilter::linear;
    const auto tables = enumerate_or_throw(task, config.budget);
    const auto a_n = make_A(n);
    std::size_t simple = 0;
    for (const auto& x : tables) {
      ++r.checked;
      const json where = {{"table", table_to_json(x)}};
      if (!is_kl(x)) r.fail({{"law", "linear is KL"}, {"at", where}});
      const auto chain = chain_order(x);
      // x ≥ y > z gives x·y > x·z.
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
          for (std::size_t c = b + 1; c < n; ++c) {
            const auto xy = x.dot(chain[a], chain[b]);
            const auto xz = x.dot(chain[a], chain[c]);
            if (xy == xz || !leq(x, xz, xy)) r.fail({{"law", "monotone"}, {"at", where}});
          }
        }
      }
      // Ideals are the up(x_i) with i = n-1 or x_{i+1} invariant.
      std::vector<ElementSet> expected;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == n - 1 || is_invariant_element(x, chain[i + 1])) expected.push_back(chain_upset(chain, i));
      }
      std::sort(expected.begin(), expected.end(), size_lex_less);
      const auto lattice = all_ideals(x);
      if (lattice.ideals() != expected) r.fail({{"law", "linear ideals"}, {"at", where}});
      auto spec = spectrum(lattice).primes;
      auto proper = lattice.ideals();
      proper.pop_back();
      if (spec != proper) r.fail({{"law", "Spec = ideals minus X"}, {"at", where}});
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          const auto ui = chain_upset(chain, i), uk = chain_upset(chain, k);
          if (!lattice.find(ui) || !lattice.find(uk)) continue;
          const auto want = i <= k ? ElementSet::full(n) : uk;
          if (ideal_product(lattice, ui, uk) != want) r.fail({{"law", "linear ideal product"}, {"at", where}});
        }
      }
      if (is_simple(x)) {
        ++simple;
        if (!isomorphic(x, a_n)) r.fail({{"law", "simple linear is A_n"}, {"at", where}});
      }
    }
    if (simple != 1) r.fail({{"law", "exactly one simple linear algebra"}, {"n", n}, {"found", simple}});
    per_size.push_back({{"n", n}, {"linear", tables.size()}, {"simple", simple}});
  }
  r.details = {{"sizes", per_size}};
  return r;
}

CheckResult verify_tail_plus_theorem(const VerifyConfig& config) {
  CheckResult r;
  r.name = "tail_plus_theorem";
  Timer timer(r);
  const auto max_n = config.cap(config.ckl_n);
  std::size_t simple = 0, literal = 0, alternative = 0, differ = 0;
  for (std::size_t n = 2; n <= max_n; ++n) {
    EnumerationTask task;
    task.size = n;
    task.class_filter = ClassFilter::ckl;
    task.require_simple = true;
    for (const auto& x : enumerate_or_throw(task, config.budget)) {
      ++r.checked;
      ++simple;
      const auto rep = tail_analysis(x);
      literal += rep.is_tail_plus;
      alternative += rep.is_tail_plus_alt;
      differ += rep.readings_differ();
      if ((rep.is_tail_plus || rep.is_tail_plus_alt) && (!is_linear(x) || !isomorphic(x, make_A(n)))) {
        r.fail({{"table", table_to_json(x)}, {"tail", rep.to_json()}});
      }
    }
  }
  // 𝐀ₙ itself is tail⁺, simple and linear.
  for (std::size_t n = 2; n <= max_n; ++n) {
    ++r.checked;
    if (!tail_analysis(make_A(n)).is_tail_plus) r.fail({{"A_n not tail+", n}});
  }
  // The four-element example has two tails but is not simple.
  const auto four = four_element_ckl();
  if (is_simple(four) || !tail_analysis(four).has_tail) r.fail({{"four_element", "expected non-simple with tails"}});
  r.details = {{"max_size", max_n},
               {"simple_ckl", simple},
               {"tail_plus", literal},
               {"tail_plus_complement_of_y0", alternative},
               {"readings_differ", differ}};
  return r;
}

CheckResult verify_ckl_structure(const VerifyConfig& config) {
  CheckResult r;
  r.name = "ckl_structure";
  Timer timer(r);
  const auto max_n = config.cap(config.ckl_n);
  std::size_t bounded = 0, tails = 0, joins = 0, undefined = 0;
  for (const auto& x : algebras_up_to(max_n, ClassFilter::ckl, config.budget)) {
    ++r.checked;
    const json where = {{"table", table_to_json(x)}};
    try {
      tails += tail_analysis(x).tails.size();
    } catch (const Falsified& e) {
      r.fail({{"law", "CKL tail is an ideal"}, {"at", where}});
    }
    for (const auto& c : hasse_components(x)) {
      auto with_unit = c;
      with_unit.insert(0);
      if (!is_ideal(x, with_unit)) r.fail({{"law", "component is an ideal"}, {"at", where}});
    }
    const auto g = glivenko_check(x);
    bounded += g.applicable;
    if (!g.holds()) r.fail({{"law", "Glivenko"}, {"at", where}, {"witness", g.witness}});
    const auto lattice = all_ideals(x);
    for (const auto& i : lattice.ideals()) {
      for (const auto& j : lattice.ideals()) {
        try {
          if (!verify_join_membership(lattice, i, j)) r.fail({{"law", "join membership"}, {"at", where}});
          ++joins;
        } catch (const CongruenceUndefined&) {
          ++undefined;
        }
      }
    }
  }
  r.details = {{"max_size", max_n},
               {"bounded", bounded},
               {"tails", tails},
               {"join_pairs_verified", joins},
               {"join_pairs_congruence_undefined", undefined}};
  return r;
}

CheckResult hilbert_structure_suite(const VerifyConfig& config) {
  CheckResult r;
  r.name = "hilbert_structure";
  Timer timer(r);
  const auto max_n = config.cap(config.hilbert_n);
  const auto a2 = make_A(2);
  std::size_t actions = 0;
  for (const auto& x : algebras_up_to(max_n, ClassFilter::hilbert, config.budget)) {
    ++r.checked;
    const auto n = x.size();
    const json where = {{"table", table_to_json(x)}};
    for (Element z = 0; z < n; ++z) {
      if (generated_ideal(x, ElementSet{z}) != upset(x, z)) r.fail({{"law", "<z> = up(z)"}, {"at", where}});
    }
    if (n >= 2 && is_simple(x) != (n <= 2)) r.fail({{"law", "simple iff |X| <= 2"}, {"at", where}});
    if (is_linear(x) && !isomorphic(x, make_LH(n))) r.fail({{"law", "linear Hilbert is LH_n"}, {"at", where}});
    const auto lattice = all_ideals(x);
    const auto mins = minimal_elements(x);
    for (const auto& i : lattice.ideals()) {
      ElementSet u;
      for (auto z : i) {
        bool minimal = true;
        for (auto y : i) minimal = minimal && (y == z || !leq(x, y, z));
        if (minimal) u |= upset(x, z);
      }
      if (u != i) r.fail({{"law", "I is the union of up(z) over min(I)"}, {"at", where}});
    }
    // P_i criterion.
    for (std::size_t m = 0; m < mins.size(); ++m) {
      ElementSet pm;
      for (std::size_t o = 0; o < mins.size(); ++o) {
        if (o != m) pm |= upset(x, mins[o]);
      }
      for (std::size_t p = 0; p + 1 < lattice.size(); ++p) {
        const auto& cand = lattice[p];
        if (pm.subset_of(cand) && is_chain(x, ElementSet::full(n).minus(cand)) && !is_prime_ideal(lattice, cand)) {
          r.fail({{"law", "P_i criterion"}, {"at", where}, {"P", to_json(cand)}});
        }
      }
    }
    // A_2 acting on X as Hilbert algebras.
    if (n < max_n) {
      for (const auto& a : enumerate_operations(x, a2, OperationClass::hilbert)) {
        ++actions;
        ElementSet i0;
        for (Element e = 0; e < n; ++e) {
          if (a.rho[1][e] == 0) i0.insert(e);
        }
        const auto sym = all_ideals(symmetric_semidirect(a).algebra).size();
        const auto want = lattice.size() + all_ideals(quotient(x, i0).quotient).size();
        if (sym != want) r.fail({{"law", "|I(X sym A2)| = |I(X)| + |I(X/I0)|"}, {"action", to_json(a)}});
      }
    }
  }
  // LH_n rebuilt from an ideal and its quotient.
  json classes = json::array();
  for (std::size_t n = 2; n <= std::max<std::size_t>(max_n, 2) + 3; ++n) {
    const auto lh = make_LH(n);
    const auto chain = chain_order(lh);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      ++r.checked;
      const auto ideal = chain_upset(chain, i);
      const auto q = quotient(lh, ideal);
      if (q.quotient.size() != n - i) r.fail({{"law", "|LH_n / up(x_i)| = n - i"}, {"n", n}, {"i", i}});
      if (n == 5) classes.push_back({{"i", i}, {"classes", q.quotient.size()}});
      const auto base = subalgebra(lh, ideal);
      const auto m = q.quotient.size();
      std::vector<std::vector<Element>> rho(m, std::vector<Element>(base.size(), 0));
      for (Element e = 0; e < base.size(); ++e) rho[0][e] = e;
      const auto action = make_action(base, q.quotient, rho);
      const auto sym = symmetric_semidirect(action);
      if (!isomorphic(sym.algebra, lh)) r.fail({{"law", "LH_n = I sym X/I"}, {"n", n}, {"i", i}});
    }
  }
  r.details = {{"max_size", max_n}, {"a2_actions", actions}, {"lh5_quotient_classes", classes}};
  return r;
}

CheckResult verify_enumeration_oracles(const VerifyConfig& config) {
  CheckResult r;
  r.name = "enumeration_oracles";
  Timer timer(r);
  json counts = json::array();
  for (std::size_t n = 1; n <= std::min<std::size_t>(config.oracle_n, 4); ++n) {
    const auto naive = enumerate_naive(n);
    for (auto filter : {ClassFilter::l, ClassFilter::kl, ClassFilter::ckl, ClassFilter::hilbert, ClassFilter::linear}) {
      ++r.checked;
      EnumerationTask task;
      task.size = n;
      task.class_filter = filter;
      const auto fast = enumerate_or_throw(task, config.budget);
      std::vector<AlgebraTable> want;
      for (const auto& t : naive) {
        const auto rep = validate(t);
        const bool keep = filter == ClassFilter::l         ? true
                          : filter == ClassFilter::kl      ? rep.is_kl
                          : filter == ClassFilter::ckl     ? rep.is_ckl
                          : filter == ClassFilter::hilbert ? rep.is_hilbert
                                                           : rep.is_linear;
        if (keep) want.push_back(t);
      }
      if (fast != want) {
        r.fail({{"n", n}, {"class", to_string(filter)}, {"fast", fast.size()}, {"naive", want.size()}});
      }
      if (filter == ClassFilter::l) counts.push_back({{"n", n}, {"l_algebras", fast.size()}});
    }
  }
  for (std::size_t n = 1; n <= config.endomorphism_n; ++n) {
    for (const auto& t : algebras_up_to(n, ClassFilter::l, config.budget)) {
      if (t.size() != n) continue;
      ++r.checked;
      std::vector<std::vector<Element>> fast;
      for (const auto& m : endomorphisms(t)) fast.push_back(m.map);
      if (fast != endomorphisms_naive(t)) r.fail({{"endomorphisms", table_to_json(t)}});
    }
  }
  r.details = {{"oracle_sizes", counts}, {"endomorphism_max_size", config.endomorphism_n}};
  return r;
}

CheckResult verify_word_engine(const VerifyConfig& config) {
  CheckResult r;
  r.name = "word_engine";
  Timer timer(r);
  std::vector<std::pair<std::string, AlgebraTable>> corpus{
      {"A2", make_A(2)},           {"A3", make_A(3)},
      {"A4", make_A(4)},           {"LH3", make_LH(3)},
      {"LH4", make_LH(4)},         {"three_element", three_element_example()},
      {"four_element_ckl", four_element_ckl()}, {"seven_element_ckl", seven_element_ckl()},
      {"semidirect_2x3", semidirect(two_by_three_action()).algebra}};
  std::mt19937_64 rng(config.seed);
  const auto budget = config.word_budget;
  std::uint64_t identities = 0, identity_budget = 0, equivs = 0, distinguished = 0, equiv_budget = 0;
  json per_algebra = json::array();
  for (const auto& [name, table] : corpus) {
    auto base = std::make_shared<const AlgebraTable>(table);
    const auto n = table.size();
    std::uniform_int_distribution<std::size_t> len(0, 3);
    std::uniform_int_distribution<Element> letter(0, static_cast<Element>(n - 1));
    auto random_word = [&] {
      std::vector<Element> w(len(rng));
      for (auto& l : w) l = letter(rng);
      return make_word(base, std::move(w));
    };
    std::uint64_t hits = 0;
    for (std::size_t k = 0; k < config.word_triples; ++k) {
      const auto a = random_word(), b = random_word(), c = random_word();
      auto get = [&](const DotResult& d) -> std::optional<Word> {
        if (auto w = std::get_if<Word>(&d)) return *w;
        return std::nullopt;
      };
      // ab·c = a·(b·c)
      auto l1 = get(word_dot(concat(a, b), c, budget));
      auto bc = get(word_dot(b, c, budget));
      auto r1 = bc ? get(word_dot(a, *bc, budget)) : std::nullopt;
      // a·bc = ((c·a)·b)(a·c)
      auto l2 = get(word_dot(a, concat(b, c), budget));
      auto ca = get(word_dot(c, a, budget));
      auto cab = ca ? get(word_dot(*ca, b, budget)) : std::nullopt;
      auto ac = get(word_dot(a, c, budget));
      if (!l1 || !r1 || !l2 || !cab || !ac) {
        ++hits;
        continue;
      }
      ++identities;
      if (!(*l1 == *r1) || !(*l2 == concat(*cab, *ac))) {
        r.fail({{"algebra", name}, {"a", a.letters}, {"b", b.letters}, {"c", c.letters}});
      }
    }
    identity_budget += hits;
    // Single letters agree with the table.
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        const auto w = std::get<Word>(word_dot(make_word(base, {x}), make_word(base, {y}), budget));
        if (w.letters != std::vector<Element>{table.dot(x, y)}) r.fail({{"algebra", name}, {"letters", {x, y}}});
      }
    }
    // ≈ at depth 2 on random short pairs; witnesses re-evaluated.
    for (std::size_t k = 0; k < 40; ++k) {
      auto a = random_word(), b = random_word();
      a.letters.resize(std::min<std::size_t>(a.size(), 2));
      b.letters.resize(std::min<std::size_t>(b.size(), 2));
      const auto e = approx_equiv(a, b, 2, budget);
      ++equivs;
      if (e.kind == EquivResult::Kind::budget_exceeded) ++equiv_budget;
      if (a == b && !e.equivalent()) r.fail({{"algebra", name}, {"reflexive", a.letters}});
      if (e.distinguished()) {
        ++distinguished;
        const auto l = std::get<Word>(word_dot(std::get<Word>(word_dot(e.c, a, budget)), e.d, budget));
        const auto rr = std::get<Word>(word_dot(std::get<Word>(word_dot(e.c, b, budget)), e.d, budget));
        if (l == rr || !(l == e.lhs) || !(rr == e.rhs)) r.fail({{"algebra", name}, {"witness", "does not re-verify"}});
        if (!approx_equiv(b, a, 2, budget).distinguished()) r.fail({{"algebra", name}, {"symmetric", a.letters}});
      }
    }
    // 1_X against the empty word.
    if (!approx_equiv(make_word(base, {0}), make_word(base, {}), std::min<std::size_t>(config.depth, n > 4 ? 2 : 3), budget)
             .equivalent()) {
      r.fail({{"algebra", name}, {"unit", "1 and the empty word are distinguished"}});
    }
    per_algebra.push_back({{"algebra", name}, {"identity_budget_exceeded", hits}});
  }
  // Word-level action compatibility for all actions between small algebras.
  const auto small = algebras_up_to(config.cap(config.word_action_n), ClassFilter::l, config.budget);
  std::uint64_t actions = 0, pairs = 0, action_budget = 0;
  for (const auto& x : small) {
    for (const auto& y : small) {
      for (const auto& a : enumerate_operations(x, y)) {
        ++actions;
        const auto rep = verify_word_action_compatibility(a, 3, budget);
        pairs += rep.checked;
        action_budget += rep.budget_exceeded;
        if (!rep.holds) r.fail({{"action", to_json(a)}, {"witness", rep.witness}});
      }
    }
  }
  const auto sd = semidirect_word_product_check(two_by_three_action(), 2, 2, budget);
  if (!sd.holds) r.fail({{"semidirect_words", sd.witness}});
  r.checked = identities + equivs + pairs + sd.checked;
  const auto rate = [](std::uint64_t hit, std::uint64_t ok) {
    return hit + ok == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(hit + ok);
  };
  r.details = {{"triples_checked", identities},
               {"triples_budget_exceeded", identity_budget},
               {"triple_budget_exceeded_rate", rate(identity_budget, identities)},
               {"equivalence_tests", equivs},
               {"distinguished", distinguished},
               {"equivalence_budget_exceeded", equiv_budget},
               {"actions", actions},
               {"action_word_pairs", pairs},
               {"action_budget_exceeded", action_budget},
               {"semidirect_word_checks", sd.checked},
               {"per_algebra", per_algebra},
               {"seed", config.seed}};
  return r;
}

json ConjectureReport::to_json() const {
  json sizes = json::array();
  for (std::size_t k = 0; k < simple_ckl.size(); ++k) {
    sizes.push_back({{"n", k + 2}, {"simple_ckl", simple_ckl[k]}, {"linear", linear[k]}});
  }
  json found = json::array();
  for (const auto& t : counterexamples) found.push_back(table_to_json(t));
  return {{"max_n", max_n},
          {"complete_up_to", complete_up_to},
          {"partial", partial},
          {"sizes", sizes},
          {"counterexamples", found}};
}

ConjectureReport conjecture_search(std::size_t max_n, const SearchBudget& budget) {
  if (max_n < 2) throw MalformedTable("conjecture search needs max_n >= 2");
  ConjectureReport r;
  r.max_n = max_n;
  r.complete_up_to = 1;
  for (std::size_t n = 2; n <= max_n; ++n) {
    EnumerationTask task;
    task.size = n;
    task.class_filter = ClassFilter::ckl;
    task.require_simple = true;
    const auto found = enumerate(task, budget);
    std::size_t lin = 0;
    for (const auto& t : found.tables) {
      if (is_linear(t)) {
        ++lin;
      } else {
        r.counterexamples.push_back(t);
      }
    }
    r.simple_ckl.push_back(found.tables.size());
    r.linear.push_back(lin);
    if (found.partial) {
      r.partial = true;
      break;
    }
    r.complete_up_to = n;
  }
  return r;
}

json verify_all(const VerifyConfig& config, std::vector<CheckResult>* results) {
  std::vector<CheckResult> all;
  all.push_back(verify_worked_examples());
  all.push_back(verify_families(config));
  all.push_back(verify_product_theorems(config));
  all.push_back(verify_ideal_lattices(config));
  all.push_back(verify_simple_linear_classification(config));
  all.push_back(verify_tail_plus_theorem(config));
  all.push_back(verify_ckl_structure(config));
  all.push_back(hilbert_structure_suite(config));
  all.push_back(verify_enumeration_oracles(config));
  all.push_back(verify_word_engine(config));
  const auto conj = conjecture_search(std::max<std::size_t>(2, config.cap(config.ckl_n)), config.budget);
  json checks = json::array();
  bool ok = true;
  for (const auto& c : all) {
    checks.push_back(c.to_json());
    ok = ok && c.holds;
  }
  if (results) *results = std::move(all);
  return {{"holds", ok}, {"checks", checks}, {"conjecture", conj.to_json()}};
}

}  // namespace lalg
