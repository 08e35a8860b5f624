#include "doctest.h"
#include "lalg/families.hpp"
#include "lalg/ideals.hpp"
#include "lalg/io.hpp"
#include "lalg/products.hpp"
#include "lalg/verify.hpp"

using namespace lalg;

namespace {

AlgebraTable three_with_b() {
  // {1, a, b} with a·b = b·a = b.
  return AlgebraTable::from_rows({{0, 1, 2}, {0, 0, 2}, {0, 2, 0}});
}

// ρ_a = id, ρ_b = constant 1; ker ρ^{1} = {1, a} is not an ideal of Y.
ActionMap kernel_example() {
  return make_action(make_A(2), three_with_b(), {{0, 1}, {0, 1}, {0, 0}});
}

}  // namespace

TEST_CASE("semidirect product table follows the defining formula") {
  for (const auto& action : {two_by_three_action(), rho_k_action(4, 2), kernel_example()}) {
    const auto p = semidirect(action);
    const auto& x = action.base;
    const auto& y = action.actor;
    REQUIRE(p.algebra.size() == x.size() * y.size());
    for (Element a = 0; a < x.size(); ++a) {
      for (Element u = 0; u < y.size(); ++u) {
        CHECK(p.index(a, u) == a * y.size() + u);
        for (Element b = 0; b < x.size(); ++b) {
          for (Element v = 0; v < y.size(); ++v) {
            const Element left = action.apply(y.dot(u, v), a);
            const Element right = action.apply(y.dot(v, u), b);
            CHECK(p.algebra.dot(p.index(a, u), p.index(b, v)) == p.index(x.dot(left, right), y.dot(u, v)));
          }
        }
      }
    }
    CHECK(validate(p.algebra).is_l);
  }
}

TEST_CASE("worked semidirect example") {
  const auto action = two_by_three_action();
  CHECK(action.cls == OperationClass::l);
  const auto p = semidirect(action);
  const auto lattice = all_ideals(p.algebra);
  const ElementSet k1{0}, k2{p.index(0, 0), p.index(1, 0), p.index(2, 0)};
  REQUIRE(lattice.size() == 3);
  CHECK(lattice[0] == k1);
  CHECK(lattice[1] == k2);
  CHECK(lattice[2] == ElementSet::full(6));
  CHECK(ideal_product(lattice, k2, k1) == k1);
  const auto c = check_ideal(p.algebra, p.embed(ElementSet{0}, ElementSet{0, 1}));
  CHECK_FALSE(c.is_ideal);
  CHECK(*c.violated == IdealCondition::i1);
  CHECK(c.witness == std::vector<Element>{p.index(0, 1), p.index(1, 0)});
}

TEST_CASE("invalid operations are rejected") {
  const auto x = make_LH(3);
  const auto y = make_A(2);
  CHECK_THROWS_AS(make_action(x, y, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}), ActionInvalid);
  CHECK_THROWS_AS(make_action(x, y, {{0, 0, 0}, {0, 1, 2}}), ActionInvalid);
  CHECK_THROWS_AS(make_action(x, y, {{0, 1, 2}, {1, 1, 1}}), ActionInvalid);
  CHECK_FALSE(check_operation(x, y, {{0, 1, 2}, {0, 2, 1}}).valid);
}

TEST_CASE("enumerated operations are valid and sorted") {
  const auto x = make_LH(3);
  const auto y = make_A(3);
  const auto all = enumerate_operations(x, y);
  REQUIRE_FALSE(all.empty());
  for (std::size_t k = 0; k < all.size(); ++k) {
    CHECK(check_operation(x, y, all[k].rho).valid);
    if (k) CHECK(all[k - 1].rho < all[k].rho);
  }
  const auto ckl = enumerate_operations(x, y, OperationClass::ckl);
  for (const auto& a : ckl) CHECK(a.cls >= OperationClass::ckl);
}

TEST_CASE("ideals split as K_X ⋊ K_Y") {
  const auto p = semidirect(rho_k_action(4, 1));
  const auto lattice = all_ideals(p.algebra);
  for (const auto& k : lattice.ideals()) {
    const auto s = project_ideal(p, k);
    CHECK(p.embed(s.kx, s.ky) == k);
  }
  CHECK_THROWS_AS(project_ideal(p, ElementSet{1}), NotAnIdeal);
}

TEST_CASE("pair conditions agree with the direct ideal test") {
  for (const auto& action : {rho_k_action(3, 1), two_by_three_action()}) {
    const auto p = semidirect(action);
    const auto ix = all_ideals(action.base);
    const auto iy = all_ideals(action.actor);
    for (const auto& i : ix.ideals()) {
      for (const auto& u : iy.ideals()) {
        const auto c = check_pair_conditions(p, i, u);
        CHECK(c.product_is_ideal == is_ideal(p.algebra, p.embed(i, u)));
        CHECK(c.holds() == c.product_is_ideal);
      }
    }
  }
}

TEST_CASE("ideal counts and spectrum decomposition") {
  for (const auto& action : {two_by_three_action(), rho_k_action(5, 2), kernel_example()}) {
    const ProductAnalysis an(action);
    const auto counts = ideal_count_formulas(an);
    CHECK(counts.holds());
    CHECK(counts.product == counts.sum_formula);
    const auto sd = spec_decomposition(an);
    CHECK(sd.holds());
    CHECK(sd.spec_product == sd.rho_spec_x + sd.spec_y);
    CHECK(product_law_violations(an).empty());
  }
}

TEST_CASE("direct products reach the ideal-count bound") {
  const ProductAnalysis an(trivial_action(make_LH(3), make_A(3)));
  const auto counts = ideal_count_formulas(an);
  CHECK(counts.direct);
  CHECK(counts.product == counts.x * counts.y);
}

TEST_CASE("kernel of ρ^I need not be an ideal") {
  const auto action = kernel_example();
  const ElementSet unit{0};
  CHECK(ker_rho_mod(action, unit) == ElementSet{0, 1});
  CHECK_FALSE(is_ideal(action.actor, ElementSet{0, 1}));
  const ProductAnalysis an(action);
  CHECK(rho_kernel_ideal(an, unit) == unit);
  const auto sd = spec_decomposition(an);
  CHECK(sd.holds());
  CHECK(sd.kernel_not_ideal >= 1);
  CHECK(ideal_count_formulas(an).holds());
  CHECK(product_law_violations(an).empty());
}

TEST_CASE("ker ρ^I requires a ρ-ideal") {
  const auto action = rho_k_action(3, 1);
  CHECK_THROWS_AS(ker_rho_mod(action, ElementSet{0, 2}), NotRhoIdeal);
}

TEST_CASE("symmetric products") {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto action = rho_k_action(n, k);
      REQUIRE(action.cls >= OperationClass::ckl);
      const auto s = symmetric_semidirect(action);
      CHECK(s.carrier.size() == 2 * n - k);
      for (auto [x, u] : s.carrier) CHECK(action.apply(u, x) == x);
      CHECK(validate(s.algebra).is_ckl);
      CHECK(symmetric_ideal_bijection(action).holds);
    }
  }
  CHECK_THROWS_AS(symmetric_semidirect(two_by_three_action()), ActionClassTooWeak);
}

TEST_CASE("quotient equivalence on small actions") {
  const ProductAnalysis an(rho_k_action(3, 1));
  for (const auto& i : an.ideals_x.ideals()) {
    if (!is_rho_stable(an.action, i)) continue;
    for (const auto& u : an.ideals_y.ideals()) CHECK(quotient_equivalence(an, i, u).agree());
  }
}

TEST_CASE("action files") {
  const auto a = read_action_file(LALG_TEST_DATA "/two_by_three.txt");
  const auto b = two_by_three_action();
  CHECK(a.base == b.base);
  CHECK(a.actor == b.actor);
  CHECK(a.rho == b.rho);
  const auto c = action_from_json(to_json(b));
  CHECK(c.rho == b.rho);
  CHECK_THROWS_AS(parse_action("2\n0 1\n0 0\n2\n0 1\n0 0\n0 1\n"), MalformedTable);
}
