#include "doctest.h"
#include "lalg/canonical.hpp"
#include "lalg/families.hpp"
#include "lalg/ideals.hpp"
#include "lalg/products.hpp"
#include "lalg/verify.hpp"

using namespace lalg;

TEST_CASE("A_n") {
  for (std::size_t n = 2; n <= 64; ++n) {
    const auto t = make_A(n);
    const auto r = validate(t);
    CHECK(r.is_ckl);
    CHECK(r.is_linear);
    CHECK(r.is_simple);
    CHECK(order_structure(t).invariant_elements == std::vector<Element>{0, 1});
  }
  CHECK(make_A(3).dot(1, 2) == 1);
  CHECK(make_A(3).dot(2, 1) == 0);
  CHECK_THROWS_AS(make_A(0), MalformedTable);
}

TEST_CASE("LH_n") {
  for (std::size_t n = 2; n <= 64; ++n) {
    const auto t = make_LH(n);
    const auto r = validate(t);
    CHECK(r.is_hilbert);
    CHECK(r.is_linear);
    const auto lattice = all_ideals(t);
    CHECK(lattice.size() == n);
    CHECK(spectrum(lattice).primes.size() == n - 1);
  }
}

TEST_CASE("A_n is the only simple linear algebra up to size 6") {
  for (const auto& t : algebras_up_to(6, ClassFilter::linear, {})) {
    if (is_simple(t)) CHECK(isomorphic(t, make_A(t.size())));
  }
}

TEST_CASE("symmetric products of ρ^(k)") {
  for (std::size_t n = 1; n <= 16; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto s = symmetric_semidirect(rho_k_action(n, k));
      CHECK(all_ideals(s.algebra).size() == 2 * n - k);
    }
  }
}

TEST_CASE("chain order") {
  const auto t = make_LH(4);
  CHECK(chain_order(t) == std::vector<Element>{0, 1, 2, 3});
  CHECK_THROWS_AS(chain_order(four_element_ckl()), Falsified);
}

TEST_CASE("tails of the four-element algebra") {
  const auto r = tail_analysis(four_element_ckl());
  CHECK(r.has_tail);
  REQUIRE(r.tails.size() == 2);
  for (const auto& tail : r.tails) CHECK(is_ideal(four_element_ckl(), tail.up));
}

TEST_CASE("simple CKL algebras up to size 5 are tail+ and linear") {
  for (const auto& t : algebras_up_to(5, ClassFilter::ckl, {})) {
    if (!is_simple(t)) continue;
    const auto r = tail_analysis(t);
    CHECK(r.is_tail_plus);
    CHECK(r.is_tail_plus_alt);
    CHECK(validate(t).is_linear);
  }
}

TEST_CASE("Hasse components are ideals with the unit added") {
  for (const auto& t : algebras_up_to(5, ClassFilter::ckl, {})) {
    for (auto c : hasse_components(t)) {
      c.insert(0);
      CHECK(is_ideal(t, c));
    }
  }
}

TEST_CASE("bounded CKL algebras") {
  for (const auto& t : algebras_up_to(5, ClassFilter::ckl, {})) CHECK(glivenko_check(t).holds());
  const auto g = glivenko_check(make_A(4));
  CHECK(g.applicable);
  CHECK_FALSE(glivenko_check(seven_element_ckl()).applicable);
}
