#include <algorithm>

#include "doctest.h"
#include "lalg/families.hpp"
#include "lalg/ideals.hpp"
#include "lalg/verify.hpp"

using namespace lalg;

namespace {

// The ideal product straight from its definition, with principal ideals
// generated by brute closure.
ElementSet naive_product(const AlgebraTable& t, const std::vector<ElementSet>& ideals, ElementSet i, ElementSet j) {
  ElementSet out;
  for (Element x = 0; x < t.size(); ++x) {
    ElementSet gen;
    for (const auto& k : ideals) {
      if (k.contains(x) && (gen.empty() || k.size() < gen.size())) gen = k;
    }
    if ((gen & i).subset_of(j)) out.insert(x);
  }
  return out;
}

std::vector<ElementSet> naive_ideals(const AlgebraTable& t) {
  std::vector<ElementSet> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << t.size()); ++bits) {
    if (is_ideal(t, ElementSet(bits))) out.push_back(ElementSet(bits));
  }
  std::sort(out.begin(), out.end(), size_lex_less);
  return out;
}

}  // namespace

TEST_CASE("ideals of the four-element algebra") {
  const auto lattice = all_ideals(four_element_ckl());
  REQUIRE(lattice.size() == 4);
  CHECK(lattice[1] == ElementSet{0, 2});
  CHECK(lattice[2] == ElementSet{0, 1, 3});
  CHECK(lattice.is_distributive());
}

TEST_CASE("upsets in the seven-element algebra") {
  const auto t = seven_element_ckl();
  CHECK(is_ideal(t, upset(t, 5)));
  const auto c = check_ideal(t, upset(t, 6));
  CHECK_FALSE(c.is_ideal);
  REQUIRE(c.violated.has_value());
}

TEST_CASE("ideal conditions report witnesses") {
  const auto t = make_A(3);
  const auto c = check_ideal(t, ElementSet{0, 2});
  CHECK_FALSE(c.is_ideal);
  CHECK(*c.violated == IdealCondition::i1);
  REQUIRE(c.witness.size() == 2);
  CHECK(ElementSet{0, 2}.contains(c.witness[0]));
  CHECK(ElementSet{0, 2}.contains(t.dot(c.witness[0], c.witness[1])));
  CHECK_FALSE(ElementSet{0, 2}.contains(c.witness[1]));
  CHECK(*check_ideal(t, ElementSet{1}).violated == IdealCondition::unit);
}

TEST_CASE("both ideal enumerations and the subset scan agree") {
  for (const auto& t : algebras_up_to(4, ClassFilter::l, {})) {
    const auto naive = naive_ideals(t);
    CHECK(ideals_by_upset_closure(t) == naive);
    CHECK(ideals_by_search(t) == naive);
    CHECK(all_ideals(t).ideals() == naive);
  }
}

TEST_CASE("ideal product matches its definition") {
  for (const auto& t : algebras_up_to(4, ClassFilter::l, {})) {
    const auto lattice = all_ideals(t);
    for (std::size_t a = 0; a < lattice.size(); ++a) {
      for (std::size_t b = 0; b < lattice.size(); ++b) {
        const auto p = naive_product(t, lattice.ideals(), lattice[a], lattice[b]);
        CHECK(lattice[lattice.product(a, b)] == p);
        CHECK(ideal_product(lattice, lattice[a], lattice[b]) == p);
      }
    }
  }
}

TEST_CASE("ideal lattice forms an L-algebra") {
  for (const auto& t : algebras_up_to(4, ClassFilter::l, {})) {
    const auto lattice = all_ideals(t);
    CHECK(validate(lattice.as_algebra()).is_l);
    CHECK(lattice.is_distributive());
  }
}

TEST_CASE("prime ideals agree in both forms") {
  for (const auto& t : algebras_up_to(4, ClassFilter::l, {})) {
    const auto lattice = all_ideals(t);
    for (std::size_t k = 0; k + 1 < lattice.size(); ++k) {
      const auto& p = lattice[k];
      CHECK(is_prime_ideal(lattice, p) == is_prime_by_meets(lattice, p));
    }
    CHECK_THROWS_AS(is_prime_ideal(lattice, lattice[lattice.top()]), NotProper);
  }
}

TEST_CASE("spectrum of LH_n") {
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto s = spectrum(make_LH(n));
    CHECK(s.primes.size() == n - 1);
  }
}

TEST_CASE("spectrum basis is U_I") {
  const auto lattice = all_ideals(seven_element_ckl());
  const auto s = spectrum(lattice);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    std::vector<std::size_t> expected;
    for (std::size_t p = 0; p < s.primes.size(); ++p) {
      if (!lattice[i].subset_of(s.primes[p])) expected.push_back(p);
    }
    CHECK(s.basis[i] == expected);
  }
}

TEST_CASE("join membership") {
  const auto lattice = all_ideals(four_element_ckl());
  for (const auto& i : lattice.ideals()) {
    for (const auto& j : lattice.ideals()) CHECK(verify_join_membership(lattice, i, j));
  }
}

TEST_CASE("quotients") {
  const auto t = make_LH(5);
  const auto q = quotient(t, upset(t, 2));
  CHECK(q.quotient.size() == 3);
  CHECK(validate(q.quotient).is_hilbert);
  CHECK(is_morphism(t, q.quotient, q.projection.map));
  CHECK_THROWS_AS(quotient(make_A(3), ElementSet{0, 2}), NotAnIdeal);
}

TEST_CASE("simplicity") {
  CHECK(is_simple(make_A(5)));
  CHECK_FALSE(is_simple(make_LH(3)));
  CHECK_FALSE(is_simple(AlgebraTable()));
  const auto w = simplicity_violation(make_LH(3));
  REQUIRE(w.has_value());
  CHECK(w->identity == Identity::simple);
}

TEST_CASE("ideal report") {
  const auto j = ideal_report(all_ideals(four_element_ckl()));
  CHECK(j["ideals"].size() == 4);
  CHECK(j["ideals"][1] == nlohmann::json{0, 2});
}
