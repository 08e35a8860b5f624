#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "lalg/algebra.hpp"
#include "lalg/canonical.hpp"
#include "lalg/enumerate.hpp"
#include "lalg/families.hpp"
#include "lalg/io.hpp"
#include "lalg/verify.hpp"

using namespace lalg;

namespace {

// Independent isomorphism test over all unit-fixing bijections.
bool brute_isomorphic(const AlgebraTable& a, const AlgebraTable& b) {
  if (a.size() != b.size()) return false;
  std::vector<Element> p(a.size());
  std::iota(p.begin(), p.end(), Element{0});
  do {
    bool ok = true;
    for (Element x = 0; x < a.size() && ok; ++x) {
      for (Element y = 0; y < a.size() && ok; ++y) ok = p[a.dot(x, y)] == b.dot(p[x], p[y]);
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return false;
}

}  // namespace

TEST_CASE("text format round trip") {
  const auto t = seven_element_ckl();
  const auto text = format_table(t);
  CHECK(parse_table(text) == t);
  CHECK(format_table(parse_table(text)) == text);
  CHECK(table_from_json(table_to_json(t)) == t);
  const auto both = parse_tables(format_tables({t, make_A(3)}));
  REQUIRE(both.size() == 2);
  CHECK(both[1] == make_A(3));
}

TEST_CASE("comments are skipped") {
  CHECK(parse_table("# c\n2\n# inside\n0 1\n0 0\n") == make_A(2));
}

TEST_CASE("malformed tables are rejected") {
  CHECK_THROWS_AS(parse_table("3\n0 1 2\n0 0\n0 0 0\n"), MalformedTable);
  CHECK_THROWS_AS(parse_table("2\n0 1\n0 x\n"), MalformedTable);
  CHECK_THROWS_AS(parse_table("2\n0 1\n0 2\n"), MalformedTable);
  CHECK_THROWS_AS(parse_table("0\n"), MalformedTable);
  CHECK_THROWS_AS(table_from_json(nlohmann::json{{"n", 2}, {"table", {{0, 1}}}}), MalformedTable);
}

TEST_CASE("classification of the worked examples") {
  const auto four = validate(four_element_ckl());
  CHECK(four.is_l);
  CHECK(four.is_kl);
  CHECK(four.is_ckl);
  CHECK_FALSE(four.is_hilbert);
  CHECK_FALSE(four.is_linear);
  const auto seven = validate(seven_element_ckl());
  CHECK(seven.is_ckl);
  CHECK_FALSE(seven.is_bounded);
  const auto a4 = validate(make_A(4));
  CHECK(a4.is_linear);
  CHECK(a4.is_simple);
  CHECK(a4.is_bounded);
}

TEST_CASE("every reported witness violates its identity") {
  for (const auto& t : enumerate_naive(3)) {
    for (const auto& [flag, w] : validate(t).witnesses) CHECK(witness_violates(t, w));
  }
  const auto bad = AlgebraTable::from_rows({{0, 1, 2}, {0, 0, 0}, {0, 0, 0}});
  const auto r = validate(bad);
  CHECK_FALSE(r.is_l);
  REQUIRE(r.witness_for("l") != nullptr);
  CHECK(r.witness_for("l")->identity == Identity::antisymmetry);
  CHECK(witness_violates(bad, *r.witness_for("l")));
  CHECK_THROWS_AS(require_l_algebra(bad), NotAnLAlgebra);
}

TEST_CASE("order structure of the seven-element algebra") {
  const auto o = order_structure(seven_element_ckl());
  std::vector<std::pair<Element, Element>> expected{{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 5}, {3, 6}, {4, 6}};
  auto got = o.hasse_edges;
  std::sort(got.begin(), got.end());
  CHECK(got == expected);
  CHECK(o.minimal_elements == std::vector<Element>{5, 6});
}

TEST_CASE("invariant elements of A_n") {
  for (std::size_t n = 2; n <= 8; ++n) CHECK(order_structure(make_A(n)).invariant_elements == std::vector<Element>{0, 1});
}

TEST_CASE("subalgebras renumber in increasing order") {
  const auto t = make_LH(5);
  const ElementSet s{0, 2, 4};
  REQUIRE(is_subalgebra(t, s));
  CHECK(subalgebra(t, s) == make_LH(3));
}

TEST_CASE("canonical form is a complete invariant at n <= 4") {
  std::mt19937_64 rng(7);
  std::vector<AlgebraTable> all;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& t : enumerate_naive(n)) all.push_back(t);
  }
  CHECK(all.size() == 51);
  for (const auto& t : all) {
    CHECK(canonical_form(t) == t);
    std::vector<Element> perm(t.size());
    std::iota(perm.begin(), perm.end(), Element{0});
    for (int k = 0; k < 5; ++k) {
      std::shuffle(perm.begin() + 1, perm.end(), rng);
      const auto r = relabel(t, perm);
      CHECK(canonical_form(r) == t);
      CHECK(brute_isomorphic(r, t));
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(brute_isomorphic(all[i], all[j]));
  }
}

TEST_CASE("canonical form requires an L-algebra") {
  CHECK_THROWS_AS(canonical_form(AlgebraTable::from_rows({{0, 1, 2}, {0, 0, 0}, {0, 0, 0}})), NotAnLAlgebra);
}

TEST_CASE("endomorphisms agree with the exhaustive filter") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& t : enumerate_naive(n)) {
      std::vector<std::vector<Element>> maps;
      for (const auto& f : endomorphisms(t)) maps.push_back(f.map);
      CHECK(maps == endomorphisms_naive(t));
    }
  }
}

TEST_CASE("endomorphisms of the two-by-three base") {
  const auto x = two_by_three_action().base;
  const auto e = endomorphisms(x);
  REQUIRE(e.size() == 2);
  CHECK(e[0].map == std::vector<Element>{0, 0, 0});
  CHECK(e[1].map == std::vector<Element>{0, 1, 2});
  CHECK(kernel(e[0]) == ElementSet::full(3));
}
