#include <random>

#include "doctest.h"
#include "lalg/families.hpp"
#include "lalg/words.hpp"

using namespace lalg;

namespace {

using Letters = std::vector<Element>;

// Recursive evaluation that peels the first letter of the right factor:
// x·(b r) = ((r·x)·b)(x·r).
Letters eval(const AlgebraTable& t, const Letters& a, const Letters& b) {
  if (a.empty()) return b;
  if (a.size() > 1) return eval(t, {a[0]}, eval(t, Letters(a.begin() + 1, a.end()), b));
  if (b.empty()) return {};
  if (b.size() == 1) return {t.dot(a[0], b[0])};
  const Letters rest(b.begin() + 1, b.end());
  auto out = eval(t, eval(t, rest, a), {b[0]});
  const auto tail = eval(t, a, rest);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::shared_ptr<const AlgebraTable> shared(AlgebraTable t) { return std::make_shared<const AlgebraTable>(std::move(t)); }

}  // namespace

TEST_CASE("word_dot agrees with a recursive evaluator") {
  std::mt19937_64 rng(11);
  for (const auto& t : {make_A(3), make_LH(4), four_element_ckl(), seven_element_ckl(), three_element_example()}) {
    const auto base = shared(t);
    std::uniform_int_distribution<std::size_t> len(0, 4);
    std::uniform_int_distribution<Element> letter(0, static_cast<Element>(t.size() - 1));
    for (int k = 0; k < 2000; ++k) {
      Letters a(len(rng)), b(len(rng));
      for (auto& l : a) l = letter(rng);
      for (auto& l : b) l = letter(rng);
      const auto w = word_dot(make_word(base, a), make_word(base, b), 16);
      REQUIRE(std::holds_alternative<Word>(w));
      CHECK(std::get<Word>(w).letters == eval(t, a, b));
    }
  }
}

TEST_CASE("single letters follow the table") {
  const auto t = seven_element_ckl();
  const auto base = shared(t);
  for (Element x = 0; x < t.size(); ++x) {
    for (Element y = 0; y < t.size(); ++y) {
      CHECK(std::get<Word>(word_dot(make_word(base, {x}), make_word(base, {y}))).letters == Letters{t.dot(x, y)});
    }
  }
}

TEST_CASE("budget and base checks") {
  const auto base = shared(make_A(3));
  const auto long_word = make_word(base, Letters(20, 1));
  CHECK(std::holds_alternative<BudgetExceeded>(word_dot(long_word, long_word, 12)));
  CHECK_THROWS_AS(word_dot(make_word(base, {1}), make_word(shared(make_LH(3)), {1})), BaseMismatch);
  CHECK_THROWS_AS(make_word(base, {3}), IndexOutOfRange);
  CHECK(parse_word(base, "1 2 0").letters == Letters{1, 2, 0});
  CHECK(format_word(make_word(base, {2, 1})) == "2 1");
}

TEST_CASE("the unit letter is a separate word") {
  const auto base = shared(make_A(3));
  const auto unit = make_word(base, {0});
  const auto empty = make_word(base, {});
  CHECK_FALSE(unit == empty);
  CHECK(approx_equiv(unit, empty, 3).equivalent());
}

TEST_CASE("distinguishing witnesses re-verify") {
  const auto base = shared(make_A(3));
  const auto a = make_word(base, {1});
  const auto b = make_word(base, {2});
  const auto e = approx_equiv(a, b, 2);
  REQUIRE(e.distinguished());
  const auto l = std::get<Word>(word_dot(std::get<Word>(word_dot(e.c, a)), e.d));
  const auto r = std::get<Word>(word_dot(std::get<Word>(word_dot(e.c, b)), e.d));
  CHECK(l == e.lhs);
  CHECK(r == e.rhs);
  CHECK_FALSE(l == r);
}

TEST_CASE("S(X) values on the three-element example") {
  const auto t = three_element_example();
  CHECK(validate(t).is_l);
  CHECK_FALSE(validate(t).is_kl);
  const auto sx = reproduce_sx_counterexample();
  CHECK(sx.base_is_l);
  CHECK(sx.lhs_is_unit);
  CHECK(sx.rhs_is_x);
  CHECK(sx.sides_differ);
  CHECK(sx.holds());
}

TEST_CASE("self-similarity") {
  // A finite algebra is self-similar only when it is trivial.
  CHECK(is_self_similar(AlgebraTable()));
  CHECK_FALSE(is_self_similar(make_A(2)));
  const auto r = bounded_closure(make_A(2), 2, 3);
  CHECK_FALSE(r.self_similar);
  std::size_t words = 0;
  for (const auto& c : r.classes) words += c.size();
  CHECK(words == all_words(2, 2).size());
}

TEST_CASE("action extends to words") {
  const auto action = rho_k_action(3, 1);
  const auto base = shared(action.actor);
  const auto w = make_word(base, {1, 1, 0});
  CHECK(std::get<Element>(extend_action_to_words(action, w, 1)) == action.apply(1, action.apply(1, 1)));
  CHECK(verify_word_action_compatibility(action, 3).holds);
  CHECK_THROWS_AS(extend_action_to_words(action, make_word(shared(make_LH(3)), {1}), 1), BaseMismatch);
}

TEST_CASE("semidirect words") {
  const auto rep = semidirect_word_product_check(two_by_three_action(), 2);
  CHECK(rep.holds);
  CHECK(rep.checked > 0);
}
