#ifndef LALG_WORDS_HPP
#define LALG_WORDS_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "lalg/algebra.hpp"
#include "lalg/products.hpp"

namespace lalg {

inline constexpr std::size_t default_word_budget = 12;
inline constexpr std::size_t default_context_depth = 3;

/// An element of the free monoid on the elements of `base`. The empty word
/// is the monoid unit; the one-letter word [0] is the unit of the algebra
/// and is a different word.
struct Word {
  std::shared_ptr<const AlgebraTable> base;
  std::vector<Element> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool operator==(const Word& o) const { return letters == o.letters && same_base(o); }
  bool same_base(const Word& o) const;
};

Word make_word(std::shared_ptr<const AlgebraTable> base, std::vector<Element> letters);
Word concat(const Word& a, const Word& b);
std::string format_word(const Word& w);
Word parse_word(std::shared_ptr<const AlgebraTable> base, const std::string& text);

struct BudgetExceeded {
  std::size_t length = 0;
  std::size_t budget = 0;
};

using DotResult = std::variant<Word, BudgetExceeded>;

/// The unique extension of the table to words: 1·a = a, ab·c = a·(b·c),
/// a·bc = ((c·a)·b)(a·c). Throws BaseMismatch.
DotResult word_dot(const Word& a, const Word& b, std::size_t budget = default_word_budget);

// The same on raw letter sequences; nullopt when the budget is exceeded.
std::optional<std::vector<Element>> dot_letters(const AlgebraTable& t, const std::vector<Element>& a,
                                                const std::vector<Element>& b, std::size_t budget);

struct EquivResult {
  enum class Kind { equivalent, distinguished, budget_exceeded };
  Kind kind = Kind::equivalent;
  std::size_t depth = 0;
  // For distinguished: the context and the two unequal values of (c·a)·d
  // and (c·b)·d.
  Word c, d, lhs, rhs;
  std::size_t budget_hits = 0;
  std::size_t contexts = 0;

  bool equivalent() const { return kind == Kind::equivalent; }
  bool distinguished() const { return kind == Kind::distinguished; }
};

/// Bounded test of a ≈ b: compares (c·a)·d with (c·b)·d over all words c, d
/// of length at most depth, by length then lexicographically. Equivalent is
/// a certificate for that depth only.
EquivResult approx_equiv(const Word& a, const Word& b, std::size_t depth = default_context_depth,
                         std::size_t budget = default_word_budget);

/// Every word of length at most max_len over n letters, by length then
/// lexicographically.
std::vector<std::vector<Element>> all_words(std::size_t n, std::size_t max_len);

bool is_self_similar(const AlgebraTable& table);

/// ρ'_{u1...uk}(x) = ρ_{u1}(...ρ_{uk}(x)).
std::variant<Element, BudgetExceeded> extend_action_to_words(const ActionMap& action, const Word& u_word,
                                                            Element x,
                                                            std::size_t budget = default_word_budget);
std::vector<Element> act_on_letters(const ActionMap& action, const std::vector<Element>& u_word,
                                    const std::vector<Element>& x_word);

struct WordReport {
  bool holds = true;
  std::size_t checked = 0;
  std::size_t budget_exceeded = 0;
  nlohmann::json witness;

  nlohmann::json to_json() const;
};

/// ρ'_{a·b}∘ρ'_a = ρ'_{b·a}∘ρ'_b for every pair of words over Y up to max_len.
WordReport verify_word_action_compatibility(const ActionMap& action, std::size_t max_len,
                                            std::size_t budget = default_word_budget);

/// Words over X ⋊ Y against pairs of words under (z,t)(x,u) = (z ρ_t(x), tu):
/// the map is checked to respect the operation up to bounded ≈, and
/// (x,u) ≈ (x,1)(1,u) is checked for every generator.
WordReport semidirect_word_product_check(const ActionMap& action, std::size_t depth,
                                         std::size_t context_depth = 2,
                                         std::size_t budget = default_word_budget);

struct SxCounterexample {
  Word lhs;  // x·(y·xx)
  Word rhs;  // y·(x·xx)
  bool base_is_l = false;
  // The base is not KL (y·(x·y) = x), so not CKL either; recorded, not assumed.
  bool base_is_ckl = false;
  bool lhs_is_unit = false;  // lhs ≈ empty word
  bool rhs_is_x = false;     // rhs ≈ x
  bool sides_differ = false; // lhs and rhs distinguished
  bool holds() const { return base_is_l && lhs_is_unit && rhs_is_x && sides_differ; }
  nlohmann::json to_json() const;
};

/// Words up to max_len grouped by bounded ≈, each word joining the first
/// class whose representative it cannot be told apart from. A class built
/// only because a comparison ran out of budget is counted in
/// `budget_exceeded`.
struct ClosureReport {
  bool self_similar = false;
  std::size_t max_len = 0;
  std::size_t depth = 0;
  std::vector<std::vector<std::vector<Element>>> classes;
  std::size_t budget_exceeded = 0;

  nlohmann::json to_json() const;
};

ClosureReport bounded_closure(const AlgebraTable& table, std::size_t max_len,
                              std::size_t depth = default_context_depth,
                              std::size_t budget = default_word_budget);

SxCounterexample reproduce_sx_counterexample(std::size_t depth = default_context_depth);

/// The three-element L-algebra {1, x, y} with x·y = y·x = x.
AlgebraTable three_element_example();

}  // namespace lalg

#endif  // LALG_WORDS_HPP
