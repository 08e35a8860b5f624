#include "lalg/words.hpp"

#include <sstream>

namespace lalg {

using nlohmann::json;

bool Word::same_base(const Word& o) const {
  if (!base || !o.base) return false;
  return base == o.base || *base == *o.base;
}

Word make_word(std::shared_ptr<const AlgebraTable> base, std::vector<Element> letters) {
  if (!base) throw BaseMismatch("word without a base algebra");
  for (auto l : letters) base->check_index(l);
  return Word{std::move(base), std::move(letters)};
}

Word concat(const Word& a, const Word& b) {
  if (!a.same_base(b)) throw BaseMismatch("words over different algebras");
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w.letters[i]);
  }
  return out;
}

Word parse_word(std::shared_ptr<const AlgebraTable> base, const std::string& text) {
  std::istringstream in(text);
  std::vector<Element> letters;
  long long v = 0;
  while (in >> v) {
    if (v < 0 || v > 65535) throw IndexOutOfRange("letter out of range");
    letters.push_back(static_cast<Element>(v));
  }
  if (!in.eof()) throw MalformedTable("words are space-separated indices");
  return make_word(std::move(base), std::move(letters));
}

namespace {

// x·b for a single letter x: position j holds (b_{j+1}...b_{m-1} · x) · b_j,
// the last position x·b_{m-1}.
std::vector<Element> letter_dot(const AlgebraTable& t, Element x, const std::vector<Element>& b) {
  const auto m = b.size();
  std::vector<Element> out(m);
  Element fold = x;
  for (std::size_t j = m; j-- > 0;) {
    out[j] = t.dot(fold, b[j]);
    fold = t.dot(b[j], fold);
  }
  return out;
}

}  // namespace

std::optional<std::vector<Element>> dot_letters(const AlgebraTable& t, const std::vector<Element>& a,
                                                const std::vector<Element>& b, std::size_t budget) {
  if (a.size() > budget || b.size() > budget) return std::nullopt;
  if (a.empty()) return b;
  std::vector<Element> cur = b;
  for (std::size_t i = a.size(); i-- > 0;) cur = letter_dot(t, a[i], cur);
  return cur;
}

DotResult word_dot(const Word& a, const Word& b, std::size_t budget) {
  if (!a.same_base(b)) throw BaseMismatch("words over different algebras");
  auto r = dot_letters(*a.base, a.letters, b.letters, budget);
  if (!r) return BudgetExceeded{std::max(a.size(), b.size()), budget};
  return Word{a.base, std::move(*r)};
}

std::vector<std::vector<Element>> all_words(std::size_t n, std::size_t max_len) {
  std::vector<std::vector<Element>> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const auto end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Element l = 0; l < n; ++l) {
        auto w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

EquivResult approx_equiv(const Word& a, const Word& b, std::size_t depth, std::size_t budget) {
  if (!a.same_base(b)) throw BaseMismatch("words over different algebras");
  const auto& t = *a.base;
  EquivResult r;
  r.depth = depth;
  const auto contexts = all_words(t.size(), depth);
  for (const auto& c : contexts) {
    auto ca = dot_letters(t, c, a.letters, budget);
    auto cb = dot_letters(t, c, b.letters, budget);
    if (!ca || !cb) {
      ++r.budget_hits;
      continue;
    }
    if (*ca == *cb) {
      r.contexts += contexts.size();
      continue;
    }
    for (const auto& d : contexts) {
      ++r.contexts;
      auto l = dot_letters(t, *ca, d, budget);
      auto rr = dot_letters(t, *cb, d, budget);
      if (!l || !rr) {
        ++r.budget_hits;
        continue;
      }
      if (*l != *rr) {
        r.kind = EquivResult::Kind::distinguished;
        r.c = Word{a.base, c};
        r.d = Word{a.base, d};
        r.lhs = Word{a.base, std::move(*l)};
        r.rhs = Word{a.base, std::move(*rr)};
        return r;
      }
    }
  }
  if (r.budget_hits) r.kind = EquivResult::Kind::budget_exceeded;
  return r;
}

bool is_self_similar(const AlgebraTable& t) {
  require_l_algebra(t);
  const auto n = t.size();
  for (Element x = 0; x < n; ++x) {
    std::vector<bool> hit(n, false);
    std::size_t count = 0;
    for (Element y = 0; y < n; ++y) {
      if (!leq(t, y, x)) continue;
      const auto v = t.dot(x, y);
      if (hit[v]) return false;
      hit[v] = true;
      ++count;
    }
    if (count != n) return false;
  }
  return true;
}

std::variant<Element, BudgetExceeded> extend_action_to_words(const ActionMap& action, const Word& u_word,
                                                            Element x, std::size_t budget) {
  if (!u_word.base || !(*u_word.base == action.actor)) throw BaseMismatch("word is not over the acting algebra");
  action.base.check_index(x);
  if (u_word.size() > budget) return BudgetExceeded{u_word.size(), budget};
  for (std::size_t i = u_word.size(); i-- > 0;) x = action.rho[u_word.letters[i]][x];
  return x;
}

std::vector<Element> act_on_letters(const ActionMap& action, const std::vector<Element>& u_word,
                                    const std::vector<Element>& x_word) {
  std::vector<Element> out = x_word;
  for (auto& x : out) {
    for (std::size_t i = u_word.size(); i-- > 0;) x = action.rho[u_word[i]][x];
  }
  return out;
}

json WordReport::to_json() const {
  return {{"holds", holds}, {"checked", checked}, {"budget_exceeded", budget_exceeded}, {"witness", witness}};
}

WordReport verify_word_action_compatibility(const ActionMap& action, std::size_t max_len, std::size_t budget) {
  WordReport r;
  const auto& Y = action.actor;
  const auto words = all_words(Y.size(), max_len);
  for (const auto& a : words) {
    for (const auto& b : words) {
      auto ab = dot_letters(Y, a, b, budget);
      auto ba = dot_letters(Y, b, a, budget);
      if (!ab || !ba) {
        ++r.budget_exceeded;
        continue;
      }
      ++r.checked;
      for (Element x = 0; x < action.base.size(); ++x) {
        const auto lhs = act_on_letters(action, *ab, act_on_letters(action, a, {x}));
        const auto rhs = act_on_letters(action, *ba, act_on_letters(action, b, {x}));
        if (lhs != rhs) {
          r.holds = false;
          r.witness = {{"a", a}, {"b", b}, {"x", x}, {"lhs", lhs}, {"rhs", rhs}};
          return r;
        }
      }
    }
  }
  return r;
}

namespace {

struct PairWord {
  std::vector<Element> x;
  std::vector<Element> y;
};

}  // namespace

WordReport semidirect_word_product_check(const ActionMap& action, std::size_t depth, std::size_t context_depth,
                                         std::size_t budget) {
  WordReport r;
  const auto product = semidirect(action);
  auto px = std::make_shared<const AlgebraTable>(action.base);
  auto py = std::make_shared<const AlgebraTable>(action.actor);
  auto pp = std::make_shared<const AlgebraTable>(product.algebra);
  const auto& X = *px;
  const auto& Y = *py;
  const auto& P = *pp;

  auto phi = [&](const std::vector<Element>& w) {
    PairWord out;
    for (auto p : w) {
      const auto [x, u] = product.carrier[p];
      out.x.push_back(act_on_letters(action, out.y, {x}).front());
      out.y.push_back(u);
    }
    return out;
  };
  // Returns false on a distinguishing context; counts budget hits.
  auto same = [&](const std::shared_ptr<const AlgebraTable>& base, const std::vector<Element>& a,
                  const std::vector<Element>& b, const char* where, const json& ctx) {
    if (a == b) return true;
    auto e = approx_equiv(Word{base, a}, Word{base, b}, context_depth, budget);
    if (e.kind == EquivResult::Kind::budget_exceeded) ++r.budget_exceeded;
    if (e.distinguished()) {
      r.holds = false;
      r.witness = {{"where", where},
                   {"case", ctx},
                   {"a", a},
                   {"b", b},
                   {"c", e.c.letters},
                   {"d", e.d.letters},
                   {"lhs", e.lhs.letters},
                   {"rhs", e.rhs.letters}};
      return false;
    }
    return true;
  };

  // Generators: (1,u)·(x,u) = (x,1) and (x,u) ≈ (x,1)(1,u).
  for (Element x = 0; x < X.size(); ++x) {
    for (Element u = 0; u < Y.size(); ++u) {
      const json ctx = {{"x", x}, {"u", u}};
      if (P.dot(product.index(0, u), product.index(x, u)) != product.index(x, 0)) {
        r.holds = false;
        r.witness = {{"where", "(1,u).(x,u)"}, {"case", ctx}};
        return r;
      }
      ++r.checked;
      const std::vector<Element> factored{product.index(x, 0), product.index(0, u)};
      const std::vector<Element> single{product.index(x, u)};
      if (!same(pp, factored, single, "factorisation in M(X x Y)", ctx)) return r;
      const auto f = phi(factored);
      const auto s = phi(single);
      if (!same(px, f.x, s.x, "factorisation, X component", ctx)) return r;
      if (!same(py, f.y, s.y, "factorisation, Y component", ctx)) return r;
    }
  }

  const auto words = all_words(P.size(), depth);
  for (const auto& v : words) {
    for (const auto& w : words) {
      auto vw = dot_letters(P, v, w, budget);
      if (!vw) {
        ++r.budget_exceeded;
        continue;
      }
      const auto lhs = phi(*vw);
      const auto a = phi(v);
      const auto b = phi(w);
      auto bd = dot_letters(Y, a.y, b.y, budget);
      auto db = dot_letters(Y, b.y, a.y, budget);
      if (!bd || !db) {
        ++r.budget_exceeded;
        continue;
      }
      auto first = dot_letters(X, act_on_letters(action, *bd, a.x), act_on_letters(action, *db, b.x), budget);
      if (!first) {
        ++r.budget_exceeded;
        continue;
      }
      ++r.checked;
      const json ctx = {{"v", v}, {"w", w}};
      if (!same(px, lhs.x, *first, "product, X component", ctx)) return r;
      if (!same(py, lhs.y, *bd, "product, Y component", ctx)) return r;
    }
  }
  return r;
}

json ClosureReport::to_json() const {
  return {{"self_similar", self_similar},
          {"max_len", max_len},
          {"depth", depth},
          {"class_count", classes.size()},
          {"classes", classes},
          {"budget_exceeded", budget_exceeded}};
}

ClosureReport bounded_closure(const AlgebraTable& table, std::size_t max_len, std::size_t depth,
                              std::size_t budget) {
  require_l_algebra(table);
  auto base = std::make_shared<const AlgebraTable>(table);
  ClosureReport r;
  r.self_similar = is_self_similar(table);
  r.max_len = max_len;
  r.depth = depth;
  for (auto& w : all_words(table.size(), max_len)) {
    const auto word = Word{base, w};
    bool placed = false, undecided = false;
    for (auto& cls : r.classes) {
      const auto e = approx_equiv(word, Word{base, cls.front()}, depth, budget);
      if (e.equivalent()) {
        cls.push_back(w);
        placed = true;
        break;
      }
      if (e.kind == EquivResult::Kind::budget_exceeded) undecided = true;
    }
    if (!placed) {
      r.classes.push_back({std::move(w)});
      if (undecided) ++r.budget_exceeded;
    }
  }
  return r;
}

AlgebraTable three_element_example() {
  return AlgebraTable::from_rows({{0, 1, 2}, {0, 0, 1}, {0, 1, 0}}, {"1", "x", "y"});
}

json SxCounterexample::to_json() const {
  return {{"lhs", lhs.letters},
          {"rhs", rhs.letters},
          {"base_is_l", base_is_l},
          {"base_is_ckl", base_is_ckl},
          {"lhs_equivalent_to_unit", lhs_is_unit},
          {"rhs_equivalent_to_x", rhs_is_x},
          {"sides_distinguished", sides_differ},
          {"holds", holds()}};
}

SxCounterexample reproduce_sx_counterexample(std::size_t depth) {
  auto base = std::make_shared<const AlgebraTable>(three_element_example());
  const Element x = 1, y = 2;
  const Word xx = make_word(base, {x, x});
  const Word wx = make_word(base, {x});
  const Word wy = make_word(base, {y});
  SxCounterexample r;
  r.base_is_l = is_l_algebra(*base);
  r.base_is_ckl = is_ckl(*base);
  r.lhs = std::get<Word>(word_dot(wx, std::get<Word>(word_dot(wy, xx))));
  r.rhs = std::get<Word>(word_dot(wy, std::get<Word>(word_dot(wx, xx))));
  r.lhs_is_unit = approx_equiv(r.lhs, make_word(base, {}), depth).equivalent();
  r.rhs_is_x = approx_equiv(r.rhs, wx, depth).equivalent();
  r.sides_differ = approx_equiv(r.lhs, r.rhs, depth).distinguished();
  return r;
}

}  // namespace lalg
