#include "lalg/canonical.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <tuple>

namespace lalg {

AlgebraTable relabel(const AlgebraTable& t, std::span<const Element> perm) {
  const auto n = t.size();
  if (perm.size() != n || perm[0] != 0) throw MalformedTable("relabeling must fix the unit");
  std::vector<Element> entries(n * n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) entries[perm[x] * n + perm[y]] = perm[t.dot(x, y)];
  }
  std::vector<std::string> names;
  if (!t.names().empty()) {
    names.resize(n);
    for (Element x = 0; x < n; ++x) names[perm[x]] = t.names()[x];
  }
  return AlgebraTable(n, std::move(entries), std::move(names));
}

namespace {

using Colours = std::vector<int>;

// Re-rank a family of signatures into dense colours 0..k-1 in signature order.
template <typename Sig>
Colours rank(const std::vector<Sig>& sigs) {
  std::vector<Sig> sorted = sigs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Colours out(sigs.size());
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
  }
  return out;
}

int count_classes(const Colours& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

Colours initial_colours(const AlgebraTable& t) {
  const auto n = t.size();
  std::vector<std::array<int, 9>> sigs(n);
  for (Element x = 0; x < n; ++x) {
    int up = 0, down = 0, fixes = 0, fixed_by = 0, up_cover = 0, down_cover = 0;
    for (Element y = 0; y < n; ++y) {
      if (leq(t, x, y)) ++up;
      if (leq(t, y, x)) ++down;
      if (t.dot(y, x) == x) ++fixes;
      if (t.dot(x, y) == y) ++fixed_by;
      if (y == x) continue;
      bool y_covers_x = leq(t, x, y), x_covers_y = leq(t, y, x);
      for (Element m = 0; m < n && (y_covers_x || x_covers_y); ++m) {
        if (m == x || m == y) continue;
        if (leq(t, x, m) && leq(t, m, y)) y_covers_x = false;
        if (leq(t, y, m) && leq(t, m, x)) x_covers_y = false;
      }
      up_cover += y_covers_x;
      down_cover += x_covers_y;
    }
    sigs[x] = {x == 0 ? 0 : 1,
               up,
               down,
               up_cover,
               down_cover,
               is_invariant_element(t, x) ? 1 : 0,
               is_prime_element(t, x) ? 1 : 0,
               fixes,
               fixed_by};
  }
  return rank(sigs);
}

Colours refine(const AlgebraTable& t, Colours colours) {
  const auto n = t.size();
  using Sig = std::pair<int, std::vector<std::tuple<int, int, int>>>;
  std::vector<Sig> sigs(n);
  for (;;) {
    for (Element x = 0; x < n; ++x) {
      auto& s = sigs[x];
      s.first = colours[x];
      s.second.clear();
      for (Element y = 0; y < n; ++y) {
        s.second.emplace_back(colours[y], colours[t.dot(x, y)], colours[t.dot(y, x)]);
      }
      std::sort(s.second.begin(), s.second.end());
    }
    auto next = rank(sigs);
    if (count_classes(next) == count_classes(colours)) return next;
    colours = std::move(next);
  }
}

struct Search {
  const AlgebraTable& table;
  std::vector<Element> best;
  bool have_best = false;
  std::vector<Element> candidate;

  void leaf(const Colours& colours) {
    const auto n = table.size();
    // Discrete colouring: colour rank is the new index; the unit has colour 0.
    std::vector<Element> inverse(n);
    for (Element x = 0; x < n; ++x) inverse[colours[x]] = x;
    candidate.resize(n * n);
    bool less = !have_best;
    bool greater = false;
    for (std::size_t a = 0; a < n && !greater; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto v = static_cast<Element>(colours[table.dot(inverse[a], inverse[b])]);
        candidate[a * n + b] = v;
        if (!less) {
          const auto bv = best[a * n + b];
          if (v < bv) {
            less = true;
          } else if (v > bv) {
            greater = true;
            break;
          }
        }
      }
    }
    if (less && !greater) {
      best = candidate;
      have_best = true;
    }
  }

  void run(const Colours& colours) {
    const int k = count_classes(colours);
    if (static_cast<std::size_t>(k) == table.size()) {
      leaf(colours);
      return;
    }
    // First colour class with more than one member.
    std::vector<int> counts(k, 0);
    for (int c : colours) ++counts[c];
    int target = 0;
    while (counts[target] == 1) ++target;
    for (Element v = 0; v < table.size(); ++v) {
      if (colours[v] != target) continue;
      Colours split(colours.size());
      for (std::size_t x = 0; x < colours.size(); ++x) split[x] = 2 * colours[x] + 1;
      split[v] = 2 * target;
      run(refine(table, rank(split)));
    }
  }
};

}  // namespace

std::vector<int> refined_colours(const AlgebraTable& t) { return refine(t, initial_colours(t)); }

AlgebraTable canonical_form_unchecked(const AlgebraTable& t) {
  Search search{t, {}, false, {}};
  search.run(refined_colours(t));
  return AlgebraTable(t.size(), std::move(search.best));
}

AlgebraTable canonical_form(const AlgebraTable& t) {
  require_l_algebra(t);
  return canonical_form_unchecked(t);
}

bool isomorphic(const AlgebraTable& a, const AlgebraTable& b) {
  if (a.size() != b.size()) {
    require_l_algebra(a);
    require_l_algebra(b);
    return false;
  }
  return canonical_form(a) == canonical_form(b);
}

}  // namespace lalg
