#include "lalg/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <thread>

#include "lalg/canonical.hpp"
#include "lalg/ideals.hpp"

namespace lalg {

std::string_view to_string(ClassFilter c) {
  switch (c) {
    case ClassFilter::l: return "l";
    case ClassFilter::kl: return "kl";
    case ClassFilter::ckl: return "ckl";
    case ClassFilter::hilbert: return "hilbert";
    case ClassFilter::linear: return "linear";
  }
  return "?";
}

ClassFilter class_filter_from_string(std::string_view s) {
  for (auto c : {ClassFilter::l, ClassFilter::kl, ClassFilter::ckl, ClassFilter::hilbert, ClassFilter::linear}) {
    if (to_string(c) == s) return c;
  }
  throw MalformedTable("unknown class filter '" + std::string(s) + "'");
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::uint8_t unset = 0xff;

struct Shared {
  std::uint64_t node_budget;
  Clock::time_point deadline;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
};

class Search {
public:
  Search(const EnumerationTask& task, Shared& shared) : task_(task), n_(task.size), shared_(shared) {
    cells_.assign(n_ * n_, unset);
    for (std::size_t j = 0; j < n_; ++j) {
      at(0, j) = static_cast<std::uint8_t>(j);
      at(j, 0) = 0;
      at(j, j) = 0;
    }
    // Cells grouped by max(i, j), so the table on {0..m} is complete once m
    // is done.
    for (std::size_t m = 2; m < n_; ++m) {
      for (std::size_t i = 1; i < m; ++i) {
        order_.push_back({i, m});
        order_.push_back({m, i});
      }
    }
    const bool linear = task.class_filter == ClassFilter::linear;
    for (auto [i, j] : order_) {
      std::vector<std::uint8_t> dom;
      if (i > j) {
        dom.push_back(0);
        if (!linear) {
          for (std::size_t v = 1; v < n_; ++v) dom.push_back(static_cast<std::uint8_t>(v));
        }
      } else {
        for (std::size_t v = 1; v < n_; ++v) dom.push_back(static_cast<std::uint8_t>(v));
      }
      domains_.push_back(std::move(dom));
    }
  }

  std::size_t free_cells() const { return order_.size(); }
  std::size_t first_domain_size() const { return order_.empty() ? 0 : domains_[0].size(); }

  // Explores the subtrees whose first cell takes a value with index
  // congruent to `part` modulo `parts`.
  void run(std::size_t part, std::size_t parts) {
    if (order_.empty()) {
      leaf();
      return;
    }
    const auto [i, j] = order_[0];
    for (std::size_t v = part; v < domains_[0].size(); v += parts) {
      if (shared_.stop.load(std::memory_order_relaxed)) return;
      at(i, j) = domains_[0][v];
      if (consistent()) descend(1);
    }
    at(i, j) = unset;
  }

  std::set<std::vector<Element>>& found() { return found_; }
  std::size_t labelled() const { return labelled_; }

private:
  std::uint8_t& at(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }
  std::uint8_t get(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }

  bool tick() {
    const auto k = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (k > shared_.node_budget) {
      shared_.stop = true;
      return false;
    }
    if ((k & 0x3ff) == 0 && Clock::now() > shared_.deadline) {
      shared_.stop = true;
      return false;
    }
    return !shared_.stop.load(std::memory_order_relaxed);
  }

  void descend(std::size_t depth) {
    if (!tick()) return;
    if (depth == order_.size()) {
      leaf();
      return;
    }
    const auto [i, j] = order_[depth];
    for (auto v : domains_[depth]) {
      at(i, j) = v;
      if (consistent()) descend(depth + 1);
      if (shared_.stop.load(std::memory_order_relaxed)) break;
    }
    at(i, j) = unset;
  }

  // Every identity instance whose cells are all known holds.
  bool consistent() const {
    const auto n = n_;
    const auto filter = task_.class_filter;
    for (std::size_t x = 1; x < n; ++x) {
      for (std::size_t y = 1; y < n; ++y) {
        if (x == y) continue;
        const auto xy = get(x, y);
        const auto yx = get(y, x);
        if (filter == ClassFilter::kl || filter == ClassFilter::ckl || filter == ClassFilter::hilbert) {
          if (yx != unset) {
            const auto v = get(x, yx);
            if (v != unset && v != 0) return false;
          }
        }
        for (std::size_t z = 1; z < n; ++z) {
          const auto xz = get(x, z);
          const auto yz = get(y, z);
          if (x < y && xy != unset && xz != unset && yx != unset && yz != unset) {
            const auto l = get(xy, xz);
            const auto r = get(yx, yz);
            if (l != unset && r != unset && l != r) return false;
          }
          if (filter == ClassFilter::ckl && x < y && xz != unset && yz != unset) {
            const auto l = get(x, yz);
            const auto r = get(y, xz);
            if (l != unset && r != unset && l != r) return false;
          }
          if (filter == ClassFilter::hilbert && yz != unset && xy != unset && xz != unset) {
            const auto l = get(x, yz);
            const auto r = get(xy, xz);
            if (l != unset && r != unset && l != r) return false;
          }
        }
      }
    }
    return true;
  }

  void leaf() {
    std::vector<Element> entries(cells_.begin(), cells_.end());
    AlgebraTable t(n_, std::move(entries));
    if (!is_l_algebra(t)) return;
    switch (task_.class_filter) {
      case ClassFilter::l: break;
      case ClassFilter::kl:
        if (!is_kl(t)) return;
        break;
      case ClassFilter::ckl:
        if (!is_ckl(t)) return;
        break;
      case ClassFilter::hilbert:
        if (!is_hilbert(t)) return;
        break;
      case ClassFilter::linear:
        if (!is_linear(t)) return;
        break;
    }
    if (task_.require_simple && !is_simple(t)) return;
    ++labelled_;
    found_.insert(canonical_form_unchecked(t).entries());
  }

  const EnumerationTask& task_;
  std::size_t n_;
  Shared& shared_;
  std::vector<std::uint8_t> cells_;
  std::vector<std::pair<std::size_t, std::size_t>> order_;
  std::vector<std::vector<std::uint8_t>> domains_;
  std::set<std::vector<Element>> found_;
  std::size_t labelled_ = 0;
};

}  // namespace

EnumerationResult enumerate(const EnumerationTask& task, const SearchBudget& budget) {
  if (task.size == 0) throw MalformedTable("enumeration size must be at least 1");
  if (task.size > 10) throw TooLarge("enumeration is limited to 10 elements");
  if (budget.nodes == 0 || budget.seconds <= 0) throw MalformedTable("budgets must be positive");
  const auto start = Clock::now();
  Shared shared;
  shared.node_budget = budget.nodes;
  shared.deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget.seconds));

  Search probe(task, shared);
  const std::size_t parts =
      std::max<std::size_t>(1, std::min<std::size_t>(budget.workers, std::max<std::size_t>(1, probe.first_domain_size())));
  std::vector<Search> searches;
  searches.reserve(parts);
  for (std::size_t p = 0; p < parts; ++p) searches.emplace_back(task, shared);
  if (parts == 1) {
    searches[0].run(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t p = 0; p < parts; ++p) threads.emplace_back([&, p] { searches[p].run(p, parts); });
    for (auto& th : threads) th.join();
  }

  std::set<std::vector<Element>> merged;
  EnumerationResult r;
  for (auto& s : searches) {
    merged.insert(s.found().begin(), s.found().end());
    r.labelled += s.labelled();
  }
  for (const auto& e : merged) r.tables.emplace_back(task.size, e);
  std::sort(r.tables.begin(), r.tables.end(),
            [](const AlgebraTable& a, const AlgebraTable& b) { return a.entries() < b.entries(); });
  r.partial = shared.stop.load();
  r.nodes = std::min(shared.nodes.load(), budget.nodes);
  if (task.limit && r.tables.size() > *task.limit) {
    r.tables.resize(*task.limit);
    r.truncated = true;
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

std::vector<AlgebraTable> enumerate_or_throw(const EnumerationTask& task, const SearchBudget& budget) {
  auto r = enumerate(task, budget);
  if (r.partial) {
    throw ResourceBound("enumeration of size " + std::to_string(task.size) + " ran out of budget after " +
                        std::to_string(r.nodes) + " nodes");
  }
  return std::move(r.tables);
}

std::vector<AlgebraTable> enumerate_naive(std::size_t n) {
  if (n == 0) throw MalformedTable("enumeration size must be at least 1");
  if (n > 4) throw TooLarge("the naive enumerator is limited to 4 elements");
  std::vector<std::size_t> free;
  std::vector<Element> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == 0) e[j] = static_cast<Element>(j);
      else if (j != 0 && j != i) free.push_back(i * n + j);
    }
  }
  std::size_t total = 1;
  for (std::size_t k = 0; k < free.size(); ++k) total *= n;
  std::set<std::vector<Element>> seen;
  for (std::size_t code = 0; code < total; ++code) {
    auto c = code;
    for (auto cell : free) {
      e[cell] = static_cast<Element>(c % n);
      c /= n;
    }
    AlgebraTable t(n, e);
    if (!validate(t).is_l) continue;
    seen.insert(canonical_form(t).entries());
  }
  std::vector<AlgebraTable> out;
  for (const auto& s : seen) out.emplace_back(n, s);
  return out;
}

}  // namespace lalg
