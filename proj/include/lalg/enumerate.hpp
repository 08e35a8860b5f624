#ifndef LALG_ENUMERATE_HPP
#define LALG_ENUMERATE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lalg/algebra.hpp"

namespace lalg {

enum class ClassFilter { l, kl, ckl, hilbert, linear };

std::string_view to_string(ClassFilter c);
ClassFilter class_filter_from_string(std::string_view s);

struct EnumerationTask {
  std::size_t size = 1;
  ClassFilter class_filter = ClassFilter::l;
  bool require_simple = false;
  std::optional<std::size_t> limit;
};

struct SearchBudget {
  std::uint64_t nodes = 1'000'000'000;
  double seconds = 600.0;
  unsigned workers = 1;
};

struct EnumerationResult {
  std::vector<AlgebraTable> tables;  // canonical forms, sorted
  bool partial = false;              // a budget ran out
  bool truncated = false;            // cut to the task's limit
  std::uint64_t nodes = 0;
  std::size_t labelled = 0;          // accepted leaves before deduplication
  double seconds = 0.0;
};

/// Every isomorphism class of the task, once, in canonical-table order.
/// Labellings are restricted to linear extensions of the order (x < y
/// forces index(x) > index(y)), which every class admits. A spent budget
/// sets `partial`; the result is the deterministic-per-subtree subset found.
EnumerationResult enumerate(const EnumerationTask& task, const SearchBudget& budget = {});

/// Same, but a spent budget throws ResourceBound.
std::vector<AlgebraTable> enumerate_or_throw(const EnumerationTask& task, const SearchBudget& budget = {});

/// No pruning: tries every completion of the free cells and filters with
/// validate(). Only for tiny sizes; used as an oracle.
std::vector<AlgebraTable> enumerate_naive(std::size_t n);

}  // namespace lalg

#endif  // LALG_ENUMERATE_HPP
