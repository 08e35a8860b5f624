#ifndef LALG_ALGEBRA_HPP
#define LALG_ALGEBRA_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lalg/element_set.hpp"
#include "lalg/errors.hpp"

namespace lalg {

/// A finite magma given by its multiplication table, with the logical unit
/// pinned at index 0. Construction only checks shape and ranges; whether the
/// table is an L-algebra is decided by validate().
class AlgebraTable {
public:
  AlgebraTable() : AlgebraTable(1, {0}) {}
  AlgebraTable(std::size_t n, std::vector<Element> entries, std::vector<std::string> names = {});

  static AlgebraTable from_rows(const std::vector<std::vector<int>>& rows,
                                std::vector<std::string> names = {});

  std::size_t size() const { return n_; }
  Element dot(Element x, Element y) const { return entries_[x * n_ + y]; }
  std::span<const Element> row(Element x) const { return {entries_.data() + x * n_, n_}; }
  const std::vector<Element>& entries() const { return entries_; }
  const std::vector<std::string>& names() const { return names_; }
  std::string name(Element x) const;

  void check_index(Element x) const {
    if (x >= n_) throw IndexOutOfRange("element index " + std::to_string(x) + " out of range");
  }

  // Tables compare by their entries only; display names are ignored.
  bool operator==(const AlgebraTable& other) const {
    return n_ == other.n_ && entries_ == other.entries_;
  }

private:
  std::size_t n_;
  std::vector<Element> entries_;
  std::vector<std::string> names_;
};

enum class Identity {
  unit_left,     // 1·x = x
  unit_right,    // x·1 = 1
  self,          // x·x = 1
  cycloid,       // (x·y)·(x·z) = (y·x)·(y·z)
  antisymmetry,  // x·y = y·x = 1 implies x = y
  kl,            // x·(y·x) = 1
  ckl,           // x·(y·z) = y·(x·z)
  hilbert,       // x·(y·z) = (x·y)·(x·z)
  linear,        // x·y = 1 or y·x = 1
  bounded,       // a single minimal element
  simple,        // exactly the ideals {1} and X, with |X| >= 2
};

std::string_view to_string(Identity id);

struct Witness {
  Identity identity;
  std::vector<Element> tuple;
};

/// True when `witness.tuple`, evaluated against `table`, violates the named
/// identity. Used to re-check every reported witness.
bool witness_violates(const AlgebraTable& table, const Witness& witness);

struct ClassificationReport {
  bool is_l = false;
  bool is_kl = false;
  bool is_ckl = false;
  bool is_hilbert = false;
  bool is_linear = false;
  bool is_bounded = false;
  bool is_simple = false;
  // One witness per false flag, keyed by the flag it refutes.
  std::vector<std::pair<std::string, Witness>> witnesses;

  const Witness* witness_for(std::string_view flag) const;
};

ClassificationReport validate(const AlgebraTable& table);

// Cheap individual predicates, used by the enumerator and the sweeps.
std::optional<Witness> l_algebra_violation(const AlgebraTable& table);
bool is_l_algebra(const AlgebraTable& table);
bool is_kl(const AlgebraTable& table);
bool is_ckl(const AlgebraTable& table);
bool is_hilbert(const AlgebraTable& table);
bool is_linear(const AlgebraTable& table);

void require_l_algebra(const AlgebraTable& table);

struct OrderStructure {
  std::size_t n = 0;
  std::vector<std::vector<bool>> leq;
  // Covering pairs (upper, lower).
  std::vector<std::pair<Element, Element>> hasse_edges;
  std::vector<Element> minimal_elements;
  std::vector<Element> invariant_elements;
  std::vector<Element> prime_elements;
};

OrderStructure order_structure(const AlgebraTable& table);

inline bool leq(const AlgebraTable& table, Element x, Element y) { return table.dot(x, y) == 0; }

ElementSet downset(const AlgebraTable& table, Element x);
ElementSet upset(const AlgebraTable& table, Element x);

bool is_invariant_element(const AlgebraTable& table, Element x);
bool is_prime_element(const AlgebraTable& table, Element x);
std::vector<Element> minimal_elements(const AlgebraTable& table);
bool is_chain(const AlgebraTable& table, ElementSet subset);
bool is_subalgebra(const AlgebraTable& table, ElementSet subset);

/// Restriction of the operation to a subalgebra, with elements renumbered in
/// increasing index order (index 0 stays the unit).
AlgebraTable subalgebra(const AlgebraTable& table, ElementSet subset);

struct Morphism {
  std::size_t source_size = 0;
  std::size_t target_size = 0;
  std::vector<Element> map;

  Element operator()(Element x) const { return map[x]; }
  bool operator==(const Morphism&) const = default;
  auto operator<=>(const Morphism& o) const { return map <=> o.map; }
};

bool is_morphism(const AlgebraTable& source, const AlgebraTable& target,
                 std::span<const Element> map);
ElementSet kernel(const Morphism& f);

/// All unital, operation-preserving self-maps, in lexicographic map order.
std::vector<Morphism> endomorphisms(const AlgebraTable& table);

}  // namespace lalg

#endif  // LALG_ALGEBRA_HPP
