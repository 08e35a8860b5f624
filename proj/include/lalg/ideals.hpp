#ifndef LALG_IDEALS_HPP
#define LALG_IDEALS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "lalg/algebra.hpp"

namespace lalg {

enum class IdealCondition { unit, i1, i2, i3, i4 };

std::string_view to_string(IdealCondition c);

struct IdealCheck {
  bool is_ideal = true;
  std::optional<IdealCondition> violated;
  // (I1): (x, y) with x, x·y in I and y not; (I2)-(I4): (x, y) with x in I.
  std::vector<Element> witness;

  explicit operator bool() const { return is_ideal; }
};

/// Checks (I1)-(I4) and 1 ∈ I directly. On KL tables the verdict is
/// cross-checked against (I1)+(I3), on CKL tables against 1 ∈ I plus (I1);
/// a disagreement throws Falsified.
IdealCheck check_ideal(const AlgebraTable& table, ElementSet subset);
bool is_ideal(const AlgebraTable& table, ElementSet subset);

// The individual conditions, exposed for the reduced characterisations.
std::optional<std::vector<Element>> condition_violation(const AlgebraTable& table, ElementSet subset,
                                                        IdealCondition c);

ElementSet generated_ideal(const AlgebraTable& table, ElementSet seed);
std::vector<ElementSet> principal_ideals(const AlgebraTable& table);

// Two independent enumerations of the ideal set, each sorted by size then
// lexicographically. all_ideals picks one by size.
std::vector<ElementSet> ideals_by_upset_closure(const AlgebraTable& table);
std::vector<ElementSet> ideals_by_search(const AlgebraTable& table);

inline bool congruent_mod(const AlgebraTable& t, ElementSet ideal, Element x, Element y) {
  return ideal.contains(t.dot(x, y)) && ideal.contains(t.dot(y, x));
}

class IdealLattice {
public:
  IdealLattice(AlgebraTable parent, std::vector<ElementSet> ideals);

  const AlgebraTable& parent() const { return parent_; }
  const std::vector<ElementSet>& ideals() const { return ideals_; }
  std::size_t size() const { return ideals_.size(); }
  const ElementSet& operator[](std::size_t i) const { return ideals_[i]; }

  std::optional<std::size_t> find(ElementSet s) const;
  std::size_t index_of(ElementSet s) const;  // throws NotAnIdeal
  std::size_t bottom() const { return 0; }
  std::size_t top() const { return ideals_.size() - 1; }

  std::size_t product(std::size_t i, std::size_t j) const { return product_[i * size() + j]; }
  std::size_t join(std::size_t i, std::size_t j) const { return join_[i * size() + j]; }
  std::size_t meet(std::size_t i, std::size_t j) const;
  bool includes(std::size_t inner, std::size_t outer) const {
    return ideals_[inner].subset_of(ideals_[outer]);
  }
  const ElementSet& principal(Element x) const { return principal_[x]; }

  /// The ideals as an L-algebra under the ideal product: X becomes index 0,
  /// the remaining ideals follow in list order.
  AlgebraTable as_algebra() const;
  std::vector<std::size_t> algebra_labels() const;  // lattice index -> algebra index

  bool is_distributive() const;

private:
  AlgebraTable parent_;
  std::vector<ElementSet> ideals_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<ElementSet> principal_;
  std::vector<std::size_t> product_;
  std::vector<std::size_t> join_;
};

/// Every ideal of an L-algebra. The lattice is checked to be distributive
/// and the ideal product to define an L-algebra with unit X; a failure
/// throws Falsified.
IdealLattice all_ideals(const AlgebraTable& table);

/// {x | <x> ∩ I ⊆ J}, with non-strict inclusion. Checks (I·J) ∩ I ⊆ J and
/// that I·J contains every ideal K with K ∩ I ⊆ J.
ElementSet ideal_product(const IdealLattice& lattice, ElementSet i, ElementSet j);
ElementSet ideal_product_set(const AlgebraTable& table, const std::vector<ElementSet>& principal,
                             ElementSet i, ElementSet j);

bool is_prime_ideal(const IdealLattice& lattice, ElementSet p);
// Meet form: I1 ∩ I2 ⊆ P implies I1 ⊆ P or I2 ⊆ P.
bool is_prime_by_meets(const IdealLattice& lattice, ElementSet p);

struct Spectrum {
  std::vector<ElementSet> primes;
  // basis[i] = indices (into primes) of U_I for the i-th ideal I.
  std::vector<std::vector<std::size_t>> basis;
};

Spectrum spectrum(const IdealLattice& lattice);
Spectrum spectrum(const AlgebraTable& table);

ElementSet ideal_join(const IdealLattice& lattice, ElementSet i, ElementSet j);
/// Checks y ∈ I ∨ J  ⇔  ∃ x ∈ I with x ≡ y (mod J) for every y. Throws
/// CongruenceUndefined if congruence mod J is not a congruence.
bool verify_join_membership(const IdealLattice& lattice, ElementSet i, ElementSet j);

struct QuotientResult {
  AlgebraTable quotient;
  Morphism projection;
  std::vector<ElementSet> classes;
};

/// Quotient by the relation x ~ y ⇔ x·y, y·x ∈ subset, without requiring
/// subset to be an ideal. Returns the failure reason when ~ is not a
/// congruence or the class table is not an L-algebra.
struct TryQuotient {
  std::optional<QuotientResult> result;
  std::string failure;
};
TryQuotient try_quotient(const AlgebraTable& table, ElementSet subset);

/// X/I for an ideal I. Throws NotAnIdeal or CongruenceUndefined.
QuotientResult quotient(const AlgebraTable& table, ElementSet ideal);

std::optional<Witness> simplicity_violation(const AlgebraTable& table);
bool is_simple(const AlgebraTable& table);

nlohmann::json ideal_report(const IdealLattice& lattice);

}  // namespace lalg

#endif  // LALG_IDEALS_HPP
