#ifndef LALG_PRODUCTS_HPP
#define LALG_PRODUCTS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lalg/algebra.hpp"
#include "lalg/ideals.hpp"

namespace lalg {

enum class OperationClass { l = 0, kl = 1, ckl = 2, hilbert = 3 };

std::string_view to_string(OperationClass c);
OperationClass operation_class_from_string(std::string_view s);

/// Y operating on X: rho[u][x] = ρ_u(x).
struct ActionMap {
  AlgebraTable base;   // X
  AlgebraTable actor;  // Y
  std::vector<std::vector<Element>> rho;
  OperationClass cls = OperationClass::l;

  Element apply(Element u, Element x) const { return rho[u][x]; }
  bool is_trivial() const;
};

struct OperationCheck {
  bool valid = false;
  OperationClass cls = OperationClass::l;  // strongest class, when valid
  std::string failure;
  std::vector<Element> witness;
};

OperationCheck check_operation(const AlgebraTable& base, const AlgebraTable& actor,
                               const std::vector<std::vector<Element>>& rho);

/// Builds an action with its class filled in. Throws ActionInvalid.
ActionMap make_action(AlgebraTable base, AlgebraTable actor, std::vector<std::vector<Element>> rho);
bool is_operation(const ActionMap& action);

ActionMap trivial_action(const AlgebraTable& base, const AlgebraTable& actor);
ActionMap self_action(const AlgebraTable& table);  // ρ_u(x) = u·x

/// Every operation of Y on X of at least the given class, sorted
/// lexicographically by rho. Throws TooLarge past the size limit.
std::vector<ActionMap> enumerate_operations(const AlgebraTable& base, const AlgebraTable& actor,
                                            OperationClass min_class = OperationClass::l,
                                            std::size_t limit = 6);

enum class ProductKind { semidirect, symmetric };

struct ProductAlgebra {
  ProductKind kind = ProductKind::semidirect;
  ActionMap action;
  std::vector<std::pair<Element, Element>> carrier;
  AlgebraTable algebra;
  std::vector<int> pair_index;  // x * |Y| + u -> carrier position, -1 if absent

  Element index(Element x, Element u) const;
  bool contains(Element x, Element u) const {
    return pair_index[x * action.actor.size() + u] >= 0;
  }
  /// I ⋊ U as a subset of the carrier.
  ElementSet embed(ElementSet i, ElementSet u) const;
};

/// X ⋊ Y over all pairs, row-major. Throws ActionInvalid; a table that
/// fails the L-algebra axioms or the KL prediction throws Falsified.
ProductAlgebra semidirect(const ActionMap& action);
/// The fixed pairs {(x,u) | ρ_u(x) = x}. Requires a CKL-class action.
ProductAlgebra symmetric_semidirect(const ActionMap& action);

struct IdealSplit {
  ElementSet kx;
  ElementSet ky;
};

/// K_X and K_Y, checked to be ideals with K = K_X ⋊ K_Y. Throws NotAnIdeal.
IdealSplit project_ideal(const ProductAlgebra& product, ElementSet k);

struct PairConditions {
  bool i1 = true;  // ρ_v(I) ⊆ I
  bool i2 = true;
  std::vector<Element> i1_witness;  // (v, x)
  std::vector<Element> i2_witness;  // (u, x, y)
  bool product_is_ideal = false;

  bool holds() const { return i1 && i2; }
};

/// (I'1) and (I'2) for I ⊆ X, U ⊆ Y; the verdict is compared with a direct
/// ideal test of I ⋊ U and a disagreement throws Falsified.
PairConditions check_pair_conditions(const ProductAlgebra& product, ElementSet i, ElementSet u);
PairConditions check_pair_conditions(const ActionMap& action, ElementSet i, ElementSet u);

bool is_rho_stable(const ActionMap& action, ElementSet i);

/// Everything the ideal-theoretic checks share for one action.
struct ProductAnalysis {
  ActionMap action;
  ProductAlgebra product;
  IdealLattice ideals_x;
  IdealLattice ideals_y;
  IdealLattice ideals_product;

  explicit ProductAnalysis(const ActionMap& a);
};

std::vector<ElementSet> rho_ideals(const ProductAnalysis& analysis);
std::vector<ElementSet> rho_ideals(const ActionMap& action);
bool is_rho_prime(const ProductAnalysis& analysis, ElementSet i);
std::vector<ElementSet> rho_spectrum(const ProductAnalysis& analysis);

/// {u | ρ_u(x) ≡ x (mod I) for every x}. Throws NotRhoIdeal. The set need
/// not be an ideal of Y.
ElementSet ker_rho_mod(const ActionMap& action, ElementSet i);

struct ProductAnalysis;
/// The largest ideal V of Y inside ker ρ^I; I ⋊ V is checked to be an
/// ideal of the product. Equals ker ρ^I exactly when the kernel is an ideal.
ElementSet rho_kernel_ideal(const ProductAnalysis& analysis, ElementSet i);

struct SpecDecomposition {
  std::size_t spec_product = 0;
  std::size_t rho_spec_x = 0;
  std::size_t spec_y = 0;
  bool shapes = true;
  bool bijection = true;
  bool open_map = true;
  // ρ-primes P whose kernel ker ρ^P is not an ideal of Y; the shape
  // P ⋊ V is then taken with V the largest ideal inside the kernel.
  std::size_t kernel_not_ideal = 0;
  nlohmann::json witness;

  bool holds() const { return shapes && bijection && open_map; }
};

SpecDecomposition spec_decomposition(const ProductAnalysis& analysis);

struct IdealCounts {
  std::size_t product = 0;
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t sum_formula = 0;
  bool direct = false;
  bool bound = true;           // product <= x * y
  bool equality_iff_direct = true;
  bool sum_matches = true;

  bool holds() const { return bound && equality_iff_direct && sum_matches; }
};

IdealCounts ideal_count_formulas(const ProductAnalysis& analysis);

struct SymmetricBijection {
  std::size_t symmetric_ideals = 0;
  std::size_t semidirect_ideals = 0;
  bool holds = true;
  nlohmann::json witness;
};

SymmetricBijection symmetric_ideal_bijection(const ActionMap& action);

/// The induced map ρ^I : Y → End(X/I), when ρ_u respects congruence mod I
/// for every u.
std::optional<std::vector<std::vector<Element>>> induced_on_quotient(const ActionMap& action,
                                                                     const QuotientResult& q);

struct QuotientEquivalence {
  bool ideal = false;            // I ⋊ U is an ideal
  bool quotient_product = false; // ρ̃ on Y/U with matching quotient
  bool trivial_on_u = false;     // ρ^I is the identity on U
  bool unit_times_u = false;     // {[1]} × U is an ideal of X/I ⋊ Y
  bool pair_conditions = false;

  bool agree() const {
    return ideal == quotient_product && ideal == trivial_on_u && ideal == unit_times_u &&
           ideal == pair_conditions;
  }
};

QuotientEquivalence quotient_equivalence(const ProductAnalysis& analysis, ElementSet i, ElementSet u);

/// Per-instance structural laws of a semidirect product: downsets and the
/// factorisation (x,1)(1,u), generated ideals, product bounds, the
/// (X ⋊ {1})·(I ⋊ U) formula and ρ-ideal lattice closure. Returns the first
/// failure, or an empty object.
nlohmann::json product_law_violations(const ProductAnalysis& analysis);

nlohmann::json to_json(const ActionMap& action);
ActionMap action_from_json(const nlohmann::json& j);
/// Base table, actor table, then |Y| lines of |X| values.
ActionMap parse_action(const std::string& text);
ActionMap read_action_file(const std::string& path);

}  // namespace lalg

#endif  // LALG_PRODUCTS_HPP
