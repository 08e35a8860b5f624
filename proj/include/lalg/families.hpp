#ifndef LALG_FAMILIES_HPP
#define LALG_FAMILIES_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "json.hpp"
#include "lalg/algebra.hpp"
#include "lalg/products.hpp"

namespace lalg {

/// The chain x_0 > ... > x_{n-1} with x_i·x_j = x_{max(j-i, 0)}.
AlgebraTable make_A(std::size_t n);
/// The chain with x_i·x_j = 1 for i >= j and x_j otherwise.
AlgebraTable make_LH(std::size_t n);

// Worked examples used throughout the tests and the CLI.
AlgebraTable four_element_ckl();   // 1 > y, 1 > x > z
AlgebraTable seven_element_ckl();  // 1, x1..x6
/// X = {1, x, y} and Y = {1, u} with ρ_u the constant map to 1.
ActionMap two_by_three_action();

/// ρ^(k) of A_2 on a linear Hilbert algebra: ρ_0 sends x_i to 1 for i <= k
/// and fixes the rest.
ActionMap rho_k_action(std::size_t n, std::size_t k);

/// Elements of a linear algebra listed from the top, so that out[i] = x_i.
std::vector<Element> chain_order(const AlgebraTable& table);

struct Tail {
  Element z;
  ElementSet up;
};

struct TailPlusWitness {
  ElementSet y;
  ElementSet y0;
  Element z0;
};

struct TailReport {
  std::vector<Tail> tails;
  bool has_tail = false;
  // Clause (3) as written: X∖Y is linear.
  bool is_tail_plus = false;
  std::optional<TailPlusWitness> witness;
  // Clause (3) read as X∖Y₀ linear.
  bool is_tail_plus_alt = false;
  std::optional<TailPlusWitness> witness_alt;

  bool readings_differ() const { return is_tail_plus != is_tail_plus_alt; }
  nlohmann::json to_json() const;
};

/// Tails, and the tail⁺ verdict under both readings. In a CKL algebra every
/// tail must be an ideal; a tail that is not throws Falsified. The
/// subalgebra search throws TooLarge above 20 elements when no tail exists.
TailReport tail_analysis(const AlgebraTable& table);

/// Connected components of the Hasse diagram restricted to X∖{1}.
std::vector<ElementSet> hasse_components(const AlgebraTable& table);

struct GlivenkoCheck {
  bool applicable = false;  // bounded CKL with n >= 2
  bool subalgebra = false;
  bool ideals_match = false;
  nlohmann::json witness;

  bool holds() const { return !applicable || (subalgebra && ideals_match); }
};

/// For a bounded CKL algebra with minimum 0: X∖{0} is a subalgebra whose
/// ideals are the ideals of X avoiding 0, plus X∖{0}.
GlivenkoCheck glivenko_check(const AlgebraTable& table);

}  // namespace lalg

#endif  // LALG_FAMILIES_HPP
