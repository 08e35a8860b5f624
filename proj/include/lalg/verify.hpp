#ifndef LALG_VERIFY_HPP
#define LALG_VERIFY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lalg/enumerate.hpp"

namespace lalg {

/// One theorem or property checked over a family of instances. `holds` is
/// false only on a falsification; explicit errors such as an undefined
/// congruence are counted in `details` and do not count as passes.
struct CheckResult {
  std::string name;
  bool holds = true;
  std::uint64_t checked = 0;
  nlohmann::json details = nlohmann::json::object();
  nlohmann::json witness;  // first falsification
  double seconds = 0.0;    // wall time, kept out of to_json

  void fail(nlohmann::json w);
  nlohmann::json to_json() const;
};

struct VerifyConfig {
  std::size_t max_n = 0;  // caps every enumerated size when nonzero
  std::size_t product_n = 4;
  std::size_t lattice_n = 5;
  std::size_t linear_n = 6;
  std::size_t ckl_n = 5;
  std::size_t hilbert_n = 5;
  std::size_t family_n = 64;
  std::size_t rho_k_n = 16;
  std::size_t oracle_n = 4;
  std::size_t endomorphism_n = 5;
  std::size_t word_triples = 10000;
  std::size_t word_action_n = 3;
  std::size_t depth = 3;
  std::size_t word_budget = 12;
  std::uint64_t seed = 20240611;
  SearchBudget budget;

  std::size_t cap(std::size_t n) const { return max_n ? std::min(n, max_n) : n; }
};

/// Canonical algebras of every size from 1 to max_n passing the filter.
std::vector<AlgebraTable> algebras_up_to(std::size_t max_n, ClassFilter filter, const SearchBudget& budget);

/// Brute force over all n^n self-maps.
std::vector<std::vector<Element>> endomorphisms_naive(const AlgebraTable& table);

CheckResult verify_worked_examples();
CheckResult verify_families(const VerifyConfig& config);
CheckResult verify_product_theorems(const VerifyConfig& config);
CheckResult verify_ideal_lattices(const VerifyConfig& config);
CheckResult verify_simple_linear_classification(const VerifyConfig& config);
CheckResult verify_tail_plus_theorem(const VerifyConfig& config);
CheckResult verify_ckl_structure(const VerifyConfig& config);
CheckResult hilbert_structure_suite(const VerifyConfig& config);
CheckResult verify_enumeration_oracles(const VerifyConfig& config);
CheckResult verify_word_engine(const VerifyConfig& config);

struct ConjectureReport {
  std::size_t max_n = 0;
  std::size_t complete_up_to = 0;  // largest size searched to the end
  bool partial = false;
  std::vector<std::size_t> simple_ckl;  // per size, from 2
  std::vector<std::size_t> linear;
  std::vector<AlgebraTable> counterexamples;

  nlohmann::json to_json() const;
};

/// Simple CKL algebras per size; every nonlinear one is a counterexample to
/// the linearity conjecture and is returned, not thrown.
ConjectureReport conjecture_search(std::size_t max_n, const SearchBudget& budget);

/// Every check above, in a fixed order, as one JSON document.
nlohmann::json verify_all(const VerifyConfig& config, std::vector<CheckResult>* results = nullptr);

}  // namespace lalg

#endif  // LALG_VERIFY_HPP
