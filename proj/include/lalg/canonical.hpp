#ifndef LALG_CANONICAL_HPP
#define LALG_CANONICAL_HPP

#include <span>
#include <vector>

#include "lalg/algebra.hpp"

namespace lalg {

/// Relabels `table` so that element x becomes perm[x]. perm must fix 0.
AlgebraTable relabel(const AlgebraTable& table, std::span<const Element> perm);

/// Isomorphism-invariant colouring of the elements: order-theoretic
/// profiles refined by the colours of each element's row and column until
/// stable. Colour 0 is reserved for the unit.
std::vector<int> refined_colours(const AlgebraTable& table);

/// Canonical representative of the isomorphism class. Index 0 stays the
/// unit; the remaining elements are ordered by refined colour and, inside
/// each colour class, every permutation is tried and the lexicographically
/// smallest flattened table wins.
AlgebraTable canonical_form(const AlgebraTable& table);

/// Same as canonical_form but skips the L-algebra precondition check; used
/// by the enumerator on tables it has already validated.
AlgebraTable canonical_form_unchecked(const AlgebraTable& table);

bool isomorphic(const AlgebraTable& a, const AlgebraTable& b);

}  // namespace lalg

#endif  // LALG_CANONICAL_HPP
