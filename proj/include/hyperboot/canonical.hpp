#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hyperboot/hypergraph.hpp"

namespace hyperboot {

inline constexpr std::size_t kCanonicalMaxVertices = 10;

/// Isomorphism-invariant code: equal codes iff the hypergraphs are isomorphic.
///
/// Vertices are split into classes by iterated colour refinement (degree,
/// then the multiset of colours seen through each incident edge); the code
/// is the minimum sorted edge-rank list over every relabeling that respects
/// the class order. Throws BudgetExceeded for n > kCanonicalMaxVertices.
std::string canonical_code(const Hypergraph& h);

/// Stable colour classes from the refinement above, one entry per vertex.
/// Colours are ranks of isomorphism-invariant signatures.
std::vector<std::size_t> refined_colours(const Hypergraph& h);

/// Brute-force isomorphism test over all n! vertex permutations. Test oracle.
bool isomorphic_by_permutation(const Hypergraph& a, const Hypergraph& b);

}  // namespace hyperboot
