#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "hyperboot/kset.hpp"

namespace hyperboot {

/// Maximum matching size of a simple graph on vertices 0..n-1 (Edmonds).
std::size_t graph_matching_number(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Whether some r of the given sets are pairwise disjoint. Exact; branches on
/// the vertices of a greedy maximal packing, so the cost grows with r.
bool has_disjoint_sets(const std::vector<KSet>& sets, std::size_t r);

/// Largest number of pairwise disjoint sets, or `cap` if that is smaller.
std::size_t packing_number(const std::vector<KSet>& sets, std::size_t cap);

/// Exact maximum number of pairwise disjoint sets by branch and bound on the
/// least covered vertex. Throws BudgetExceeded past `max_nodes` search nodes.
std::size_t max_packing(const std::vector<KSet>& sets, std::uint64_t max_nodes);

}  // namespace hyperboot
