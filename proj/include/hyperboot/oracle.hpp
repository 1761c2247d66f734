#pragma once

#include <cstdint>
#include <vector>

#include "hyperboot/hypergraph.hpp"

namespace hyperboot {

// Brute-force copy counting for arbitrary patterns without isolated vertices.
// A copy is an edge subset of the host whose spanned subhypergraph is
// isomorphic to the pattern. Nothing here relies on the extension structure,
// so it serves as the independent reference for the frontier search.

inline constexpr std::uint64_t kOracleSubsetBudget = 10'000'000;

/// True iff the two edge lists span isomorphic hypergraphs.
bool spans_isomorphic(const std::vector<KSet>& a, const std::vector<KSet>& b);

/// c(pattern, host). Throws BudgetExceeded when C(|E(host)|, |E(pattern)|) > budget.
std::uint64_t count_copies_oracle(const Hypergraph& pattern, const Hypergraph& host,
                                  std::uint64_t budget = kOracleSubsetBudget);

/// c(pattern, host ∪ e) - c(pattern, host): the copies of host ∪ {e} that use e.
/// Requires e absent from host.
std::uint64_t count_copies_through(const Hypergraph& pattern, const Hypergraph& host, const KSet& e,
                                   std::uint64_t budget = kOracleSubsetBudget);

/// All copies as sorted edge subsets, in lexicographic order.
std::vector<std::vector<KSet>> list_copies_oracle(const Hypergraph& pattern, const Hypergraph& host,
                                                  std::uint64_t budget = kOracleSubsetBudget);

/// Absent k-sets e with c(pattern, host ∪ e) > c(pattern, host), ascending.
std::vector<KSet> oracle_frontier(const Hypergraph& pattern, const Hypergraph& host,
                                  std::uint64_t budget = kOracleSubsetBudget);

}  // namespace hyperboot
