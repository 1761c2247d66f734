#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hyperboot {

/// Outcome of one scripted reproduction check.
struct ReproResult {
    std::string id;
    bool passed = false;
    std::vector<std::string> lines;
};

/// Published ids, in criterion order.
const std::vector<std::string>& repro_ids();

/// Runs the check named `id`; throws std::invalid_argument for unknown ids.
ReproResult run_repro(const std::string& id, std::size_t workers = 1);

/// Largest running time seen over the seeded sparse path2 starts, frozen.
inline constexpr std::size_t kSparsePath2TauCap = 2;

struct OracleCheckReport {
    std::size_t compared = 0;
    std::size_t skipped = 0;  // oracle over budget
    std::vector<std::string> mismatches;
};

/// Compares frontier against oracle_frontier on `instances` seeded random
/// hosts per built-in pattern (edge, path2, star3, triangle) with k <= n <= n_max.
OracleCheckReport oracle_check(std::size_t k, std::size_t n_max, std::size_t instances, std::uint64_t seed,
                               std::size_t workers = 1);

/// Maximum number of pairwise disjoint sets by trying every subfamily.
std::size_t brute_force_packing(const std::vector<std::vector<int>>& sets);

}  // namespace hyperboot
