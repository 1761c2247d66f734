#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperboot/embedding.hpp"
#include "hyperboot/extension.hpp"
#include "hyperboot/hypergraph.hpp"
#include "hyperboot/process.hpp"

namespace hyperboot {

/// A labeled graph on host vertices: sorted vertex list and sorted pairs.
struct CenterGraph {
    std::vector<VertexId> vertices;
    std::vector<KSet> pairs;

    friend bool operator==(const CenterGraph&, const CenterGraph&) = default;
    friend auto operator<=>(const CenterGraph&, const CenterGraph&) = default;
};

/// Center of a copy: the images of V(G) and E(G) under its witness.
struct Center {
    CenterGraph graph;
    CopyWitness source;
};

Center center_of(const ExtensionPattern& p, const CopyWitness& w);

/// Centers of the copies in one host, and the union of their pairs.
///
/// pair_set is always exact. centers may be truncated by the witness budget,
/// in which case complete is false.
struct CenterFamily {
    std::size_t step = 0;
    std::vector<Center> centers;  // sorted by graph, one per distinct graph
    std::vector<KSet> pair_set;   // ascending
    bool complete = true;
};

inline constexpr std::uint64_t kDefaultWitnessBudget = 1'000'000;

/// Pairs that are the image of some G-edge in some copy, ascending.
std::vector<KSet> center_pair_set(const ExtensionPattern& p, const Hypergraph& h, SearchBudget budget = {});

CenterFamily center_family(const ExtensionPattern& p, const Hypergraph& h,
                           std::uint64_t witness_budget = kDefaultWitnessBudget, std::size_t step = 0);

/// Links larger than this are refused by d_match for k >= 5.
inline constexpr std::size_t kDMatchMaxLink = 400;

/// Largest number of pairwise disjoint (k-2)-sets u with pair ∪ u in H.
/// Throws BudgetExceeded for k >= 5 when the link exceeds kDMatchMaxLink.
std::size_t d_match(const Hypergraph& h, const KSet& pair);

enum class StepClass { Real, Fake, Unknown };
std::string to_string(StepClass c);

/// E(C(H_m)) for m = 0..steps; a trailing entry is appended for every step.
/// An entry is empty and flagged in `unknown` when its search ran out of budget.
struct PairSetHistory {
    std::vector<std::vector<KSet>> pair_sets;
    std::vector<bool> unknown;
};
PairSetHistory pair_set_history(const Trace& tr, const ExtensionPattern& p, SearchBudget budget = {});

/// Classification of steps 1..steps(); entry m-1 belongs to step m.
std::vector<StepClass> classify_steps(const Trace& tr, const ExtensionPattern& p, SearchBudget budget = {});
std::vector<StepClass> classify_steps(const PairSetHistory& hist);

struct EssentialRecord {
    std::size_t m = 0;
    KSet pair;
    CopyWitness copy;
    std::size_t dmatch_at_selection = 0;
};

/// One record per real step. The copy is the least witness in H_m having a
/// pair outside E(C(H_{m-1})); the pair minimizes d_match in H_{m-1} over its
/// center pairs, ties to the smaller pair.
std::vector<EssentialRecord> essential_pairs(const Trace& tr, const ExtensionPattern& p, SearchBudget budget = {});
std::vector<EssentialRecord> essential_pairs(const Trace& tr, const ExtensionPattern& p, const PairSetHistory& hist,
                                             SearchBudget budget = {});

/// Vertices with at least c distinct partners in the pair set, ascending.
std::vector<VertexId> good_vertices(const std::vector<KSet>& pair_set, std::size_t c);
std::vector<VertexId> good_vertices(const CenterFamily& fam, std::size_t c);

/// C with x replaced by y. Throws std::invalid_argument unless x ∈ C and y ∉ C.
CenterGraph replace_vertex(const CenterGraph& c, VertexId x, VertexId y);

/// Whether some listed center equals c as a labeled graph. Exact only for a
/// complete family; see center_realizable for a direct test.
bool center_in_family(const CenterGraph& c, const CenterFamily& fam);

/// Whether some copy in h has center exactly c.
bool center_realizable(const ExtensionPattern& p, const Hypergraph& h, const CenterGraph& c, SearchBudget budget = {});

struct DiagnosticsConfig {
    std::size_t ell = 4;
    std::size_t c = 6;
    std::size_t s = 8;
    std::size_t gamma2 = 10;
    std::size_t gamma1 = 12;
    std::size_t gamma = 16;
    /// Minimum host size for the degree and window checks; 0 means 3|V(F)|.
    std::size_t n0 = 0;

    /// Throws std::invalid_argument unless 0 < ell < c < s < gamma2 < gamma1 < gamma.
    void validate() const;
};

/// Reads `key = value` lines ('#' starts a comment). Unknown keys and bad
/// numbers throw ParseError; the result is validated.
DiagnosticsConfig parse_config(const std::string& text);
DiagnosticsConfig load_config(const std::string& path);

enum class CheckStatus { Pass, Fail, NotApplicable, Informational };
std::string to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
    std::string counterexample;
};

struct ObservationReport {
    std::size_t n = 0;
    std::size_t tau = 0;
    std::vector<StepClass> classes;
    std::vector<EssentialRecord> essential;
    std::vector<CheckResult> checks;

    /// No check failed.
    bool ok() const;
    const CheckResult* find(const std::string& name) const;
};

struct ObservationOptions {
    std::size_t samples = 16;
    std::uint64_t seed = 1;
    /// Copies of H_0 sampled for the degree check.
    std::size_t initial_copies = 1000;
    SearchBudget budget{};
};

/// Checks on a terminated trace:
///  degree   - for every recorded witness at step m (and copies of H_0), random
///             (k-2)-sets w avoiding the copy give u w v in H_{m+1} per center pair uv
///  window   - for 3 <= m <= tau one of m-2, m-1, m is real
///  twice    - no pair is essential at more than two steps
///  c3-bound - at most c^3 essential pairs per vertex (informational)
/// degree and window need n >= 3 |V(F)| and are not applicable below it.
/// Throws std::logic_error when the trace is not terminated.
ObservationReport check_observations(const Trace& tr, const ExtensionPattern& p, const DiagnosticsConfig& cfg,
                                     const ObservationOptions& opts = {});

/// Human-readable report followed by one JSON line per check.
std::string format_report(const ObservationReport& r);

}  // namespace hyperboot
