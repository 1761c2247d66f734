#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperboot/embedding.hpp"
#include "hyperboot/extension.hpp"
#include "hyperboot/hypergraph.hpp"

namespace hyperboot {

/// One synchronous update H_{m-1} -> H_m.
struct StepRecord {
    std::size_t index = 0;           // m >= 1
    std::vector<KSet> added;         // ascending
    std::vector<CopyWitness> witnesses;  // witnesses[i] uses added[i]

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// H_0 ⊆ H_1 ⊆ ... with per-step deltas and a full snapshot every
/// kSnapshotInterval steps, so any H_m is rebuilt from at most that many deltas.
class Trace {
public:
    static constexpr std::size_t kSnapshotInterval = 8;

    Trace(std::string pattern_id, Hypergraph initial);

    const std::string& pattern_id() const { return pattern_id_; }
    const Hypergraph& initial() const { return snapshots_.at(0); }
    const std::vector<StepRecord>& steps() const { return steps_; }
    std::size_t n() const { return initial().n(); }
    std::size_t k() const { return initial().k(); }

    /// Appends a nonempty step; `after` must equal the previous state plus rec.added.
    void append(StepRecord rec, const Hypergraph& after);
    /// Records that the last state has an empty frontier.
    void mark_fixed_point() { terminated_ = true; }

    bool terminated() const { return terminated_; }
    /// Running time when the trace reached its fixed point.
    std::optional<std::size_t> tau() const {
        return terminated_ ? std::optional<std::size_t>(steps_.size()) : std::nullopt;
    }

    /// H_m for 0 <= m <= steps().size(); larger m gives the last state.
    Hypergraph state_at(std::size_t m) const;
    const Hypergraph& final_state() const { return last_; }

private:
    std::string pattern_id_;
    std::vector<StepRecord> steps_;
    std::map<std::size_t, Hypergraph> snapshots_;
    Hypergraph last_;
    bool terminated_ = false;
};

/// H ∪ frontier(p, H) and the record (index set to `index`).
std::pair<Hypergraph, StepRecord> step(const ExtensionPattern& p, const Hypergraph& h, std::size_t workers = 1,
                                       std::size_t index = 1);

struct RunOptions {
    std::size_t max_steps = 0;  // 0: C(n, k)
    std::size_t workers = 1;
};

/// Iterates the process until the frontier is empty or max_steps nonempty
/// steps were taken with edges still to add. The returned trace is marked
/// terminated only in the first case.
Trace run(const ExtensionPattern& p, const Hypergraph& h0, RunOptions opts = {});

/// tau of a terminated trace; throws std::logic_error otherwise.
std::size_t running_time(const Trace& tr);

/// Convenience: tau of the process from h0 (throws if max_steps is hit).
std::size_t tau_of(const ExtensionPattern& p, const Hypergraph& h0, std::size_t workers = 1);

}  // namespace hyperboot
