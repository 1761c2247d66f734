#include "hyperboot/process.hpp"

#include <stdexcept>

namespace hyperboot {

Trace::Trace(std::string pattern_id, Hypergraph initial) : pattern_id_(std::move(pattern_id)), last_(initial) {
    snapshots_.emplace(0, std::move(initial));
}

void Trace::append(StepRecord rec, const Hypergraph& after) {
    if (terminated_) throw std::logic_error("cannot extend a terminated trace");
    if (rec.added.empty()) throw std::invalid_argument("trace steps must add at least one edge");
    if (after.edge_count() != last_.edge_count() + rec.added.size())
        throw std::invalid_argument("state after a step must be the previous state plus the added edges");
    for (const KSet& e : rec.added)
        if (last_.contains(e) || !after.contains(e)) throw std::invalid_argument("added edge " + e.to_string() + " inconsistent with states");
    rec.index = steps_.size() + 1;
    steps_.push_back(std::move(rec));
    last_ = after;
    if (steps_.size() % kSnapshotInterval == 0) snapshots_.emplace(steps_.size(), after);
}

Hypergraph Trace::state_at(std::size_t m) const {
    if (m >= steps_.size()) return last_;
    auto it = snapshots_.upper_bound(m);
    --it;
    Hypergraph h = it->second;
    std::vector<KSet> delta;
    for (std::size_t i = it->first; i < m; ++i)
        delta.insert(delta.end(), steps_[i].added.begin(), steps_[i].added.end());
    return delta.empty() ? h : h.with_edges(delta);
}

std::pair<Hypergraph, StepRecord> step(const ExtensionPattern& p, const Hypergraph& h, std::size_t workers,
                                       std::size_t index) {
    Frontier fr = frontier(p, h, workers);
    StepRecord rec;
    rec.index = index;
    if (fr.empty()) return {h, std::move(rec)};
    Hypergraph next = h.with_edges(fr.new_edges);
    rec.added = std::move(fr.new_edges);
    rec.witnesses = std::move(fr.witnesses);
    return {std::move(next), std::move(rec)};
}

Trace run(const ExtensionPattern& p, const Hypergraph& h0, RunOptions opts) {
    if (p.k() != h0.k()) throw std::invalid_argument("pattern and host uniformity differ");
    const std::size_t max_steps = opts.max_steps == 0 ? binomial(h0.n(), h0.k()) : opts.max_steps;
    Trace tr(p.name(), h0);
    Hypergraph current = h0;
    while (true) {
        Frontier fr = frontier(p, current, opts.workers);
        if (fr.empty()) {
            tr.mark_fixed_point();
            break;
        }
        if (tr.steps().size() >= max_steps) break;
        Hypergraph next = current.with_edges(fr.new_edges);
        StepRecord rec;
        rec.added = std::move(fr.new_edges);
        rec.witnesses = std::move(fr.witnesses);
        tr.append(std::move(rec), next);
        current = std::move(next);
    }
    return tr;
}

std::size_t running_time(const Trace& tr) {
    if (!tr.terminated()) throw std::logic_error("trace did not reach a fixed point");
    return *tr.tau();
}

std::size_t tau_of(const ExtensionPattern& p, const Hypergraph& h0, std::size_t workers) {
    return running_time(run(p, h0, {0, workers}));
}

}  // namespace hyperboot
