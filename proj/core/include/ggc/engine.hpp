#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "ggc/candidate_tree.hpp"
#include "ggc/error.hpp"
#include "ggc/graph.hpp"

namespace ggc {

// Gain of merging clusters i and j:
//   δ = l_ii/d_i + l_jj/d_j − (l_ii + l_jj + 2·l_ij)/(d_i + d_j)
// Nonnegative whenever l_ii, l_jj ≥ 0 and l_ij ≤ 0. The expression is
// symmetric under swapping the (i, j) argument slots — bit-identically so,
// since IEEE addition commutes — but callers still pass canonical i < j
// order so stored values can be erased by exact key.
inline double delta_formula(double l_ii, double l_jj, double l_ij, double d_i, double d_j) {
    if (!(d_i > 0.0) || !(d_j > 0.0)) {
        throw Error(Errc::NonPositiveDegree,
                    "d_i=" + std::to_string(d_i) + ", d_j=" + std::to_string(d_j));
    }
    return l_ii / d_i + l_jj / d_j - (l_ii + l_jj + 2.0 * l_ij) / (d_i + d_j);
}

// Ordered multiset of candidate merges, one entry per alive neighbor pair.
// Insert, erase-by-key, and extremum lookup are all logarithmic. Erase
// requires the exact stored key, which works because every entry's delta is
// reproducible bit-for-bit from the current cluster records until the entry
// is invalidated and removed.
class MergeQueue {
public:
    MergeQueue() = default;
    MergeQueue(MergeQueue&&) noexcept = default;
    MergeQueue& operator=(MergeQueue&&) = delete;

    void insert(const MergeCandidate& c) {
        entries_.insert(c);
        ++ops_;
        ++inserts_;
        if (c.delta < min_insert_delta_) min_insert_delta_ = c.delta;
    }

    void erase(const MergeCandidate& c) {
        if (!entries_.erase(c)) {
            throw Error(Errc::AuditFailure, "queue entry (" + std::to_string(c.i) + ", " + std::to_string(c.j) +
                                                ") missing at erase");
        }
        ++ops_;
    }

    // Max delta, smallest (i, j) among equal deltas.
    MergeCandidate best_max() const {
        if (entries_.empty()) throw Error(Errc::QueueEmpty, "no candidates");
        ++ops_;
        const double top = entries_.max().delta;
        return *entries_.lower_bound(MergeCandidate{top, std::numeric_limits<VertexId>::min(),
                                                    std::numeric_limits<VertexId>::min()});
    }

    // Min delta, smallest (i, j) among equal deltas (ablation path).
    MergeCandidate best_min() const {
        if (entries_.empty()) throw Error(Errc::QueueEmpty, "no candidates");
        ++ops_;
        return entries_.min();
    }

    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    std::int64_t ops() const noexcept { return ops_; }
    std::int64_t inserts() const noexcept { return inserts_; }
    double min_insert_delta() const noexcept { return min_insert_delta_; }

    const CandidateTree& entries() const noexcept { return entries_; }

private:
    CandidateTree entries_;
    mutable std::int64_t ops_ = 0;  // inserts + erases + extremum lookups
    std::int64_t inserts_ = 0;
    double min_insert_delta_ = std::numeric_limits<double>::infinity();
};

struct NeighborEntry {
    VertexId id = -1;
    double l_cross = 0.0;  // y_iᵀ L y_j, strictly negative while stored
};

struct ClusterRecord {
    double l_self = 0.0;  // y_kᵀ L y_k ≥ 0
    double d_mass = 0.0;  // y_kᵀ D y_k > 0
    std::vector<NeighborEntry> neighbors;  // ascending by id
    VertexId head = -1;  // intrusive member list over EngineState::member_next
    VertexId tail = -1;
    std::int32_t size = 0;
    bool alive = false;
};

enum class Selection { MaxDelta, MinDelta };
enum class DisconnectedPolicy { Fallback, Strict };

struct EngineOptions {
    Selection selection = Selection::MaxDelta;
    DisconnectedPolicy disconnected = DisconnectedPolicy::Fallback;
    bool audit = false;  // periodic conservation / objective recomputation
};

struct EngineStats {
    double k1_init = 0.0;            // mean initial neighbors per cluster
    std::int64_t k1_max = 0;         // largest neighbor set ever observed
    std::int64_t merges_executed = 0;
    std::int64_t fallback_merges = 0;
    std::int64_t queue_ops = 0;
    std::int64_t queue_inserts = 0;
    double min_insert_delta = std::numeric_limits<double>::infinity();
    std::int64_t audits = 0;
    double max_objective_dev = 0.0;  // worst relative deviations seen at audits
    double max_degree_dev = 0.0;
    double max_cut_dev = 0.0;
};

struct EngineState {
    const SparseGraph* graph = nullptr;
    std::vector<ClusterRecord> records;      // ids 0..n−1 singletons, merges from n up
    std::vector<VertexId> member_next;       // intrusive list cells, one per vertex
    MergeQueue queue;
    std::int32_t active_count = 0;
    double objective = 0.0;       // running Σ l_self/d_mass, compensated
    double objective_comp = 0.0;  // Kahan carry for the running sum
    VertexId next_id = 0;
    EngineStats stats;
};

struct MergeStep {
    std::int32_t step = 0;  // 1-based
    VertexId i = -1;
    VertexId j = -1;
    VertexId e = -1;
    double delta = 0.0;
    double objective_after = 0.0;
};

using MergeTrace = std::vector<MergeStep>;

struct Partition {
    std::vector<std::int32_t> labels;  // values in [0, c), assigned by first-vertex order
    std::int32_t c = 0;
};

struct RunResult {
    Partition partition;
    MergeTrace trace;
    EngineStats stats;
};

// n singleton clusters straight off the graph: l_self = d_mass = d_i,
// neighbor values −w_ij, one queue entry per edge, objective exactly n.
EngineState init_state(const SparseGraph& graph);

// Extremum of the queue under the given rule. Throws QueueEmpty.
MergeCandidate best_pair(const EngineState& state, Selection selection = Selection::MaxDelta);

// Merges alive neighbors i and j into a fresh cluster id (returned):
// aggregates summed, member lists spliced, both neighbor maps folded
// together, every queue entry touching i or j replaced. Throws DeadCluster /
// NotNeighbors.
VertexId merge(EngineState& state, VertexId i, VertexId j);

// Full greedy loop: n − c merges. When the queue empties early (more than c
// components) the Fallback policy merges the two lowest alive ids at δ = 0 —
// once no neighbor pairs remain every alive cluster is a union of whole
// components, so any cross merge changes the objective by exactly zero and
// the max-δ rule degenerates to the lexicographic tie-break. Strict policy
// throws QueueExhaustedError carrying the partial labels instead.
RunResult run(const SparseGraph& graph, std::int32_t c, const EngineOptions& options = {});

// Direct recomputation of Σ_alive l_self/d_mass, for auditing the running
// objective.
double objective_of_state(const EngineState& state);

// Labels in first-vertex order: cluster containing vertex 0 gets label 0,
// the next cluster encountered walking v = 0, 1, … gets 1, and so on.
std::vector<std::int32_t> labels_of_state(const EngineState& state);

// One merge per line: "step i j e delta objective".
void save_trace(const MergeTrace& trace, std::ostream& out);
void save_trace_file(const MergeTrace& trace, const std::string& path);

}  // namespace ggc
