#pragma once

#include <cstdint>

#include "ggc/engine.hpp"
#include "ggc/graph.hpp"

namespace ggc::oracle {

struct NaiveResult {
    Partition partition;
    MergeTrace trace;
};

// Reference greedy engine: every step recomputes each alive pair's l values
// from explicit member sets and rescans all candidates. Shares no state
// machinery with the fast engine on purpose. Guard: n ≤ 2000 (TooLarge).
NaiveResult naive_run(const SparseGraph& graph, std::int32_t c, const EngineOptions& options = {});

struct ExhaustiveResult {
    Partition partition;
    double ncut_value = 0.0;
};

// Enumerates every partition of the vertices into exactly c nonempty blocks
// (restricted-growth strings) and returns a minimizer of ncut; ties go to
// the lexicographically smallest canonical label vector, which is the first
// one found. Guard: n ≤ 12 (TooLarge).
ExhaustiveResult exhaustive_best_ncut(const SparseGraph& graph, std::int32_t c);

}  // namespace ggc::oracle
