#include "ggc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

#include "ggc/error.hpp"
#include "ggc/metrics.hpp"

namespace ggc::oracle {

namespace {

// Everything the greedy rule needs, rebuilt from scratch: per-cluster degree
// mass and self Laplacian value, cross sums per alive canonical pair, and the
// objective. The std::map keeps candidate iteration in lexicographic order.
struct Aggregates {
    std::vector<VertexId> owner;               // vertex → alive cluster id
    std::vector<double> deg;                   // by cluster id
    std::vector<double> l_self;                // by cluster id
    std::map<std::pair<VertexId, VertexId>, double> cross;  // canonical pair → Σ crossing w
    double objective = 0.0;
};

Aggregates compute_aggregates(const SparseGraph& g, const std::vector<std::vector<VertexId>>& members,
                              const std::vector<char>& alive, VertexId id_count) {
    const VertexId n = g.vertex_count();
    Aggregates agg;
    agg.owner.assign(static_cast<std::size_t>(n), -1);
    for (VertexId id = 0; id < id_count; ++id) {
        if (!alive[id]) continue;
        for (VertexId v : members[id]) agg.owner[v] = id;
    }

    agg.deg.assign(static_cast<std::size_t>(id_count), 0.0);
    std::vector<double> internal(static_cast<std::size_t>(id_count), 0.0);
    for (VertexId u = 0; u < n; ++u) {
        const VertexId cu = agg.owner[u];
        agg.deg[cu] += g.degree(u);
        const auto nbrs = g.neighbors(u);
        const auto ws = g.edge_weights(u);
        for (std::size_t q = 0; q < nbrs.size(); ++q) {
            const VertexId v = nbrs[q];
            if (v <= u) continue;  // each edge once
            const VertexId cv = agg.owner[v];
            if (cu == cv) {
                internal[cu] += ws[q];
            } else {
                agg.cross[{std::min(cu, cv), std::max(cu, cv)}] += ws[q];
            }
        }
    }

    agg.l_self.assign(static_cast<std::size_t>(id_count), 0.0);
    for (VertexId id = 0; id < id_count; ++id) {
        if (!alive[id]) continue;
        agg.l_self[id] = agg.deg[id] - 2.0 * internal[id];
        agg.objective += agg.l_self[id] / agg.deg[id];
    }
    return agg;
}

std::vector<std::int32_t> first_vertex_labels(const std::vector<VertexId>& owner, VertexId id_count) {
    std::vector<std::int32_t> remap(static_cast<std::size_t>(id_count), -1);
    std::vector<std::int32_t> labels(owner.size());
    std::int32_t next = 0;
    for (std::size_t v = 0; v < owner.size(); ++v) {
        std::int32_t& slot = remap[owner[v]];
        if (slot < 0) slot = next++;
        labels[v] = slot;
    }
    return labels;
}

}  // namespace

NaiveResult naive_run(const SparseGraph& graph, std::int32_t c, const EngineOptions& options) {
    const VertexId n = graph.vertex_count();
    if (n > 2000) throw Error(Errc::TooLarge, "naive engine refuses n=" + std::to_string(n) + " > 2000");
    if (c < 1 || c > n) {
        throw Error(Errc::InvalidArgs, "c=" + std::to_string(c) + " outside [1, n] with n=" + std::to_string(n));
    }

    std::vector<std::vector<VertexId>> members(static_cast<std::size_t>(n));
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    for (VertexId i = 0; i < n; ++i) members[i] = {i};
    VertexId next_id = n;
    std::int32_t active = n;

    MergeTrace trace;
    std::int32_t step = 0;

    while (active > c) {
        const Aggregates agg = compute_aggregates(graph, members, alive, next_id);

        VertexId best_i = -1, best_j = -1;
        double best_delta = 0.0;
        bool found = false;
        for (const auto& [pair, w] : agg.cross) {
            const auto [a, b] = pair;
            const double delta = delta_formula(agg.l_self[a], agg.l_self[b], -w, agg.deg[a], agg.deg[b]);
            const bool better = !found || (options.selection == Selection::MaxDelta ? delta > best_delta
                                                                                    : delta < best_delta);
            if (better) {  // strict comparison + lexicographic scan ⇒ lex tie-break
                found = true;
                best_delta = delta;
                best_i = a;
                best_j = b;
            }
        }

        if (!found) {
            if (options.disconnected == DisconnectedPolicy::Strict) {
                throw QueueExhaustedError("no neighbor pairs left with " + std::to_string(active) +
                                              " clusters alive, target c=" + std::to_string(c),
                                          first_vertex_labels(agg.owner, next_id));
            }
            // All alive clusters are unions of whole components; every cross
            // merge is a zero-delta move and the rule degenerates to the
            // lexicographic tie-break, same as the fast engine.
            best_i = 0;
            while (!alive[best_i]) ++best_i;
            best_j = best_i + 1;
            while (!alive[best_j]) ++best_j;
            best_delta = 0.0;
        }

        members.push_back(members[best_i]);
        auto& merged = members.back();
        merged.insert(merged.end(), members[best_j].begin(), members[best_j].end());
        alive.push_back(1);
        alive[best_i] = 0;
        alive[best_j] = 0;
        const VertexId e = next_id++;
        --active;
        ++step;

        const Aggregates after = compute_aggregates(graph, members, alive, next_id);
        trace.push_back({step, best_i, best_j, e, best_delta, after.objective});
    }

    const Aggregates final_agg = compute_aggregates(graph, members, alive, next_id);
    NaiveResult result;
    result.partition.labels = first_vertex_labels(final_agg.owner, next_id);
    result.partition.c = c;
    result.trace = std::move(trace);
    return result;
}

ExhaustiveResult exhaustive_best_ncut(const SparseGraph& graph, std::int32_t c) {
    const VertexId n = graph.vertex_count();
    if (n > 12) throw Error(Errc::TooLarge, "exhaustive search refuses n=" + std::to_string(n) + " > 12");
    if (c < 1 || c > n) {
        throw Error(Errc::InvalidArgs, "c=" + std::to_string(c) + " outside [1, n] with n=" + std::to_string(n));
    }

    std::vector<std::int32_t> assignment(static_cast<std::size_t>(n), 0);
    ExhaustiveResult best;
    best.ncut_value = std::numeric_limits<double>::infinity();

    // Depth-first over restricted-growth strings: a[0] = 0 and each a[v] is at
    // most one past the running maximum. These strings ARE canonical
    // first-vertex-order label vectors, so the first minimum found is the
    // lexicographically smallest one.
    auto dfs = [&](auto&& self, VertexId pos, std::int32_t used) -> void {
        if (used + (n - pos) < c) return;  // cannot open enough blocks
        if (pos == n) {
            if (used != c) return;
            const double value = ncut(graph, assignment, c);
            if (value < best.ncut_value) {
                best.ncut_value = value;
                best.partition.labels = assignment;
            }
            return;
        }
        const std::int32_t top = std::min(used, c - 1);
        for (std::int32_t t = 0; t <= top; ++t) {
            assignment[pos] = t;
            self(self, pos + 1, used + (t == used ? 1 : 0));
        }
    };
    dfs(dfs, 1, 1);

    best.partition.c = c;
    return best;
}

}  // namespace ggc::oracle
