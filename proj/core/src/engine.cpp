#include "ggc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "ggc/io.hpp"

namespace ggc {

namespace {

// Compensated sum -= x. The running objective sheds one delta per merge;
// plain subtraction drifts past the audit tolerance on six-figure runs.
void kahan_sub(double& sum, double& comp, double x) {
    const double y = -x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

void kahan_add(double& sum, double& comp, double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

std::ptrdiff_t find_neighbor(const std::vector<NeighborEntry>& entries, VertexId id) {
    auto it = std::lower_bound(entries.begin(), entries.end(), id,
                               [](const NeighborEntry& e, VertexId x) { return e.id < x; });
    if (it == entries.end() || it->id != id) return -1;
    return it - entries.begin();
}

void drop_neighbor(std::vector<NeighborEntry>& entries, VertexId id) {
    const std::ptrdiff_t pos = find_neighbor(entries, id);
    if (pos >= 0) entries.erase(entries.begin() + pos);
}

double rel_dev(double value, double reference) {
    return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

// Replaces clusters i < j by their union e: aggregates summed, members
// spliced, neighbor maps folded, bystanders repointed, fresh queue entries
// for every neighbor of e. Queue entries touching i or j must already be
// gone. Returns e.
VertexId fuse(EngineState& st, VertexId i, VertexId j, double l_ij) {
    const VertexId e = st.next_id++;
    st.records.emplace_back();
    ClusterRecord& re = st.records[e];
    ClusterRecord& ri = st.records[i];
    ClusterRecord& rj = st.records[j];

    re.l_self = ri.l_self + rj.l_self + 2.0 * l_ij;
    re.d_mass = ri.d_mass + rj.d_mass;
    re.size = ri.size + rj.size;
    re.head = ri.head;
    re.tail = rj.tail;
    st.member_next[ri.tail] = rj.head;
    re.alive = true;

    // Sorted union minus the pair itself; common ids get summed cross values.
    // Both inputs are strictly negative, so a sum can never reach zero, but
    // the guard keeps the "neighbors are strictly negative" invariant local.
    re.neighbors.reserve(ri.neighbors.size() + rj.neighbors.size());
    {
        auto a = ri.neighbors.begin();
        const auto a_end = ri.neighbors.end();
        auto b = rj.neighbors.begin();
        const auto b_end = rj.neighbors.end();
        while (a != a_end || b != b_end) {
            if (b == b_end || (a != a_end && a->id < b->id)) {
                if (a->id != j) re.neighbors.push_back(*a);
                ++a;
            } else if (a == a_end || b->id < a->id) {
                if (b->id != i) re.neighbors.push_back(*b);
                ++b;
            } else {
                const double sum = a->l_cross + b->l_cross;
                if (sum != 0.0) re.neighbors.push_back({a->id, sum});
                ++a;
                ++b;
            }
        }
    }

    for (const NeighborEntry& en : re.neighbors) {
        ClusterRecord& rp = st.records[en.id];
        drop_neighbor(rp.neighbors, i);
        drop_neighbor(rp.neighbors, j);
        rp.neighbors.push_back({e, en.l_cross});  // e is the largest id, order kept
        st.queue.insert({delta_formula(rp.l_self, re.l_self, en.l_cross, rp.d_mass, re.d_mass), en.id, e});
    }

    ri.alive = false;
    rj.alive = false;
    ri.neighbors.clear();
    rj.neighbors.clear();
    --st.active_count;
    ++st.stats.merges_executed;
    st.stats.k1_max = std::max<std::int64_t>(st.stats.k1_max, static_cast<std::int64_t>(re.neighbors.size()));
    return e;
}

// Invariant sweep against ground truth: running objective vs recomputation,
// Σ d_mass vs the graph's total degree, Σ l_self vs twice the cut weight
// read straight off the graph under the current labels.
void audit_state(EngineState& st) {
    const double fresh = objective_of_state(st);
    const double obj_dev = rel_dev(st.objective, fresh);

    double d_sum = 0.0, d_c = 0.0;
    double l_sum = 0.0, l_c = 0.0;
    for (VertexId id = 0; id < st.next_id; ++id) {
        const ClusterRecord& r = st.records[id];
        if (!r.alive) continue;
        kahan_add(d_sum, d_c, r.d_mass);
        kahan_add(l_sum, l_c, r.l_self);
    }
    const double deg_dev = rel_dev(d_sum, st.graph->total_degree());

    const std::vector<std::int32_t> labels = labels_of_state(st);
    double cut = 0.0, cut_c = 0.0;
    for (VertexId u = 0; u < st.graph->vertex_count(); ++u) {
        const auto nbrs = st.graph->neighbors(u);
        const auto ws = st.graph->edge_weights(u);
        for (std::size_t q = 0; q < nbrs.size(); ++q) {
            if (nbrs[q] > u && labels[nbrs[q]] != labels[u]) kahan_add(cut, cut_c, ws[q]);
        }
    }
    const double cut_dev = rel_dev(l_sum, 2.0 * cut);

    ++st.stats.audits;
    st.stats.max_objective_dev = std::max(st.stats.max_objective_dev, obj_dev);
    st.stats.max_degree_dev = std::max(st.stats.max_degree_dev, deg_dev);
    st.stats.max_cut_dev = std::max(st.stats.max_cut_dev, cut_dev);

    if (obj_dev > 1e-9) {
        throw Error(Errc::AuditFailure, "running objective drifted: " + format_double(st.objective) + " vs " +
                                            format_double(fresh));
    }
    if (deg_dev > 1e-9) {
        throw Error(Errc::AuditFailure, "degree mass not conserved: " + format_double(d_sum) + " vs " +
                                            format_double(st.graph->total_degree()));
    }
    if (cut_dev > 1e-9) {
        throw Error(Errc::AuditFailure,
                    "Σ l_self diverged from cut: " + format_double(l_sum) + " vs " + format_double(2.0 * cut));
    }
}

}  // namespace

EngineState init_state(const SparseGraph& graph) {
    const VertexId n = graph.vertex_count();
    EngineState st;
    st.graph = &graph;
    st.records.reserve(static_cast<std::size_t>(n) * 2);
    st.records.resize(static_cast<std::size_t>(n));
    st.member_next.assign(static_cast<std::size_t>(n), -1);

    std::int64_t neighbor_total = 0;
    for (VertexId i = 0; i < n; ++i) {
        ClusterRecord& r = st.records[i];
        const double d = graph.degree(i);
        r.l_self = d;
        r.d_mass = d;
        r.head = r.tail = i;
        r.size = 1;
        r.alive = true;
        const auto nbrs = graph.neighbors(i);
        const auto ws = graph.edge_weights(i);
        r.neighbors.resize(nbrs.size());
        for (std::size_t q = 0; q < nbrs.size(); ++q) r.neighbors[q] = {nbrs[q], -ws[q]};
        neighbor_total += static_cast<std::int64_t>(nbrs.size());
        st.stats.k1_max = std::max<std::int64_t>(st.stats.k1_max, static_cast<std::int64_t>(nbrs.size()));
    }
    st.stats.k1_init = static_cast<double>(neighbor_total) / static_cast<double>(n);

    for (VertexId i = 0; i < n; ++i) {
        const ClusterRecord& r = st.records[i];
        for (const NeighborEntry& en : r.neighbors) {
            if (en.id <= i) continue;
            const ClusterRecord& s = st.records[en.id];
            st.queue.insert({delta_formula(r.l_self, s.l_self, en.l_cross, r.d_mass, s.d_mass), i, en.id});
        }
    }

    st.active_count = n;
    st.objective = static_cast<double>(n);  // each singleton contributes d_i/d_i = 1 exactly
    st.objective_comp = 0.0;
    st.next_id = n;
    return st;
}

MergeCandidate best_pair(const EngineState& state, Selection selection) {
    return selection == Selection::MaxDelta ? state.queue.best_max() : state.queue.best_min();
}

VertexId merge(EngineState& st, VertexId i, VertexId j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= st.next_id || i == j) {
        throw Error(Errc::InvalidArgs, "merge(" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    if (!st.records[i].alive || !st.records[j].alive) {
        throw Error(Errc::DeadCluster, "merge(" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    const std::ptrdiff_t pos = find_neighbor(st.records[i].neighbors, j);
    if (pos < 0) {
        throw Error(Errc::NotNeighbors, "clusters " + std::to_string(i) + " and " + std::to_string(j));
    }
    const double l_ij = st.records[i].neighbors[pos].l_cross;
    const double delta =
        delta_formula(st.records[i].l_self, st.records[j].l_self, l_ij, st.records[i].d_mass, st.records[j].d_mass);

    // All removals first, while every key is still reproducible from the
    // untouched records (the set A of invalidated candidates).
    st.queue.erase({delta, i, j});
    for (const NeighborEntry& en : st.records[i].neighbors) {
        if (en.id == j) continue;
        const VertexId a = std::min(i, en.id);
        const VertexId b = std::max(i, en.id);
        st.queue.erase({delta_formula(st.records[a].l_self, st.records[b].l_self, en.l_cross, st.records[a].d_mass,
                                      st.records[b].d_mass),
                        a, b});
    }
    for (const NeighborEntry& en : st.records[j].neighbors) {
        if (en.id == i) continue;
        const VertexId a = std::min(j, en.id);
        const VertexId b = std::max(j, en.id);
        st.queue.erase({delta_formula(st.records[a].l_self, st.records[b].l_self, en.l_cross, st.records[a].d_mass,
                                      st.records[b].d_mass),
                        a, b});
    }

    const VertexId e = fuse(st, i, j, l_ij);
    kahan_sub(st.objective, st.objective_comp, delta);
    return e;
}

RunResult run(const SparseGraph& graph, std::int32_t c, const EngineOptions& options) {
    const VertexId n = graph.vertex_count();
    if (c < 1 || c > n) {
        throw Error(Errc::InvalidArgs, "c=" + std::to_string(c) + " outside [1, n] with n=" + std::to_string(n));
    }

    EngineState st = init_state(graph);
    MergeTrace trace;
    trace.reserve(static_cast<std::size_t>(n - c));
    const std::int32_t cadence = static_cast<std::int32_t>(std::max<std::int64_t>(1, (static_cast<std::int64_t>(n) + 99) / 100));
    std::int32_t step = 0;

    while (st.active_count > c && !st.queue.empty()) {
        const MergeCandidate best = best_pair(st, options.selection);
        const VertexId e = merge(st, best.i, best.j);
        ++step;
        trace.push_back({step, best.i, best.j, e, best.delta, st.objective});
        if (options.audit && step % cadence == 0) audit_state(st);
    }

    if (st.active_count > c) {
        if (options.disconnected == DisconnectedPolicy::Strict) {
            throw QueueExhaustedError("no neighbor pairs left with " + std::to_string(st.active_count) +
                                          " clusters alive, target c=" + std::to_string(c),
                                      labels_of_state(st));
        }
        // Every alive cluster is now a union of whole components: all cross
        // values are zero, every candidate δ is exactly zero, and the max-δ
        // rule reduces to its lexicographic tie-break — the two lowest ids.
        // Merged ids only ever grow, so a single forward scan suffices.
        VertexId scan = 0;
        while (st.active_count > c) {
            while (!st.records[scan].alive) ++scan;
            VertexId second = scan + 1;
            while (!st.records[second].alive) ++second;
            const VertexId i = scan;
            const VertexId j = second;
            const VertexId e = fuse(st, i, j, 0.0);
            ++st.stats.fallback_merges;
            ++step;
            trace.push_back({step, i, j, e, 0.0, st.objective});
            if (options.audit && step % cadence == 0) audit_state(st);
        }
    }

    if (options.audit) audit_state(st);

    st.stats.queue_ops = st.queue.ops();
    st.stats.queue_inserts = st.queue.inserts();
    st.stats.min_insert_delta = st.queue.min_insert_delta();

    RunResult result;
    result.partition.labels = labels_of_state(st);
    result.partition.c = c;
    result.trace = std::move(trace);
    result.stats = st.stats;
    return result;
}

double objective_of_state(const EngineState& state) {
    double sum = 0.0, comp = 0.0;
    for (VertexId id = 0; id < state.next_id; ++id) {
        const ClusterRecord& r = state.records[id];
        if (!r.alive) continue;
        if (!(r.d_mass > 0.0)) throw Error(Errc::NonPositiveDegree, "cluster " + std::to_string(id));
        kahan_add(sum, comp, r.l_self / r.d_mass);
    }
    return sum;
}

std::vector<std::int32_t> labels_of_state(const EngineState& state) {
    const VertexId n = state.graph->vertex_count();
    std::vector<VertexId> owner(static_cast<std::size_t>(n), -1);
    for (VertexId id = 0; id < state.next_id; ++id) {
        const ClusterRecord& r = state.records[id];
        if (!r.alive) continue;
        for (VertexId v = r.head; v != -1; v = state.member_next[v]) owner[v] = id;
    }
    // Member lists are in merge order, not vertex order, so labels come from
    // a second pass over vertices: first vertex seen in a cluster names it.
    std::vector<std::int32_t> remap(static_cast<std::size_t>(state.next_id), -1);
    std::vector<std::int32_t> labels(static_cast<std::size_t>(n));
    std::int32_t next = 0;
    for (VertexId v = 0; v < n; ++v) {
        std::int32_t& slot = remap[owner[v]];
        if (slot < 0) slot = next++;
        labels[v] = slot;
    }
    return labels;
}

void save_trace(const MergeTrace& trace, std::ostream& out) {
    for (const MergeStep& s : trace) {
        out << s.step << ' ' << s.i << ' ' << s.j << ' ' << s.e << ' ' << format_double(s.delta) << ' '
            << format_double(s.objective_after) << '\n';
    }
    if (!out) throw Error(Errc::IoError, "stream failure while writing trace");
}

void save_trace_file(const MergeTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::IoError, "cannot open " + path);
    save_trace(trace, out);
}

}  // namespace ggc
