#include "ggc/graph.hpp"

#include <algorithm>
#include <queue>
#include <utility>

#include "ggc/error.hpp"

namespace ggc {

SparseGraph make_graph_unchecked(VertexId n, std::vector<std::int64_t> row_offsets,
                                 std::vector<VertexId> col_indices, std::vector<double> weights) {
    SparseGraph g;
    g.n_ = n;
    g.row_offsets_ = std::move(row_offsets);
    g.col_indices_ = std::move(col_indices);
    g.weights_ = std::move(weights);
    g.degrees_.assign(static_cast<std::size_t>(n), 0.0);
    g.total_degree_ = 0.0;
    for (VertexId i = 0; i < n; ++i) {
        double d = 0.0;
        for (std::int64_t p = g.row_offsets_[i]; p < g.row_offsets_[i + 1]; ++p) d += g.weights_[p];
        g.degrees_[i] = d;
        g.total_degree_ += d;
    }
    return g;
}

SparseGraph SparseGraph::from_edges(std::span<const WeightedEdge> edges) {
    if (edges.empty()) throw Error(Errc::InvalidArgs, "edge set is empty");

    VertexId max_id = -1;
    for (const auto& e : edges) {
        if (e.u < 0 || e.v < 0) throw Error(Errc::InvalidArgs, "negative vertex id");
        if (e.u == e.v) throw Error(Errc::SelfLoop, "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
        if (!(e.w > 0.0)) {
            throw Error(Errc::NonPositiveWeight, "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                                     ") has weight " + std::to_string(e.w));
        }
        max_id = std::max({max_id, e.u, e.v});
    }
    const VertexId n = max_id + 1;

    // Counting sort into rows, each edge contributing both directions.
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& e : edges) {
        ++counts[static_cast<std::size_t>(e.u) + 1];
        ++counts[static_cast<std::size_t>(e.v) + 1];
    }
    for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
    std::vector<std::int64_t> row_offsets = counts;

    const std::int64_t nnz = row_offsets[static_cast<std::size_t>(n)];
    std::vector<VertexId> cols(static_cast<std::size_t>(nnz));
    std::vector<double> ws(static_cast<std::size_t>(nnz));
    std::vector<std::int64_t> cursor(row_offsets.begin(), row_offsets.end() - 1);
    for (const auto& e : edges) {
        std::int64_t pu = cursor[static_cast<std::size_t>(e.u)]++;
        cols[static_cast<std::size_t>(pu)] = e.v;
        ws[static_cast<std::size_t>(pu)] = e.w;
        std::int64_t pv = cursor[static_cast<std::size_t>(e.v)]++;
        cols[static_cast<std::size_t>(pv)] = e.u;
        ws[static_cast<std::size_t>(pv)] = e.w;
    }

    // Per-row column sort, then adjacent duplicates expose repeated pairs.
    std::vector<std::pair<VertexId, double>> row;
    for (VertexId i = 0; i < n; ++i) {
        const std::int64_t lo = row_offsets[i];
        const std::int64_t hi = row_offsets[i + 1];
        if (lo == hi) throw Error(Errc::IsolatedVertex, "vertex " + std::to_string(i) + " has no incident edge");
        row.clear();
        for (std::int64_t p = lo; p < hi; ++p) row.emplace_back(cols[p], ws[p]);
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t q = 1; q < row.size(); ++q) {
            if (row[q].first == row[q - 1].first) {
                throw Error(Errc::DuplicateEdge, "pair (" + std::to_string(std::min(i, row[q].first)) + ", " +
                                                     std::to_string(std::max(i, row[q].first)) +
                                                     ") appears more than once");
            }
        }
        for (std::size_t q = 0; q < row.size(); ++q) {
            cols[lo + static_cast<std::int64_t>(q)] = row[q].first;
            ws[lo + static_cast<std::int64_t>(q)] = row[q].second;
        }
    }

    return make_graph_unchecked(n, std::move(row_offsets), std::move(cols), std::move(ws));
}

double SparseGraph::weight(VertexId i, VertexId j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_) throw Error(Errc::IndexOutOfRange, "weight(" + std::to_string(i) + ", " + std::to_string(j) + ")");
    auto nbrs = neighbors(i);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j);
    if (it == nbrs.end() || *it != j) return 0.0;
    return weights_[row_offsets_[i] + (it - nbrs.begin())];
}

ValidationReport validate(const SparseGraph& graph) {
    ValidationReport report;
    auto add = [&report](std::string code, VertexId vertex, std::string message) {
        report.ok = false;
        report.issues.push_back({std::move(code), vertex, std::move(message)});
    };

    const VertexId n = graph.vertex_count();
    const auto& offs = graph.row_offsets();
    const auto& cols = graph.col_indices();
    const auto& ws = graph.weights();

    if (offs.size() != static_cast<std::size_t>(n) + 1 || cols.size() != ws.size() ||
        (n > 0 && offs.back() != static_cast<std::int64_t>(cols.size()))) {
        add("SHAPE", -1, "csr array sizes are inconsistent");
        return report;  // nothing below is safe to index
    }
    for (VertexId i = 0; i < n; ++i) {
        if (offs[i] > offs[i + 1]) {
            add("SHAPE", i, "row offsets decrease");
            return report;
        }
    }

    for (VertexId i = 0; i < n; ++i) {
        const std::int64_t lo = offs[i];
        const std::int64_t hi = offs[i + 1];
        if (lo == hi) add("ISOLATED", i, "vertex has no incident edge");
        double row_sum = 0.0;
        for (std::int64_t p = lo; p < hi; ++p) {
            const VertexId j = cols[p];
            if (j < 0 || j >= n) {
                add("SHAPE", i, "column index " + std::to_string(j) + " out of range");
                continue;
            }
            if (j == i) add("SELF_LOOP", i, "diagonal entry stored");
            if (p > lo && cols[p] <= cols[p - 1]) add("ORDER", i, "columns not strictly increasing");
            if (!(ws[p] > 0.0)) add("NON_POSITIVE_WEIGHT", i, "weight " + std::to_string(ws[p]) + " at column " + std::to_string(j));
            row_sum += ws[p];
            // Mirror entry must exist with the same bits.
            const auto nbrs = graph.neighbors(j);
            auto it = std::lower_bound(nbrs.begin(), nbrs.end(), i);
            if (it == nbrs.end() || *it != i) {
                add("SYMMETRY", i, "edge to " + std::to_string(j) + " has no mirror");
            } else {
                const double back = graph.edge_weights(j)[it - nbrs.begin()];
                if (back != ws[p]) add("SYMMETRY", i, "mirror weight differs at " + std::to_string(j));
            }
        }
        if (row_sum != graph.degree(i)) add("DEGREE", i, "stored degree does not match row sum");
    }
    return report;
}

double laplacian_entry(const SparseGraph& graph, VertexId i, VertexId j) {
    const VertexId n = graph.vertex_count();
    if (i < 0 || i >= n || j < 0 || j >= n) {
        throw Error(Errc::IndexOutOfRange,
                    "laplacian_entry(" + std::to_string(i) + ", " + std::to_string(j) + ") with n=" + std::to_string(n));
    }
    if (i == j) return graph.degree(i);
    const double w = graph.weight(i, j);
    return w == 0.0 ? 0.0 : -w;
}

std::int32_t component_count(const SparseGraph& graph) {
    const VertexId n = graph.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::int32_t components = 0;
    std::queue<VertexId> frontier;
    for (VertexId s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = 1;
        frontier.push(s);
        while (!frontier.empty()) {
            const VertexId v = frontier.front();
            frontier.pop();
            for (VertexId u : graph.neighbors(v)) {
                if (!seen[u]) {
                    seen[u] = 1;
                    frontier.push(u);
                }
            }
        }
    }
    return components;
}

}  // namespace ggc
