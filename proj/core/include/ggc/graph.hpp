#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ggc {

using VertexId = std::int32_t;

struct WeightedEdge {
    VertexId u = 0;
    VertexId v = 0;
    double w = 0.0;
};

// Immutable symmetric weighted adjacency in compressed row form. Only the
// strictly-off-diagonal weights are stored; both directions of every edge are
// present with bit-identical weight, column indices strictly increasing per
// row. The Laplacian is never materialized: L_ii = degree(i), L_ij = -w_ij.
class SparseGraph {
public:
    SparseGraph() = default;

    // Builds the canonical form from unordered-pair edges. Each pair may
    // appear at most once; (u, v) and (v, u) count as the same pair.
    // Throws: SelfLoop, NonPositiveWeight, DuplicateEdge, IsolatedVertex,
    // InvalidArgs (negative vertex id or empty edge set).
    static SparseGraph from_edges(std::span<const WeightedEdge> edges);

    VertexId vertex_count() const noexcept { return n_; }
    std::int64_t edge_count() const noexcept { return static_cast<std::int64_t>(col_indices_.size()) / 2; }

    std::span<const VertexId> neighbors(VertexId i) const {
        return {col_indices_.data() + row_offsets_[i], col_indices_.data() + row_offsets_[i + 1]};
    }
    std::span<const double> edge_weights(VertexId i) const {
        return {weights_.data() + row_offsets_[i], weights_.data() + row_offsets_[i + 1]};
    }

    double degree(VertexId i) const { return degrees_[i]; }
    double total_degree() const noexcept { return total_degree_; }

    // Stored weight of (i, j), 0 when no edge. O(log deg(i)).
    double weight(VertexId i, VertexId j) const;

    const std::vector<std::int64_t>& row_offsets() const noexcept { return row_offsets_; }
    const std::vector<VertexId>& col_indices() const noexcept { return col_indices_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<double>& degrees() const noexcept { return degrees_; }

private:
    VertexId n_ = 0;
    std::vector<std::int64_t> row_offsets_;
    std::vector<VertexId> col_indices_;
    std::vector<double> weights_;
    std::vector<double> degrees_;
    double total_degree_ = 0.0;

    friend SparseGraph make_graph_unchecked(VertexId, std::vector<std::int64_t>, std::vector<VertexId>,
                                            std::vector<double>);
};

// Assembles a SparseGraph from raw CSR arrays without invariant checks.
// Test instrument: lets validation be exercised on deliberately broken data.
SparseGraph make_graph_unchecked(VertexId n, std::vector<std::int64_t> row_offsets,
                                 std::vector<VertexId> col_indices, std::vector<double> weights);

struct ValidationIssue {
    std::string code;     // SYMMETRY, ISOLATED, SELF_LOOP, NON_POSITIVE_WEIGHT, ORDER, DEGREE, SHAPE
    VertexId vertex = -1; // row the issue was found in, -1 when structural
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
};

// Re-checks every structural invariant on the stored arrays: shape
// consistency, strictly increasing columns, no self-loops, positive weights,
// bit-identical symmetry, no isolated vertices, degrees matching row sums.
// Findings go into the report; nothing throws.
ValidationReport validate(const SparseGraph& graph);

// L_ij of the never-materialized Laplacian: degree(i) on the diagonal,
// -w_ij off it (0 when no edge). Throws IndexOutOfRange.
double laplacian_entry(const SparseGraph& graph, VertexId i, VertexId j);

// Number of connected components (BFS over the stored adjacency).
std::int32_t component_count(const SparseGraph& graph);

}  // namespace ggc
