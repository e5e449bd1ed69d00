#pragma once

#include <cstdint>
#include <vector>

#include "ggc/graph.hpp"

namespace ggc {

struct ContingencyTable {
    std::int32_t rows = 0;
    std::int32_t cols = 0;
    std::vector<std::int64_t> counts;  // rows × cols, row-major
    std::vector<std::int64_t> row_sums;
    std::vector<std::int64_t> col_sums;
    std::int64_t total = 0;

    std::int64_t at(std::int32_t r, std::int32_t c) const { return counts[static_cast<std::size_t>(r) * cols + c]; }
};

// Joint counts n_rc = |{s : a_s = r-th distinct value of a, b_s = c-th of b}|;
// distinct values indexed by first appearance. Throws LengthMismatch.
ContingencyTable contingency(const std::vector<std::int32_t>& labels_a, const std::vector<std::int32_t>& labels_b);

// Normalized cut recomputed from scratch: per cluster, (degree mass − twice
// the internal weight) / degree mass, summed. With declared_c >= 1 labels must
// lie in [0, declared_c) and every value must occur (EmptyCluster otherwise);
// with the default -1 the clusters are the distinct values present.
double ncut(const SparseGraph& graph, const std::vector<std::int32_t>& labels, std::int32_t declared_c = -1);

// 2·I(A;B) / (H(A)+H(B)), natural logs. Both partitions single-cluster → 1.0
// (the formula's 0/0 limit); exactly one single-cluster → 0.0 falls out.
double nmi(const std::vector<std::int32_t>& labels_a, const std::vector<std::int32_t>& labels_b);

// Adjusted Rand index with E[RI] = Σ_i C(a_i,2) · Σ_j C(b_j,2) / C(n,2);
// degenerate max = E[RI] case → 1.0.
double ari(const std::vector<std::int32_t>& labels_a, const std::vector<std::int32_t>& labels_b);

// Matched fraction under the best label bijection, solved exactly on the
// zero-padded square contingency table.
double acc(const std::vector<std::int32_t>& labels_true, const std::vector<std::int32_t>& labels_pred);

namespace detail {

// Exact min-cost assignment on a square int64 matrix; returns the optimal
// total cost. O(m³) potentials method.
std::int64_t assignment_min_cost(const std::vector<std::vector<std::int64_t>>& cost);

}  // namespace detail

}  // namespace ggc
