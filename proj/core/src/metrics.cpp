#include "ggc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "ggc/error.hpp"

namespace ggc {

namespace {

// Distinct values → dense ids by first appearance.
std::int32_t compress(const std::vector<std::int32_t>& labels, std::vector<std::int32_t>& dense) {
    std::unordered_map<std::int32_t, std::int32_t> ids;
    ids.reserve(labels.size());
    dense.resize(labels.size());
    std::int32_t next = 0;
    for (std::size_t s = 0; s < labels.size(); ++s) {
        auto [it, fresh] = ids.try_emplace(labels[s], next);
        if (fresh) ++next;
        dense[s] = it->second;
    }
    return next;
}

std::int64_t choose2(std::int64_t m) { return m * (m - 1) / 2; }

}  // namespace

ContingencyTable contingency(const std::vector<std::int32_t>& labels_a, const std::vector<std::int32_t>& labels_b) {
    if (labels_a.size() != labels_b.size()) {
        throw Error(Errc::LengthMismatch, "label vectors have sizes " + std::to_string(labels_a.size()) + " and " +
                                              std::to_string(labels_b.size()));
    }
    std::vector<std::int32_t> a;
    std::vector<std::int32_t> b;
    ContingencyTable t;
    t.rows = compress(labels_a, a);
    t.cols = compress(labels_b, b);
    t.counts.assign(static_cast<std::size_t>(t.rows) * t.cols, 0);
    t.row_sums.assign(static_cast<std::size_t>(t.rows), 0);
    t.col_sums.assign(static_cast<std::size_t>(t.cols), 0);
    t.total = static_cast<std::int64_t>(labels_a.size());
    for (std::size_t s = 0; s < a.size(); ++s) {
        ++t.counts[static_cast<std::size_t>(a[s]) * t.cols + b[s]];
        ++t.row_sums[a[s]];
        ++t.col_sums[b[s]];
    }
    return t;
}

double ncut(const SparseGraph& graph, const std::vector<std::int32_t>& labels, std::int32_t declared_c) {
    const VertexId n = graph.vertex_count();
    if (labels.size() != static_cast<std::size_t>(n)) {
        throw Error(Errc::LengthMismatch,
                    "labels size " + std::to_string(labels.size()) + " for graph with n=" + std::to_string(n));
    }

    std::vector<std::int32_t> dense;
    std::int32_t c = 0;
    if (declared_c >= 1) {
        c = declared_c;
        dense = labels;
        for (std::int32_t v : dense) {
            if (v < 0 || v >= c) throw Error(Errc::InvalidArgs, "label " + std::to_string(v) + " outside [0, c)");
        }
    } else {
        c = compress(labels, dense);
    }

    std::vector<double> degree_mass(static_cast<std::size_t>(c), 0.0);
    std::vector<double> internal_twice(static_cast<std::size_t>(c), 0.0);
    for (VertexId i = 0; i < n; ++i) {
        const std::int32_t k = dense[i];
        degree_mass[k] += graph.degree(i);
        const auto nbrs = graph.neighbors(i);
        const auto ws = graph.edge_weights(i);
        for (std::size_t q = 0; q < nbrs.size(); ++q) {
            if (dense[nbrs[q]] == k) internal_twice[k] += ws[q];
        }
    }

    double value = 0.0;
    for (std::int32_t k = 0; k < c; ++k) {
        if (degree_mass[k] == 0.0) throw Error(Errc::EmptyCluster, "label " + std::to_string(k) + " has no members");
        value += (degree_mass[k] - internal_twice[k]) / degree_mass[k];
    }
    return value;
}

double nmi(const std::vector<std::int32_t>& labels_a, const std::vector<std::int32_t>& labels_b) {
    const ContingencyTable t = contingency(labels_a, labels_b);
    const double n = static_cast<double>(t.total);

    double mutual = 0.0;
    for (std::int32_t r = 0; r < t.rows; ++r) {
        for (std::int32_t c = 0; c < t.cols; ++c) {
            const std::int64_t nij = t.at(r, c);
            if (nij == 0) continue;
            const double p = static_cast<double>(nij) / n;
            mutual += p * std::log(n * static_cast<double>(nij) /
                                   (static_cast<double>(t.row_sums[r]) * static_cast<double>(t.col_sums[c])));
        }
    }
    double entropy = 0.0;
    for (std::int64_t rs : t.row_sums) entropy -= (rs / n) * std::log(rs / n);
    for (std::int64_t cs : t.col_sums) entropy -= (cs / n) * std::log(cs / n);

    if (entropy == 0.0) return 1.0;  // both single-cluster
    return 2.0 * mutual / entropy;
}

double ari(const std::vector<std::int32_t>& labels_a, const std::vector<std::int32_t>& labels_b) {
    const ContingencyTable t = contingency(labels_a, labels_b);
    if (t.total < 2) throw Error(Errc::InvalidArgs, "ari needs at least 2 samples");

    std::int64_t index = 0;
    for (std::int64_t nij : t.counts) index += choose2(nij);
    std::int64_t sum_a = 0;
    for (std::int64_t rs : t.row_sums) sum_a += choose2(rs);
    std::int64_t sum_b = 0;
    for (std::int64_t cs : t.col_sums) sum_b += choose2(cs);

    const double expected = static_cast<double>(sum_a) * static_cast<double>(sum_b) /
                            static_cast<double>(choose2(t.total));
    const double maximum = 0.5 * (static_cast<double>(sum_a) + static_cast<double>(sum_b));
    if (maximum == expected) return 1.0;
    return (static_cast<double>(index) - expected) / (maximum - expected);
}

double acc(const std::vector<std::int32_t>& labels_true, const std::vector<std::int32_t>& labels_pred) {
    const ContingencyTable t = contingency(labels_true, labels_pred);
    const std::int32_t m = std::max(t.rows, t.cols);

    // Maximize matches = minimize negated counts on the zero-padded square.
    std::vector<std::vector<std::int64_t>> cost(static_cast<std::size_t>(m),
                                                std::vector<std::int64_t>(static_cast<std::size_t>(m), 0));
    for (std::int32_t r = 0; r < t.rows; ++r)
        for (std::int32_t c = 0; c < t.cols; ++c) cost[r][c] = -t.at(r, c);

    const std::int64_t matches = -detail::assignment_min_cost(cost);
    return static_cast<double>(matches) / static_cast<double>(t.total);
}

namespace detail {

std::int64_t assignment_min_cost(const std::vector<std::vector<std::int64_t>>& cost) {
    const std::int32_t m = static_cast<std::int32_t>(cost.size());
    if (m == 0) return 0;
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

    // Potentials method over a 1-indexed virtual frame; p[j] = row matched to
    // column j, column 0 is the staging slot.
    std::vector<std::int64_t> u(static_cast<std::size_t>(m) + 1, 0);
    std::vector<std::int64_t> v(static_cast<std::size_t>(m) + 1, 0);
    std::vector<std::int32_t> p(static_cast<std::size_t>(m) + 1, 0);
    std::vector<std::int32_t> way(static_cast<std::size_t>(m) + 1, 0);

    for (std::int32_t i = 1; i <= m; ++i) {
        p[0] = i;
        std::int32_t j0 = 0;
        std::vector<std::int64_t> minv(static_cast<std::size_t>(m) + 1, kInf);
        std::vector<char> used(static_cast<std::size_t>(m) + 1, 0);
        do {
            used[j0] = 1;
            const std::int32_t i0 = p[j0];
            std::int64_t delta = kInf;
            std::int32_t j1 = 0;
            for (std::int32_t j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::int32_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::int32_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::int64_t total = 0;
    for (std::int32_t j = 1; j <= m; ++j) total += cost[p[j] - 1][j - 1];
    return total;
}

}  // namespace detail

}  // namespace ggc
