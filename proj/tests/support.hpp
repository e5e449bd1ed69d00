#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "ggc/graph.hpp"
#include "ggc/knn.hpp"
#include "ggc/synthetic.hpp"

namespace ggct {

inline ggc::SparseGraph unit_edge() {
    const std::array<ggc::WeightedEdge, 1> edges{{{0, 1, 1.0}}};
    return ggc::SparseGraph::from_edges(edges);
}

inline ggc::SparseGraph path3() {
    const std::array<ggc::WeightedEdge, 2> edges{{{0, 1, 1.0}, {1, 2, 1.0}}};
    return ggc::SparseGraph::from_edges(edges);
}

inline ggc::SparseGraph triangle() {
    const std::array<ggc::WeightedEdge, 3> edges{{{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}};
    return ggc::SparseGraph::from_edges(edges);
}

inline ggc::SparseGraph two_disjoint_edges() {
    const std::array<ggc::WeightedEdge, 2> edges{{{0, 1, 1.0}, {2, 3, 1.0}}};
    return ggc::SparseGraph::from_edges(edges);
}

// CLR graph over a random Gaussian cloud; seeds advance until the result is
// connected, so callers get a deterministic connected instance per seed.
inline ggc::SparseGraph random_clr_graph(std::int32_t n, std::int32_t k, std::uint64_t seed,
                                         std::int32_t dims = 3) {
    for (std::uint64_t s = seed;; ++s) {
        const ggc::FeatureMatrix f = ggc::gaussian_cloud(n, dims, s);
        ggc::SparseGraph g = ggc::build_clr_graph(f, k);
        if (ggc::component_count(g) == 1) return g;
    }
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace ggct
