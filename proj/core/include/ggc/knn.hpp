#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ggc/graph.hpp"

namespace ggc {

struct FeatureMatrix {
    std::int32_t n = 0;  // samples
    std::int32_t d = 0;  // dimensions
    std::vector<double> values;  // n × d, row-major by sample

    const double* row(std::int32_t i) const { return values.data() + static_cast<std::size_t>(i) * d; }
};

// Per-sample k nearest others under squared Euclidean distance, each row
// ascending by (distance, id). Rows are independent slices of flat arrays.
struct NeighborLists {
    std::int32_t n = 0;
    std::int32_t k = 0;
    std::vector<std::int32_t> ids;  // n × k
    std::vector<double> d2;        // n × k

    const std::int32_t* row_ids(std::int32_t i) const { return ids.data() + static_cast<std::size_t>(i) * k; }
    const double* row_d2(std::int32_t i) const { return d2.data() + static_cast<std::size_t>(i) * k; }
};

// min(50, floor(n/c)), clamped below at 1. Throws InvalidArgs unless
// n >= 2 and 1 <= c < n.
std::int32_t default_k(std::int64_t n, std::int64_t c);

// Exact brute-force k-NN; distance ties broken toward the smaller id.
// Throws InvalidArgs unless 1 <= k <= n−1.
NeighborLists knn(const FeatureMatrix& features, std::int32_t k);

// CLR-style similarity graph over the k nearest of each sample:
//   w_ij = (d_{i,k+1} − d_ij) / (k·d_{i,k+1} − Σ_{h≤k} d_ih)
// with squared distances; a row whose denominator is ≤ 1e−12 (the k+1
// nearest equidistant) gets uniform 1/k weights. Directed weights are then
// averaged with their mirrors and zero entries dropped. Needs lists of
// length ≥ k+1.
SparseGraph clr_weights(const NeighborLists& lists, std::int32_t k);

// knn(features, k+1) piped into clr_weights.
SparseGraph build_clr_graph(const FeatureMatrix& features, std::int32_t k);

// Per-column z-scoring in place; constant columns become all zero.
void zscore_features(FeatureMatrix& features);

// TSV, one sample per line, decimal floats, no header.
FeatureMatrix load_features_tsv(std::istream& in);
FeatureMatrix load_features_tsv_file(const std::string& path);
void save_features_tsv_file(const FeatureMatrix& features, const std::string& path);

}  // namespace ggc
