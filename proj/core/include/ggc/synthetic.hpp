#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ggc/graph.hpp"
#include "ggc/knn.hpp"

namespace ggc {

// Deterministic generator with explicit normal/uniform draws. Distribution
// classes from <random> are not pinned across standard libraries, so the
// transforms are spelled out here; mt19937_64 itself is bit-exact everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // (0, 1], 53-bit resolution; never zero, safe under log.
    double uniform() { return static_cast<double>((gen_() >> 11) + 1) * 0x1p-53; }

    // Standard normal via Box–Muller, pairs cached.
    double normal();

    // [0, bound); modulo draw, bias immaterial at test scales.
    std::int64_t below(std::int64_t bound) { return static_cast<std::int64_t>(gen_() % static_cast<std::uint64_t>(bound)); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct LabeledPoints {
    FeatureMatrix features;
    std::vector<std::int32_t> labels;
};

// Isotropic unit-σ Gaussian blobs, centers evenly spaced on a circle sized
// so adjacent centers sit separation_sigmas apart (dims ≥ 2; the circle
// lives in the first two coordinates). Points grouped by blob.
LabeledPoints make_blobs(std::int32_t per_cluster, std::int32_t clusters, double separation_sigmas,
                         std::int32_t dims, std::uint64_t seed);

// Two concentric rings with radii 1 and radius_ratio, points split evenly,
// even angular spacing plus Gaussian jitter of σ = noise_frac · radius.
LabeledPoints make_rings(std::int32_t total, double radius_ratio, double noise_frac, std::uint64_t seed);

// Unstructured standard-normal cloud.
FeatureMatrix gaussian_cloud(std::int32_t n, std::int32_t dims, std::uint64_t seed);

// rows × cols lattice, unit weights, 4-neighborhood.
SparseGraph make_grid_graph(std::int32_t rows, std::int32_t cols);

}  // namespace ggc
