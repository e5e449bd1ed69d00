#include "ggc/synthetic.hpp"

#include <cmath>
#include <numbers>

#include "ggc/error.hpp"

namespace ggc {

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

LabeledPoints make_blobs(std::int32_t per_cluster, std::int32_t clusters, double separation_sigmas,
                         std::int32_t dims, std::uint64_t seed) {
    if (per_cluster < 1 || clusters < 1 || dims < 2 || separation_sigmas <= 0.0) {
        throw Error(Errc::InvalidArgs, "make_blobs parameters");
    }
    // Adjacent centers on the circle are chords of 2R sin(π/k).
    const double radius =
        clusters == 1 ? 0.0 : separation_sigmas / (2.0 * std::sin(std::numbers::pi / clusters));

    Rng rng(seed);
    LabeledPoints out;
    out.features.n = per_cluster * clusters;
    out.features.d = dims;
    out.features.values.resize(static_cast<std::size_t>(out.features.n) * dims);
    out.labels.resize(static_cast<std::size_t>(out.features.n));

    std::size_t pos = 0;
    for (std::int32_t b = 0; b < clusters; ++b) {
        const double angle = 2.0 * std::numbers::pi * b / clusters;
        const double cx = radius * std::cos(angle);
        const double cy = radius * std::sin(angle);
        for (std::int32_t s = 0; s < per_cluster; ++s) {
            out.labels[pos / static_cast<std::size_t>(dims)] = b;
            out.features.values[pos++] = cx + rng.normal();
            out.features.values[pos++] = cy + rng.normal();
            for (std::int32_t t = 2; t < dims; ++t) out.features.values[pos++] = rng.normal();
        }
    }
    return out;
}

LabeledPoints make_rings(std::int32_t total, double radius_ratio, double noise_frac, std::uint64_t seed) {
    if (total < 4 || radius_ratio <= 1.0 || noise_frac < 0.0) {
        throw Error(Errc::InvalidArgs, "make_rings parameters");
    }
    const std::int32_t inner = total / 2;
    const std::int32_t outer = total - inner;
    const double radii[2] = {1.0, radius_ratio};
    const std::int32_t counts[2] = {inner, outer};

    Rng rng(seed);
    LabeledPoints out;
    out.features.n = total;
    out.features.d = 2;
    out.features.values.resize(static_cast<std::size_t>(total) * 2);
    out.labels.resize(static_cast<std::size_t>(total));

    std::size_t pos = 0;
    std::int32_t sample = 0;
    for (std::int32_t ring = 0; ring < 2; ++ring) {
        const double r = radii[ring];
        const double sigma = noise_frac * r;
        for (std::int32_t s = 0; s < counts[ring]; ++s) {
            const double theta = 2.0 * std::numbers::pi * s / counts[ring];
            out.labels[sample++] = ring;
            out.features.values[pos++] = r * std::cos(theta) + sigma * rng.normal();
            out.features.values[pos++] = r * std::sin(theta) + sigma * rng.normal();
        }
    }
    return out;
}

FeatureMatrix gaussian_cloud(std::int32_t n, std::int32_t dims, std::uint64_t seed) {
    if (n < 2 || dims < 1) throw Error(Errc::InvalidArgs, "gaussian_cloud parameters");
    Rng rng(seed);
    FeatureMatrix f;
    f.n = n;
    f.d = dims;
    f.values.resize(static_cast<std::size_t>(n) * dims);
    for (double& v : f.values) v = rng.normal();
    return f;
}

SparseGraph make_grid_graph(std::int32_t rows, std::int32_t cols) {
    if (rows < 1 || cols < 1 || static_cast<std::int64_t>(rows) * cols < 2) {
        throw Error(Errc::InvalidArgs, "grid needs at least two vertices");
    }
    std::vector<WeightedEdge> edges;
    edges.reserve(static_cast<std::size_t>(rows) * cols * 2);
    auto at = [cols](std::int32_t r, std::int32_t c) { return r * cols + c; };
    for (std::int32_t r = 0; r < rows; ++r) {
        for (std::int32_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.push_back({at(r, c), at(r, c + 1), 1.0});
            if (r + 1 < rows) edges.push_back({at(r, c), at(r + 1, c), 1.0});
        }
    }
    return SparseGraph::from_edges(edges);
}

}  // namespace ggc
