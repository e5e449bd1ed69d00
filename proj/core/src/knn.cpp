#include "ggc/knn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>

#include "ggc/error.hpp"
#include "ggc/io.hpp"

namespace ggc {

std::int32_t default_k(std::int64_t n, std::int64_t c) {
    if (n < 2 || c < 1 || c >= n) {
        throw Error(Errc::InvalidArgs, "default_k(n=" + std::to_string(n) + ", c=" + std::to_string(c) + ")");
    }
    const std::int64_t k = std::min<std::int64_t>(50, n / c);
    return static_cast<std::int32_t>(std::max<std::int64_t>(1, k));
}

NeighborLists knn(const FeatureMatrix& features, std::int32_t k) {
    const std::int32_t n = features.n;
    const std::int32_t d = features.d;
    if (n < 2 || d < 1 || features.values.size() != static_cast<std::size_t>(n) * d) {
        throw Error(Errc::InvalidArgs, "malformed feature matrix");
    }
    if (k < 1 || k > n - 1) {
        throw Error(Errc::InvalidArgs, "k=" + std::to_string(k) + " outside [1, n-1] with n=" + std::to_string(n));
    }

    NeighborLists out;
    out.n = n;
    out.k = k;
    out.ids.resize(static_cast<std::size_t>(n) * k);
    out.d2.resize(static_cast<std::size_t>(n) * k);

    std::vector<double> dist(static_cast<std::size_t>(n));
    std::vector<double> best_d2(static_cast<std::size_t>(k));
    std::vector<std::int32_t> best_id(static_cast<std::size_t>(k));
    const double* base = features.values.data();

    for (std::int32_t i = 0; i < n; ++i) {
        const double* xi = base + static_cast<std::size_t>(i) * d;
        for (std::int32_t j = 0; j < n; ++j) {
            const double* xj = base + static_cast<std::size_t>(j) * d;
            double s = 0.0;
            for (std::int32_t t = 0; t < d; ++t) {
                const double diff = xi[t] - xj[t];
                s += diff * diff;
            }
            dist[j] = s;
        }
        dist[i] = std::numeric_limits<double>::infinity();  // self never qualifies

        // Bounded insertion keeps the k smallest seen so far, ascending by
        // (distance, id). Scanning j upward makes the id tie rule automatic:
        // an incoming candidate never displaces an equal-distance entry.
        std::int32_t filled = 0;
        for (std::int32_t j = 0; j < n; ++j) {
            const double dj = dist[j];
            if (filled == k) {
                if (dj >= best_d2[k - 1]) continue;
            } else {
                ++filled;
            }
            std::int32_t p = filled - 1;
            while (p > 0 && best_d2[p - 1] > dj) {
                best_d2[p] = best_d2[p - 1];
                best_id[p] = best_id[p - 1];
                --p;
            }
            best_d2[p] = dj;
            best_id[p] = j;
        }

        std::copy(best_d2.begin(), best_d2.end(), out.d2.begin() + static_cast<std::size_t>(i) * k);
        std::copy(best_id.begin(), best_id.end(), out.ids.begin() + static_cast<std::size_t>(i) * k);
    }
    return out;
}

SparseGraph clr_weights(const NeighborLists& lists, std::int32_t k) {
    if (k < 1) throw Error(Errc::InvalidArgs, "k must be positive");
    if (lists.k < k + 1) {
        throw Error(Errc::InvalidArgs,
                    "need k+1=" + std::to_string(k + 1) + " neighbors per row, have " + std::to_string(lists.k));
    }
    const std::int32_t n = lists.n;

    struct Directed {
        VertexId a;
        VertexId b;
        double w;
    };
    std::vector<Directed> halves;
    halves.reserve(static_cast<std::size_t>(n) * k);

    for (std::int32_t i = 0; i < n; ++i) {
        const double* d2 = lists.row_d2(i);
        const std::int32_t* ids = lists.row_ids(i);
        const double dk1 = d2[k];  // (k+1)-th smallest squared distance
        double tail_sum = 0.0;
        for (std::int32_t h = 0; h < k; ++h) tail_sum += d2[h];
        const double denom = static_cast<double>(k) * dk1 - tail_sum;

        for (std::int32_t h = 0; h < k; ++h) {
            // Degenerate row (k+1 equidistant neighbors): uniform weights.
            const double w = denom <= 1e-12 ? 1.0 / static_cast<double>(k) : (dk1 - d2[h]) / denom;
            if (w <= 0.0) continue;  // boundary tie d_ih = d_{i,k+1}
            const VertexId j = ids[h];
            halves.push_back({std::min<VertexId>(i, j), std::max<VertexId>(i, j), w});
        }
    }

    std::sort(halves.begin(), halves.end(), [](const Directed& x, const Directed& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });

    std::vector<WeightedEdge> edges;
    edges.reserve(halves.size());
    for (std::size_t q = 0; q < halves.size();) {
        std::size_t r = q;
        double sum = 0.0;
        while (r < halves.size() && halves[r].a == halves[q].a && halves[r].b == halves[q].b) {
            sum += halves[r].w;
            ++r;
        }
        edges.push_back({halves[q].a, halves[q].b, sum / 2.0});
        q = r;
    }

    SparseGraph g = SparseGraph::from_edges(edges);
    if (g.vertex_count() != n) {
        throw Error(Errc::IsolatedVertex, "sample " + std::to_string(g.vertex_count()) + " received no weight");
    }
    return g;
}

SparseGraph build_clr_graph(const FeatureMatrix& features, std::int32_t k) {
    return clr_weights(knn(features, k + 1), k);
}

void zscore_features(FeatureMatrix& features) {
    const std::int32_t n = features.n;
    const std::int32_t d = features.d;
    for (std::int32_t t = 0; t < d; ++t) {
        double mean = 0.0;
        for (std::int32_t i = 0; i < n; ++i) mean += features.values[static_cast<std::size_t>(i) * d + t];
        mean /= n;
        double var = 0.0;
        for (std::int32_t i = 0; i < n; ++i) {
            const double x = features.values[static_cast<std::size_t>(i) * d + t] - mean;
            var += x * x;
        }
        const double sigma = std::sqrt(var / n);
        for (std::int32_t i = 0; i < n; ++i) {
            double& x = features.values[static_cast<std::size_t>(i) * d + t];
            x = sigma == 0.0 ? 0.0 : (x - mean) / sigma;
        }
    }
}

FeatureMatrix load_features_tsv(std::istream& in) {
    FeatureMatrix f;
    std::string line;
    std::int64_t line_no = 0;
    std::vector<double> row;
    while (std::getline(in, line)) {
        ++line_no;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        row.clear();
        while (true) {
            while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
            if (p == end) break;
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(p, end, value);
            if (ec != std::errc()) {
                throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected a number");
            }
            row.push_back(value);
            p = ptr;
        }
        if (row.empty()) continue;
        if (f.d == 0) {
            f.d = static_cast<std::int32_t>(row.size());
        } else if (static_cast<std::int32_t>(row.size()) != f.d) {
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected " + std::to_string(f.d) +
                                              " columns, found " + std::to_string(row.size()));
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": non-finite value");
        }
        f.values.insert(f.values.end(), row.begin(), row.end());
        ++f.n;
    }
    if (in.bad()) throw Error(Errc::IoError, "stream failure while reading features");
    if (f.n < 2 || f.d < 1) throw Error(Errc::InvalidArgs, "feature matrix needs n >= 2 and d >= 1");
    return f;
}

FeatureMatrix load_features_tsv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    return load_features_tsv(in);
}

void save_features_tsv_file(const FeatureMatrix& features, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::IoError, "cannot open " + path);
    for (std::int32_t i = 0; i < features.n; ++i) {
        const double* xi = features.row(i);
        for (std::int32_t t = 0; t < features.d; ++t) {
            if (t) out << '\t';
            out << format_double(xi[t]);
        }
        out << '\n';
    }
    if (!out) throw Error(Errc::IoError, "write failure on " + path);
}

}  // namespace ggc
