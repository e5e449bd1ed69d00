#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ggc/engine.hpp"
#include "ggc/error.hpp"
#include "ggc/graph.hpp"
#include "ggc/io.hpp"
#include "ggc/knn.hpp"
#include "ggc/metrics.hpp"
#include "ggc/oracle.hpp"
#include "ggc/report.hpp"
#include "ggc/synthetic.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ggc::EngineOptions options_from_flags(const std::string& selection, const std::string& disconnected) {
    ggc::EngineOptions opt;
    opt.selection = selection == "min" ? ggc::Selection::MinDelta : ggc::Selection::MaxDelta;
    opt.disconnected =
        disconnected == "strict" ? ggc::DisconnectedPolicy::Strict : ggc::DisconnectedPolicy::Fallback;
    const char* audit = std::getenv("GGC_AUDIT");
    opt.audit = audit != nullptr && std::string(audit) == "1";
    return opt;
}

int run_build_graph(const std::string& features_path, int k, int clusters, bool zscore, const std::string& out) {
    ggc::FeatureMatrix f = ggc::load_features_tsv_file(features_path);
    if (k < 1) {
        if (clusters < 1) {
            std::cerr << "error: pass --k or --clusters\n";
            return 2;
        }
        k = ggc::default_k(f.n, clusters);
    }
    if (zscore) ggc::zscore_features(f);
    const ggc::SparseGraph g = ggc::build_clr_graph(f, k);
    ggc::save_edge_list_file(g, out);

    nlohmann::json j;
    j["n"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["k"] = k;
    std::cout << j.dump() << "\n";
    return 0;
}

int run_cluster(const std::string& graph_path, int c, const std::string& out, const std::string& report_path,
                const std::string& trace_path, const std::string& selection, const std::string& disconnected) {
    const ggc::EngineOptions opt = options_from_flags(selection, disconnected);

    const auto t_load = Clock::now();
    const ggc::SparseGraph g = ggc::load_edge_list_file(graph_path);
    const double load_ms = ms_since(t_load);

    ggc::RunResult result;
    const auto t_run = Clock::now();
    try {
        result = ggc::run(g, c, opt);
    } catch (const ggc::QueueExhaustedError& e) {
        ggc::save_labels_file(e.partial_labels(), out + ".partial");
        std::cerr << "error: " << e.what() << "; partial labels written to " << out << ".partial\n";
        return 3;
    }
    const double cluster_ms = ms_since(t_run);

    const auto t_write = Clock::now();
    ggc::save_labels_file(result.partition.labels, out);
    if (!trace_path.empty()) ggc::save_trace_file(result.trace, trace_path);
    if (!report_path.empty()) {
        ggc::RunReport rep = ggc::make_report(g, c, result, opt);
        rep.wall_time_ms["load"] = load_ms;
        rep.wall_time_ms["cluster"] = cluster_ms;
        rep.wall_time_ms["write"] = ms_since(t_write);
        ggc::save_report_file(rep, report_path);
    }

    nlohmann::json j;
    j["n"] = g.vertex_count();
    j["c"] = c;
    j["merges_executed"] = result.stats.merges_executed;
    j["fallback_merges"] = result.stats.fallback_merges;
    j["final_objective"] = result.trace.empty() ? static_cast<double>(g.vertex_count())
                                                : result.trace.back().objective_after;
    std::cout << j.dump() << "\n";
    return 0;
}

int run_eval(const std::string& pred_path, const std::string& truth_path, const std::string& graph_path) {
    const std::vector<std::int32_t> pred = ggc::load_labels_file(pred_path);
    const std::vector<std::int32_t> truth = ggc::load_labels_file(truth_path);

    nlohmann::json j;
    j["acc"] = ggc::acc(truth, pred);
    j["nmi"] = ggc::nmi(truth, pred);
    j["ari"] = ggc::ari(truth, pred);
    if (!graph_path.empty()) {
        const ggc::SparseGraph g = ggc::load_edge_list_file(graph_path);
        j["ncut"] = ggc::ncut(g, pred);
    }
    std::cout << j.dump() << "\n";
    return 0;
}

int run_oracle(const std::string& mode, const std::string& graph_path, int c, const std::string& out,
               const std::string& trace_path, const std::string& selection, const std::string& disconnected) {
    const ggc::SparseGraph g = ggc::load_edge_list_file(graph_path);
    nlohmann::json j;
    j["mode"] = mode;
    if (mode == "naive") {
        const ggc::EngineOptions opt = options_from_flags(selection, disconnected);
        const ggc::oracle::NaiveResult result = ggc::oracle::naive_run(g, c, opt);
        if (!out.empty()) ggc::save_labels_file(result.partition.labels, out);
        if (!trace_path.empty()) ggc::save_trace_file(result.trace, trace_path);
        j["n"] = g.vertex_count();
        j["c"] = c;
        j["merges_executed"] = static_cast<std::int64_t>(result.trace.size());
        j["final_objective"] = result.trace.empty() ? static_cast<double>(g.vertex_count())
                                                    : result.trace.back().objective_after;
    } else {
        const ggc::oracle::ExhaustiveResult result = ggc::oracle::exhaustive_best_ncut(g, c);
        if (!out.empty()) ggc::save_labels_file(result.partition.labels, out);
        j["n"] = g.vertex_count();
        j["c"] = c;
        j["optimum"] = result.ncut_value;
    }
    std::cout << j.dump() << "\n";
    return 0;
}

int run_bench(const std::string& sizes_csv, int k, int c, int trials, const std::string& generator,
              std::uint64_t seed) {
    std::vector<std::int64_t> sizes;
    for (std::size_t pos = 0; pos < sizes_csv.size();) {
        const std::size_t comma = sizes_csv.find(',', pos);
        const std::string tok = sizes_csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            sizes.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            std::cerr << "error: bad size '" << tok << "'\n";
            return 2;
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (sizes.empty()) {
        std::cerr << "error: --sizes is empty\n";
        return 2;
    }

    std::cout << "n,median_ms,queue_ops,k1_init\n";
    double prev_ms = 0.0;
    std::int64_t prev_n = 0;
    for (const std::int64_t requested : sizes) {
        ggc::SparseGraph g;
        if (generator == "grid") {
            const auto rows = static_cast<std::int32_t>(std::sqrt(static_cast<double>(requested)));
            const auto cols = static_cast<std::int32_t>((requested + rows - 1) / rows);
            g = ggc::make_grid_graph(rows, cols);
        } else if (generator == "rings") {
            const ggc::LabeledPoints pts = ggc::make_rings(static_cast<std::int32_t>(requested), 2.0, 0.05, seed);
            g = ggc::build_clr_graph(pts.features, k);
        } else {
            const auto per = static_cast<std::int32_t>(requested / c);
            const ggc::LabeledPoints pts = ggc::make_blobs(per, c, 10.0, 2, seed);
            g = ggc::build_clr_graph(pts.features, k);
        }
        const std::int64_t n = g.vertex_count();

        std::vector<double> times;
        ggc::EngineStats stats;
        for (int t = 0; t < trials; ++t) {
            const auto t0 = Clock::now();
            const ggc::RunResult result = ggc::run(g, c, {});
            times.push_back(ms_since(t0));
            stats = result.stats;
        }
        std::sort(times.begin(), times.end());
        const double median = times[times.size() / 2];

        std::cout << n << ',' << ggc::format_double(median) << ',' << stats.queue_ops << ','
                  << ggc::format_double(stats.k1_init) << "\n";

        // Instrumented counter against the complexity claim, C = 8.
        const double bound = 8.0 * static_cast<double>(n - c) * static_cast<double>(stats.k1_max) *
                             std::log2(static_cast<double>(n) * std::max(1.0, stats.k1_init));
        if (static_cast<double>(stats.queue_ops) > bound) {
            std::cerr << "error: queue_ops " << stats.queue_ops << " exceeds bound " << bound << " at n=" << n
                      << "\n";
            return 1;
        }
        // Growth must stay subquadratic between consecutive sizes; tiny
        // timings are all noise, so only meaningful baselines are compared.
        if (prev_n > 0 && prev_ms >= 5.0) {
            const double ratio = static_cast<double>(n) / static_cast<double>(prev_n);
            if (median / prev_ms > ratio * ratio) {
                std::cerr << "error: time grew x" << median / prev_ms << " from n=" << prev_n << " to n=" << n
                          << " (superquadratic)\n";
                return 1;
            }
        }
        prev_ms = median;
        prev_n = n;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedy normalized-cut graph clustering"};
    app.require_subcommand(1);

    auto* build = app.add_subcommand("build-graph", "construct a CLR-weighted k-NN graph from features");
    std::string b_features, b_out;
    int b_k = 0, b_clusters = 0;
    bool b_zscore = false;
    build->add_option("--features", b_features, "feature TSV, one sample per line")->required();
    build->add_option("--k", b_k, "neighbors per sample");
    build->add_option("--clusters", b_clusters, "invoke the default-k rule for this cluster count");
    build->add_flag("--zscore", b_zscore, "z-score each feature first");
    build->add_option("--out", b_out, "edge-list output path")->required();

    auto* cluster = app.add_subcommand("cluster", "greedy normalized-cut clustering of an edge list");
    std::string c_graph, c_out, c_report, c_trace;
    std::string c_selection = "max", c_disconnected = "fallback";
    int c_c = 0;
    cluster->add_option("--graph", c_graph, "edge-list input")->required();
    cluster->add_option("--clusters", c_c, "target cluster count")->required()->check(CLI::PositiveNumber);
    cluster->add_option("--out", c_out, "label output path")->required();
    cluster->add_option("--report", c_report, "JSON run report path");
    cluster->add_option("--trace", c_trace, "merge trace path");
    cluster->add_option("--selection", c_selection, "merge selection rule")
        ->check(CLI::IsMember({"max", "min"}));
    cluster->add_option("--disconnected", c_disconnected, "behavior when the graph has too many components")
        ->check(CLI::IsMember({"fallback", "strict"}));

    auto* eval = app.add_subcommand("eval", "clustering quality metrics");
    std::string e_pred, e_truth, e_graph;
    eval->add_option("--pred", e_pred, "predicted labels")->required();
    eval->add_option("--truth", e_truth, "ground-truth labels")->required();
    eval->add_option("--graph", e_graph, "edge list; adds ncut of --pred to the output");

    auto* oracle_cmd = app.add_subcommand("oracle", "reference implementations for validation");
    std::string o_mode, o_graph, o_out, o_trace;
    std::string o_selection = "max", o_disconnected = "fallback";
    int o_c = 0;
    oracle_cmd->add_option("--mode", o_mode, "naive or exhaustive")
        ->required()
        ->check(CLI::IsMember({"naive", "exhaustive"}));
    oracle_cmd->add_option("--graph", o_graph, "edge-list input")->required();
    oracle_cmd->add_option("--clusters", o_c, "target cluster count")->required()->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--out", o_out, "label output path");
    oracle_cmd->add_option("--trace", o_trace, "merge trace path (naive mode)");
    oracle_cmd->add_option("--selection", o_selection, "merge selection rule")
        ->check(CLI::IsMember({"max", "min"}));
    oracle_cmd->add_option("--disconnected", o_disconnected, "disconnected policy (naive mode)")
        ->check(CLI::IsMember({"fallback", "strict"}));

    auto* bench = app.add_subcommand("bench", "timing and complexity instrumentation on synthetic graphs");
    std::string n_sizes, n_generator = "blobs";
    int n_k = 10, n_clusters = 10, n_trials = 3;
    std::uint64_t n_seed = 0;
    bench->add_option("--sizes", n_sizes, "comma-separated vertex counts")->required();
    bench->add_option("--k", n_k, "graph construction k")->check(CLI::PositiveNumber);
    bench->add_option("--clusters", n_clusters, "target cluster count")->check(CLI::PositiveNumber);
    bench->add_option("--trials", n_trials, "timed repetitions per size")->check(CLI::PositiveNumber);
    bench->add_option("--generator", n_generator, "synthetic input family")
        ->check(CLI::IsMember({"blobs", "rings", "grid"}));
    bench->add_option("--seed", n_seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit clean, usage errors don't
    }

    try {
        if (build->parsed()) return run_build_graph(b_features, b_k, b_clusters, b_zscore, b_out);
        if (cluster->parsed())
            return run_cluster(c_graph, c_c, c_out, c_report, c_trace, c_selection, c_disconnected);
        if (eval->parsed()) return run_eval(e_pred, e_truth, e_graph);
        if (oracle_cmd->parsed()) return run_oracle(o_mode, o_graph, o_c, o_out, o_trace, o_selection, o_disconnected);
        if (bench->parsed()) return run_bench(n_sizes, n_k, n_clusters, n_trials, n_generator, n_seed);
    } catch (const ggc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
