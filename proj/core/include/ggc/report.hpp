#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ggc/engine.hpp"
#include "ggc/graph.hpp"

namespace ggc {

// Run metadata for machine consumption. Everything except wall_time_ms is a
// pure function of the input, so two runs on the same data serialize to the
// same bytes once timings are stripped.
struct RunReport {
    std::int64_t n = 0;
    std::int64_t c = 0;
    double k1_init = 0.0;
    std::int64_t k1_max = 0;
    std::int64_t merges_executed = 0;
    std::int64_t fallback_merges = 0;
    std::vector<double> objective_trace;  // initial value, then one per merge
    double final_objective = 0.0;
    std::int64_t queue_op_count = 0;
    std::int64_t queue_inserts = 0;
    double min_insert_delta = 0.0;
    std::string selection;     // "max" | "min"
    std::string disconnected;  // "fallback" | "strict"
    bool audit = false;
    bool seed_free = true;  // the clustering path draws no randomness
    std::map<std::string, double> wall_time_ms;  // per phase
};

RunReport make_report(const SparseGraph& graph, std::int32_t c, const RunResult& result,
                      const EngineOptions& options);

// Deterministic JSON (alphabetical keys, shortest round-trip numbers).
std::string to_json_string(const RunReport& report);

void save_report_file(const RunReport& report, const std::string& path);

}  // namespace ggc
