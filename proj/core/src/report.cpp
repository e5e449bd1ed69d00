#include "ggc/report.hpp"

#include <json.hpp>

#include "ggc/error.hpp"
#include "ggc/io.hpp"

namespace ggc {

RunReport make_report(const SparseGraph& graph, std::int32_t c, const RunResult& result,
                      const EngineOptions& options) {
    RunReport rep;
    rep.n = graph.vertex_count();
    rep.c = c;
    rep.k1_init = result.stats.k1_init;
    rep.k1_max = result.stats.k1_max;
    rep.merges_executed = result.stats.merges_executed;
    rep.fallback_merges = result.stats.fallback_merges;
    rep.objective_trace.reserve(result.trace.size() + 1);
    rep.objective_trace.push_back(static_cast<double>(rep.n));
    for (const MergeStep& s : result.trace) rep.objective_trace.push_back(s.objective_after);
    rep.final_objective = rep.objective_trace.back();
    rep.queue_op_count = result.stats.queue_ops;
    rep.queue_inserts = result.stats.queue_inserts;
    rep.min_insert_delta = result.stats.min_insert_delta;
    rep.selection = options.selection == Selection::MaxDelta ? "max" : "min";
    rep.disconnected = options.disconnected == DisconnectedPolicy::Fallback ? "fallback" : "strict";
    rep.audit = options.audit;
    rep.seed_free = true;
    return rep;
}

std::string to_json_string(const RunReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["c"] = report.c;
    j["k1_init"] = report.k1_init;
    j["k1_max"] = report.k1_max;
    j["merges_executed"] = report.merges_executed;
    j["fallback_merges"] = report.fallback_merges;
    j["objective_trace"] = report.objective_trace;
    j["final_objective"] = report.final_objective;
    j["queue_op_count"] = report.queue_op_count;
    j["queue_inserts"] = report.queue_inserts;
    j["min_insert_delta"] = report.min_insert_delta;
    j["config"] = {
        {"selection", report.selection},
        {"disconnected", report.disconnected},
        {"audit", report.audit},
        {"seed_free", report.seed_free},
    };
    j["wall_time_ms"] = report.wall_time_ms;
    return j.dump(2) + "\n";
}

void save_report_file(const RunReport& report, const std::string& path) {
    write_text_file(path, to_json_string(report));
}

}  // namespace ggc
