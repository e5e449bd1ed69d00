// Acceptance gate: exercises the engine, oracles, metrics, and CLI against
// the project's nine ship criteria and prints one PASS/FAIL line for each.
// All workloads run first (several criteria aggregate over every run), then
// the verdicts are printed in order. Exit code 0 iff all nine pass.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ggc/engine.hpp"
#include "ggc/error.hpp"
#include "ggc/graph.hpp"
#include "ggc/io.hpp"
#include "ggc/knn.hpp"
#include "ggc/metrics.hpp"
#include "ggc/oracle.hpp"
#include "ggc/synthetic.hpp"
#include "support.hpp"

#ifndef GGC_CLI_BIN
#error "GGC_CLI_BIN must point at the ggc executable"
#endif

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using nlohmann::json;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) {
            pass = false;
            detail = why;
        }
    }
};

// Shared accumulators. Criteria 2-4 are statements about every run the gate
// performs, so each engine/oracle invocation below reports into these.
struct Totals {
    // criterion 2: telescoping + monotonicity over every recorded trace
    std::int64_t traces = 0;
    std::int64_t steps = 0;
    Verdict telescoping;

    // criterion 3: delta sign across all queue insertions
    std::int64_t inserts = 0;
    double min_insert_delta = std::numeric_limits<double>::infinity();

    // criterion 4: conservation audits
    std::int64_t audited_runs = 0;
    std::int64_t audits = 0;
    double max_objective_dev = 0.0;
    double max_degree_dev = 0.0;
    double max_cut_dev = 0.0;
    Verdict audit;
};

Totals totals;

void check_trace(const ggc::MergeTrace& trace, std::int32_t n, const std::string& origin) {
    ++totals.traces;
    double prev = static_cast<double>(n);
    for (const ggc::MergeStep& s : trace) {
        ++totals.steps;
        const double gap = std::abs(prev - s.delta - s.objective_after);
        if (gap > 1e-10) {
            totals.telescoping.fail(origin + " step " + std::to_string(s.step) + ": |f_prev - delta - f_after| = " +
                                    ggc::format_double(gap));
        }
        if (s.objective_after > prev + 1e-12) {
            totals.telescoping.fail(origin + " step " + std::to_string(s.step) + ": objective increased");
        }
        prev = s.objective_after;
    }
    if (prev < -1e-12) totals.telescoping.fail(origin + ": final objective " + ggc::format_double(prev));
}

void absorb_stats(const ggc::EngineStats& stats, bool audited) {
    totals.inserts += stats.queue_inserts;
    totals.min_insert_delta = std::min(totals.min_insert_delta, stats.min_insert_delta);
    if (audited) {
        ++totals.audited_runs;
        totals.audits += stats.audits;
        totals.max_objective_dev = std::max(totals.max_objective_dev, stats.max_objective_dev);
        totals.max_degree_dev = std::max(totals.max_degree_dev, stats.max_degree_dev);
        totals.max_cut_dev = std::max(totals.max_cut_dev, stats.max_cut_dev);
    }
}

ggc::RunResult tracked_run(const ggc::SparseGraph& g, std::int32_t c, const ggc::EngineOptions& opt,
                           const std::string& origin) {
    ggc::RunResult res;
    try {
        res = ggc::run(g, c, opt);
    } catch (const ggc::Error& e) {
        if (e.code() == ggc::Errc::AuditFailure) {
            totals.audit.fail(origin + ": " + e.what());
            ++totals.audited_runs;
            throw;
        }
        throw;
    }
    check_trace(res.trace, g.vertex_count(), origin);
    absorb_stats(res.stats, opt.audit);
    return res;
}

const fs::path& scratch_root() {
    static const fs::path dir = [] {
        const fs::path p = fs::temp_directory_path() / "ggc_acceptance";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string("'") + GGC_CLI_BIN + "' " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// ---- criterion 1: engine vs naive oracle on randomized CLR graphs --------

Verdict criterion1() {
    Verdict v;
    const auto t0 = Clock::now();
    const std::int32_t ks[3] = {3, 5, 10};
    for (int t = 0; t < 100; ++t) {
        const std::int32_t n = 20 + (t * 97) % 181;  // spread over [20, 200]
        const std::int32_t k = ks[t % 3];
        const std::int32_t c = 2 + t % 7;
        const std::string origin = "c1." + std::to_string(t);

        const ggc::SparseGraph g = ggct::random_clr_graph(n, k, 1000 + static_cast<std::uint64_t>(t));
        ggc::EngineOptions opt;
        opt.audit = true;
        const ggc::RunResult fast = tracked_run(g, c, opt, origin);

        const ggc::oracle::NaiveResult slow = ggc::oracle::naive_run(g, c, opt);
        check_trace(slow.trace, n, origin + ".naive");

        if (fast.partition.labels != slow.partition.labels) {
            v.fail(origin + ": final labels differ");
            continue;
        }
        if (fast.trace.size() != slow.trace.size()) {
            v.fail(origin + ": trace lengths differ");
            continue;
        }
        for (std::size_t s = 0; s < fast.trace.size(); ++s) {
            const ggc::MergeStep& a = fast.trace[s];
            const ggc::MergeStep& b = slow.trace[s];
            if (a.i != b.i || a.j != b.j || a.e != b.e) {
                v.fail(origin + " step " + std::to_string(s + 1) + ": merge pair differs");
                break;
            }
            if (std::abs(a.delta - b.delta) > 1e-9 || std::abs(a.objective_after - b.objective_after) > 1e-9) {
                v.fail(origin + " step " + std::to_string(s + 1) + ": objective trace deviates");
                break;
            }
        }
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 120.0) v.fail("took " + ggc::format_double(elapsed) + "s (budget 120s)");
    if (v.pass) {
        std::ostringstream d;
        d << "100/100 graphs, identical merges and labels, traces within 1e-9, " << elapsed << "s";
        v.detail = d.str();
    }
    return v;
}

// ---- criterion 5: repeated CLI runs are byte-identical --------------------

Verdict criterion5() {
    Verdict v;
    const fs::path dir = scratch_root();
    const ggc::LabeledPoints pts = ggc::make_blobs(60, 3, 10.0, 2, 4242);
    const ggc::SparseGraph g = ggc::build_clr_graph(pts.features, 5);
    const std::string graph = (dir / "det.edges").string();
    ggc::save_edge_list_file(g, graph);

    std::string labels0, trace0, report0;
    for (int t = 0; t < 20; ++t) {
        const std::string out = (dir / ("det_" + std::to_string(t) + ".labels")).string();
        const std::string trace = (dir / ("det_" + std::to_string(t) + ".trace")).string();
        const std::string report = (dir / ("det_" + std::to_string(t) + ".json")).string();
        const int rc = run_cli("cluster --graph '" + graph + "' --clusters 3 --out '" + out + "' --trace '" +
                               trace + "' --report '" + report + "'");
        if (rc != 0) {
            v.fail("run " + std::to_string(t) + " exited " + std::to_string(rc));
            return v;
        }
        const std::string labels = ggc::read_text_file(out);
        const std::string trace_text = ggc::read_text_file(trace);
        // wall-clock timings are the one legitimately run-dependent field;
        // everything else must serialize identically
        json rep = json::parse(ggc::read_text_file(report));
        rep.erase("wall_time_ms");
        const std::string report_text = rep.dump();
        if (t == 0) {
            labels0 = labels;
            trace0 = trace_text;
            report0 = report_text;
        } else {
            if (labels != labels0) v.fail("labels diverged on run " + std::to_string(t));
            if (trace_text != trace0) v.fail("trace diverged on run " + std::to_string(t));
            if (report_text != report0) v.fail("report diverged on run " + std::to_string(t));
        }
    }
    if (v.pass) v.detail = "20 runs: labels, trace, and report (timings aside) byte-identical";
    return v;
}

// ---- criterion 6: greedy vs exhaustive optimum on tiny graphs -------------

Verdict criterion6() {
    Verdict v;
    int matched = 0;
    for (int t = 0; t < 50; ++t) {
        const std::int32_t n = 5 + t % 6;
        const std::int32_t c = 2 + t % 2;
        const std::string origin = "c6." + std::to_string(t);
        const ggc::SparseGraph g = ggct::random_clr_graph(n, 2, 500 + static_cast<std::uint64_t>(t), 2);

        const ggc::RunResult greedy = tracked_run(g, c, {}, origin);
        const double greedy_ncut = ggc::ncut(g, greedy.partition.labels, c);
        const double optimum = ggc::oracle::exhaustive_best_ncut(g, c).ncut_value;

        if (greedy_ncut < optimum - 1e-12) {
            v.fail(origin + ": greedy " + ggc::format_double(greedy_ncut) + " below optimum " +
                   ggc::format_double(optimum));
        }
        if (std::abs(greedy_ncut - optimum) <= 1e-9) ++matched;
    }
    if (v.pass) {
        v.detail = "greedy never beat the optimum; matched it on " + std::to_string(matched) + "/50";
        if (matched < 25) v.detail += " - REVIEW: below the 50% yardstick (not a rejection)";
    }
    return v;
}

// ---- criterion 7: clustering quality on synthetic shapes ------------------

Verdict criterion7() {
    Verdict v;
    {
        const ggc::LabeledPoints pts = ggc::make_blobs(500, 5, 8.0, 2, 42);
        const ggc::SparseGraph g = ggc::build_clr_graph(pts.features, 10);
        ggc::EngineOptions opt;
        opt.audit = true;
        const ggc::RunResult res = tracked_run(g, 5, opt, "c7.blobs");
        const double a = ggc::acc(pts.labels, res.partition.labels);
        const double m = ggc::nmi(pts.labels, res.partition.labels);
        if (a < 0.99) v.fail("blobs ACC " + ggc::format_double(a) + " < 0.99");
        if (m < 0.99) v.fail("blobs NMI " + ggc::format_double(m) + " < 0.99");
        if (v.pass) v.detail = "blobs ACC " + ggc::format_double(a) + ", NMI " + ggc::format_double(m);
    }
    {
        const ggc::LabeledPoints pts = ggc::make_rings(1000, 2.0, 0.05, 43);
        const ggc::SparseGraph g = ggc::build_clr_graph(pts.features, 10);
        ggc::EngineOptions opt;
        opt.audit = true;
        const ggc::RunResult res = tracked_run(g, 2, opt, "c7.rings");
        const double a = ggc::acc(pts.labels, res.partition.labels);
        if (a < 0.90) v.fail("rings ACC " + ggc::format_double(a) + " < 0.90");
        if (v.pass) v.detail += "; rings ACC " + ggc::format_double(a);
    }
    return v;
}

// ---- criterion 8: desk-scale speed and near-linear scaling ----------------

struct ScalePoint {
    std::int64_t n = 0;
    double median_s = 0.0;
};

bool queue_ops_within_bound(const ggc::EngineStats& stats, std::int64_t n, std::int64_t c) {
    const double bound = 8.0 * static_cast<double>(n - c) * static_cast<double>(stats.k1_max) *
                         std::log2(static_cast<double>(n) * std::max(1.0, stats.k1_init));
    return static_cast<double>(stats.queue_ops) <= bound;
}

Verdict criterion8() {
    Verdict v;

    // headline run: n = 60000, c = 10, k = 10
    {
        const ggc::LabeledPoints pts = ggc::make_blobs(6000, 10, 10.0, 2, 77);
        const ggc::SparseGraph g = ggc::build_clr_graph(pts.features, 10);

        // audited pass feeds the conservation criterion (untimed)
        ggc::EngineOptions audited;
        audited.audit = true;
        const ggc::RunResult checked = tracked_run(g, 10, audited, "c8.n60000.audited");
        if (!queue_ops_within_bound(checked.stats, g.vertex_count(), 10)) {
            v.fail("queue_ops bound violated on the audited n=60000 run");
        }

        const auto t0 = Clock::now();
        const ggc::RunResult timed = tracked_run(g, 10, {}, "c8.n60000");
        const double elapsed = seconds_since(t0);
        if (!queue_ops_within_bound(timed.stats, g.vertex_count(), 10)) {
            v.fail("queue_ops bound violated on the timed n=60000 run");
        }
        if (elapsed > 10.0) {
            v.fail("n=60000 clustering took " + ggc::format_double(elapsed) + "s (budget 10s)");
        }
        if (v.pass) v.detail = "n=60000 in " + ggc::format_double(elapsed) + "s";
    }

    // Doubling ladder. The box shares its last-level cache with other
    // tenants, so contention arrives in bursts lasting whole trial blocks;
    // the sizes are therefore timed interleaved, round-robin, so a burst
    // degrades every rung about equally instead of skewing one ratio. One
    // untimed warmup per size absorbs first-touch page faults, then the
    // median over 9 rounds is compared.
    const std::vector<std::int64_t> ladder = {25000, 50000, 100000};
    std::vector<ggc::SparseGraph> graphs;
    for (const std::int64_t n : ladder) {
        const ggc::LabeledPoints pts =
            ggc::make_blobs(static_cast<std::int32_t>(n / 10), 10, 10.0, 2, 78);
        graphs.push_back(ggc::build_clr_graph(pts.features, 10));
        tracked_run(graphs.back(), 10, {}, "c8.n" + std::to_string(n) + ".warmup");
    }
    std::vector<std::vector<double>> times(ladder.size());
    for (int round = 0; round < 9; ++round) {
        for (std::size_t s = 0; s < ladder.size(); ++s) {
            const auto t0 = Clock::now();
            const ggc::RunResult res = tracked_run(
                graphs[s], 10, {}, "c8.n" + std::to_string(ladder[s]) + ".r" + std::to_string(round));
            times[s].push_back(seconds_since(t0));
            if (!queue_ops_within_bound(res.stats, graphs[s].vertex_count(), 10)) {
                v.fail("queue_ops bound violated at n=" + std::to_string(ladder[s]));
            }
        }
    }
    std::vector<ScalePoint> points;
    for (std::size_t s = 0; s < ladder.size(); ++s) {
        std::sort(times[s].begin(), times[s].end());
        points.push_back({ladder[s], times[s][times[s].size() / 2]});
    }
    for (std::size_t s = 1; s < points.size(); ++s) {
        const double ratio = points[s].median_s / points[s - 1].median_s;
        if (ratio > 2.6) {
            v.fail("t(" + std::to_string(points[s].n) + ")/t(" + std::to_string(points[s - 1].n) + ") = " +
                   ggc::format_double(ratio) + " > 2.6");
        }
    }
    if (v.pass) {
        std::ostringstream d;
        d << v.detail << "; ladder";
        for (const ScalePoint& p : points) d << " " << p.n << ":" << p.median_s << "s";
        v.detail = d.str();
    }
    return v;
}

// ---- criterion 9: metric fixtures ------------------------------------------

Verdict criterion9() {
    Verdict v;
    const std::vector<std::int32_t> a0011 = {0, 0, 1, 1};
    const std::vector<std::int32_t> a0101 = {0, 1, 0, 1};
    const std::vector<std::int32_t> same = {0, 0, 0, 0};

    auto expect = [&v](const char* name, double got, double want) {
        if (std::abs(got - want) > 1e-12) {
            v.fail(std::string(name) + " = " + ggc::format_double(got) + ", expected " + ggc::format_double(want));
        }
    };

    expect("nmi(crossed)", ggc::nmi(a0011, a0101), 0.0);
    expect("nmi(identical)", ggc::nmi(a0011, a0011), 1.0);
    expect("nmi(single,single)", ggc::nmi(same, same), 1.0);
    expect("ari(crossed)", ggc::ari(a0011, a0101), -0.5);
    expect("ari(constant)", ggc::ari(a0011, same), 0.0);
    expect("acc(relabeled)", ggc::acc({1, 1, 2}, {2, 2, 1}), 1.0);
    expect("acc(crossed)", ggc::acc(a0011, a0101), 0.5);
    expect("ncut(unit edge split)", ggc::ncut(ggct::unit_edge(), {0, 1}), 2.0);
    expect("ncut(path split)", ggc::ncut(ggct::path3(), {0, 0, 1}), 4.0 / 3.0);
    expect("ncut(all one)", ggc::ncut(ggct::path3(), {0, 0, 0}), 0.0);
    if (v.pass) v.detail = "all tagged nmi/ari/acc/ncut fixtures within 1e-12";
    return v;
}

}  // namespace

int main() {
    Verdict results[9];

    auto guard = [](Verdict& slot, auto&& work) {
        try {
            slot = work();
        } catch (const std::exception& e) {
            slot.fail(std::string("exception: ") + e.what());
        }
    };

    guard(results[0], criterion1);
    guard(results[4], criterion5);
    guard(results[5], criterion6);
    guard(results[6], criterion7);
    guard(results[7], criterion8);
    guard(results[8], criterion9);

    // aggregate criteria, evaluated after all workloads have reported
    results[1] = totals.telescoping;
    if (results[1].pass) {
        results[1].detail = "telescoping within 1e-10 and nonincreasing across " + std::to_string(totals.traces) +
                            " traces / " + std::to_string(totals.steps) + " steps";
    }

    if (totals.inserts < 100000) {
        results[2].fail("only " + std::to_string(totals.inserts) + " queue insertions sampled (need 1e5)");
    } else if (totals.min_insert_delta < -1e-12) {
        results[2].fail("minimum inserted delta " + ggc::format_double(totals.min_insert_delta));
    } else {
        results[2].detail = std::to_string(totals.inserts) + " insertions, min delta " +
                            ggc::format_double(totals.min_insert_delta);
    }

    results[3] = totals.audit;
    if (results[3].pass && totals.audits < 1) results[3].fail("no audit points executed");
    if (results[3].pass) {
        std::ostringstream d;
        d << totals.audits << " audits over " << totals.audited_runs << " runs, max rel dev (objective "
          << totals.max_objective_dev << ", degree " << totals.max_degree_dev << ", cut " << totals.max_cut_dev
          << ") all <= 1e-9";
        results[3].detail = d.str();
        if (totals.max_objective_dev > 1e-9 || totals.max_degree_dev > 1e-9 || totals.max_cut_dev > 1e-9) {
            results[3].fail("audit deviation exceeded 1e-9");
        }
    }

    static const char* kNames[9] = {
        "oracle trace equivalence",
        "telescoping and monotonicity",
        "delta nonnegativity at queue insertion",
        "conservation invariants at audit points",
        "determinism across repeated runs",
        "greedy vs exhaustive optimum",
        "clustering quality on synthetic shapes",
        "desk-scale speed and near-linear scaling",
        "metric unit fixtures",
    };

    int failures = 0;
    for (int s = 0; s < 9; ++s) {
        const Verdict& r = results[s];
        if (!r.pass) ++failures;
        std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << s + 1 << ": " << kNames[s]
                  << (r.detail.empty() ? "" : " - " + r.detail) << "\n";
    }
    return failures == 0 ? 0 : 1;
}
