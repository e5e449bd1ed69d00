#include <doctest.h>

#include <array>
#include <sstream>

#include "ggc/error.hpp"
#include "ggc/graph.hpp"
#include "ggc/io.hpp"
#include "support.hpp"

using namespace ggc;

TEST_CASE("single edge fixes n and degrees") {
    std::istringstream in("0 1 1.0\n");
    const SparseGraph g = load_edge_list(in);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.degree(0) == 1.0);
    CHECK(g.degree(1) == 1.0);
    CHECK(g.total_degree() == 2.0);
}

TEST_CASE("path graph degrees and comments") {
    std::istringstream in("# a path\n0 1 1\n\n1 2 1\n");
    const SparseGraph g = load_edge_list(in);
    CHECK(g.vertex_count() == 3);
    CHECK(g.degree(0) == 1.0);
    CHECK(g.degree(1) == 2.0);
    CHECK(g.degree(2) == 1.0);
}

TEST_CASE("same unordered pair twice is rejected") {
    std::istringstream in("0 1 1\n1 0 1\n");
    CHECK_THROWS_AS(load_edge_list(in), Error);
    std::istringstream again("0 1 1\n1 0 1\n");
    try {
        load_edge_list(again);
        FAIL("expected DuplicateEdge");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DuplicateEdge);
    }
}

TEST_CASE("ingest rejections") {
    auto code_of = [](const char* text) {
        std::istringstream in(text);
        try {
            load_edge_list(in);
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::IoError;  // not reached on the error fixtures
    };
    CHECK(code_of("0 0 1\n") == Errc::SelfLoop);
    CHECK(code_of("0 1 0\n") == Errc::NonPositiveWeight);
    CHECK(code_of("0 1 -2\n") == Errc::NonPositiveWeight);
    CHECK(code_of("0 2 1\n") == Errc::IsolatedVertex);  // vertex 1 has no edge
    CHECK(code_of("0 x 1\n") == Errc::ParseError);
    CHECK(code_of("0 1\n") == Errc::ParseError);
    CHECK(code_of("0 1 1 junk\n") == Errc::ParseError);
    CHECK(code_of("") == Errc::InvalidArgs);  // empty edge set
}

TEST_CASE("parse errors carry the line number") {
    std::istringstream in("0 1 1\nbroken\n");
    try {
        load_edge_list(in);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("laplacian entries") {
    const SparseGraph g = ggct::path3();
    CHECK(laplacian_entry(g, 0, 0) == 1.0);
    CHECK(laplacian_entry(g, 1, 1) == 2.0);
    CHECK(laplacian_entry(g, 0, 1) == -1.0);
    CHECK(laplacian_entry(g, 0, 2) == 0.0);
    CHECK_THROWS_AS(laplacian_entry(g, 0, 3), Error);
    CHECK_THROWS_AS(laplacian_entry(g, -1, 0), Error);
}

TEST_CASE("laplacian rows sum to zero") {
    const SparseGraph g = ggct::random_clr_graph(30, 3, 7);
    const std::int32_t n = g.vertex_count();
    double total = 0.0;
    for (VertexId i = 0; i < n; ++i) {
        double row = 0.0;
        for (VertexId j = 0; j < n; ++j) row += laplacian_entry(g, i, j);
        CHECK(std::abs(row) <= 1e-9);
        total += row;
    }
    CHECK(std::abs(total) <= 1e-9);
}

TEST_CASE("degrees match row sums") {
    const SparseGraph g = ggct::random_clr_graph(50, 5, 11);
    for (VertexId i = 0; i < g.vertex_count(); ++i) {
        double row = 0.0;
        for (double w : g.edge_weights(i)) row += w;
        CHECK(std::abs(row - g.degree(i)) <= 1e-12 * std::max(1.0, g.degree(i)));
    }
}

TEST_CASE("serialize then reload is identity on the canonical form") {
    const SparseGraph g = ggct::random_clr_graph(40, 4, 3);
    std::ostringstream out;
    save_edge_list(g, out);
    std::istringstream in(out.str());
    const SparseGraph h = load_edge_list(in);
    CHECK(h.vertex_count() == g.vertex_count());
    CHECK(h.row_offsets() == g.row_offsets());
    CHECK(h.col_indices() == g.col_indices());
    CHECK(h.weights() == g.weights());  // bit-exact via shortest round-trip formatting
    CHECK(h.degrees() == g.degrees());
}

TEST_CASE("edge weight lookup") {
    const SparseGraph g = ggct::path3();
    CHECK(g.weight(0, 1) == 1.0);
    CHECK(g.weight(1, 0) == 1.0);
    CHECK(g.weight(0, 2) == 0.0);
    CHECK_THROWS_AS(g.weight(0, 9), Error);
}

TEST_CASE("validation accepts canonical graphs") {
    const ValidationReport rep = validate(ggct::triangle());
    CHECK(rep.ok);
    CHECK(rep.issues.empty());
}

TEST_CASE("validation flags injected corruption") {
    auto has_code = [](const ValidationReport& rep, const std::string& code) {
        for (const auto& issue : rep.issues)
            if (issue.code == code) return true;
        return false;
    };

    SUBCASE("asymmetric weight") {
        // 0-1 edge whose mirror carries different bits
        const SparseGraph g = make_graph_unchecked(2, {0, 1, 2}, {1, 0}, {1.0, 1.5});
        const ValidationReport rep = validate(g);
        CHECK_FALSE(rep.ok);
        CHECK(has_code(rep, "SYMMETRY"));
    }
    SUBCASE("isolated vertex") {
        const SparseGraph g = make_graph_unchecked(3, {0, 1, 2, 2}, {1, 0}, {1.0, 1.0});
        const ValidationReport rep = validate(g);
        CHECK(has_code(rep, "ISOLATED"));
    }
    SUBCASE("self loop") {
        const SparseGraph g = make_graph_unchecked(2, {0, 2, 3}, {0, 1, 0}, {1.0, 1.0, 1.0});
        CHECK(has_code(validate(g), "SELF_LOOP"));
    }
    SUBCASE("column order") {
        const SparseGraph g = make_graph_unchecked(3, {0, 2, 3, 5}, {2, 1, 0, 1, 0}, {1.0, 1.0, 1.0, 1.0, 1.0});
        CHECK(has_code(validate(g), "ORDER"));
    }
    SUBCASE("non-positive weight") {
        const SparseGraph g = make_graph_unchecked(2, {0, 1, 2}, {1, 0}, {0.0, 0.0});
        CHECK(has_code(validate(g), "NON_POSITIVE_WEIGHT"));
    }
    SUBCASE("shape") {
        const SparseGraph g = make_graph_unchecked(2, {0, 1, 1}, {1, 0}, {1.0, 1.0});
        CHECK(has_code(validate(g), "SHAPE"));
    }
}

TEST_CASE("component counting") {
    CHECK(component_count(ggct::path3()) == 1);
    CHECK(component_count(ggct::two_disjoint_edges()) == 2);
}

TEST_CASE("from_edges input checks") {
    std::vector<WeightedEdge> negative{{-1, 0, 1.0}};
    CHECK_THROWS_AS(SparseGraph::from_edges(negative), Error);
    std::vector<WeightedEdge> dup{{0, 1, 1.0}, {0, 1, 2.0}};
    CHECK_THROWS_AS(SparseGraph::from_edges(dup), Error);
}
