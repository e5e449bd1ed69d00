#include "ggc/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "ggc/error.hpp"

namespace ggc {

namespace {

const char* skip_ws(const char* p, const char* end) {
    while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    return p;
}

// Strict scalar parse of the next token; returns past-the-end of the token.
template <typename T>
const char* parse_token(const char* p, const char* end, T& out, std::int64_t line_no, const char* what) {
    p = skip_ws(p, end);
    auto [ptr, ec] = std::from_chars(p, end, out);
    if (ec != std::errc()) {
        throw Error(Errc::ParseError, std::string("line ") + std::to_string(line_no) + ": expected " + what);
    }
    return ptr;
}

void expect_line_end(const char* p, const char* end, std::int64_t line_no) {
    p = skip_ws(p, end);
    if (p != end && *p != '#') {
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": trailing characters");
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw Error(Errc::IoError, "double formatting failed");
    return std::string(buf, ptr);
}

SparseGraph load_edge_list(std::istream& in) {
    std::vector<WeightedEdge> edges;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        p = skip_ws(p, end);
        if (p == end || *p == '#') continue;
        WeightedEdge e;
        p = parse_token(p, end, e.u, line_no, "vertex id");
        p = parse_token(p, end, e.v, line_no, "vertex id");
        p = parse_token(p, end, e.w, line_no, "weight");
        expect_line_end(p, end, line_no);
        edges.push_back(e);
    }
    if (in.bad()) throw Error(Errc::IoError, "stream failure while reading edge list");
    return SparseGraph::from_edges(edges);
}

SparseGraph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    return load_edge_list(in);
}

void save_edge_list(const SparseGraph& graph, std::ostream& out) {
    for (VertexId i = 0; i < graph.vertex_count(); ++i) {
        const auto nbrs = graph.neighbors(i);
        const auto ws = graph.edge_weights(i);
        for (std::size_t q = 0; q < nbrs.size(); ++q) {
            if (nbrs[q] <= i) continue;  // each pair once, smaller endpoint first
            out << i << ' ' << nbrs[q] << ' ' << format_double(ws[q]) << '\n';
        }
    }
    if (!out) throw Error(Errc::IoError, "stream failure while writing edge list");
}

void save_edge_list_file(const SparseGraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::IoError, "cannot open " + path);
    save_edge_list(graph, out);
}

std::vector<std::int32_t> load_labels(std::istream& in) {
    std::vector<std::int32_t> labels;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        p = skip_ws(p, end);
        if (p == end || *p == '#') continue;
        std::int32_t value = 0;
        p = parse_token(p, end, value, line_no, "label");
        expect_line_end(p, end, line_no);
        if (value < 0) throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": negative label");
        labels.push_back(value);
    }
    if (in.bad()) throw Error(Errc::IoError, "stream failure while reading labels");
    return labels;
}

std::vector<std::int32_t> load_labels_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    return load_labels(in);
}

void save_labels(const std::vector<std::int32_t>& labels, std::ostream& out) {
    for (std::int32_t v : labels) out << v << '\n';
    if (!out) throw Error(Errc::IoError, "stream failure while writing labels");
}

void save_labels_file(const std::vector<std::int32_t>& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::IoError, "cannot open " + path);
    save_labels(labels, out);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(Errc::IoError, "read failure on " + path);
    return std::move(buf).str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot open " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(Errc::IoError, "write failure on " + path);
}

}  // namespace ggc
