#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "momd/errors.hpp"
#include "momd/graph.hpp"

namespace momd {

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, p);
}

inline double parse_double(std::string_view s, const std::string& context) {
    double x = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size())
        raise(ErrorKind::FormatViolation, context + ": bad number '" + std::string(s) + "'");
    return x;
}

inline std::uint64_t parse_u64(std::string_view s, const std::string& context) {
    std::uint64_t x = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size())
        raise(ErrorKind::FormatViolation, context + ": bad integer '" + std::string(s) + "'");
    return x;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

// Plain-text graph format:
//   line 1:            <vertex-count> <edge-count> <metric>
//   next V lines:      <id> <lat> <lon>      (geographic) or <id> <x> <y> (planar)
//   next E lines:      <u> <v> [<weight>]    (weight defaults to straight-line)
inline void write_compact(const Graph& g, std::ostream& os) {
    os << g.vertex_count() << ' ' << g.edge_count() << ' ' << to_string(g.metric()) << '\n';
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const Position& p = g.position(v);
        os << v << ' ' << format_double(p.a) << ' ' << format_double(p.b) << '\n';
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (const Arc& a : g.neighbors(v))
            if (v < a.to)
                os << v << ' ' << a.to << ' ' << format_double(a.weight) << '\n';
}

inline void write_compact(const Graph& g, const std::string& path) {
    std::ofstream f(path);
    if (!f)
        raise(ErrorKind::Io, "cannot open " + path + " for writing");
    write_compact(g, f);
    f.flush();
    if (!f)
        raise(ErrorKind::Io, "write failed on " + path);
}

inline Graph read_compact(std::istream& is, const std::string& name = "<stream>") {
    std::string line;
    auto next_line = [&](const char* what) -> std::vector<std::string_view> {
        while (std::getline(is, line)) {
            auto tok = split_ws(line);
            if (!tok.empty())
                return tok;
        }
        raise(ErrorKind::FormatViolation,
              name + ": unexpected end of file, expected " + std::string(what));
    };

    auto head = next_line("header");
    if (head.size() != 3)
        raise(ErrorKind::FormatViolation, name + ": header must be 'V E metric'");
    std::uint64_t n = parse_u64(head[0], name + " header");
    std::uint64_t m = parse_u64(head[1], name + " header");
    MetricKind metric;
    if (head[2] == "geographic")
        metric = MetricKind::geographic;
    else if (head[2] == "planar")
        metric = MetricKind::planar;
    else
        raise(ErrorKind::FormatViolation,
              name + ": metric must be geographic or planar, got '" + std::string(head[2]) + "'");

    GraphBuilder b(metric);
    for (std::uint64_t i = 0; i < n; ++i) {
        auto tok = next_line("vertex record");
        if (tok.size() != 3)
            raise(ErrorKind::FormatViolation, name + ": vertex record needs 3 fields");
        std::uint64_t id = parse_u64(tok[0], name + " vertex id");
        if (id != i)
            raise(ErrorKind::FormatViolation,
                  name + ": vertex ids must be dense and ascending, expected " +
                      std::to_string(i) + " got " + std::to_string(id));
        b.add_vertex(Position{parse_double(tok[1], name + " coordinate"),
                              parse_double(tok[2], name + " coordinate")});
    }
    for (std::uint64_t e = 0; e < m; ++e) {
        auto tok = next_line("edge record");
        if (tok.size() != 2 && tok.size() != 3)
            raise(ErrorKind::FormatViolation, name + ": edge record needs 2 or 3 fields");
        std::uint64_t u = parse_u64(tok[0], name + " edge endpoint");
        std::uint64_t v = parse_u64(tok[1], name + " edge endpoint");
        if (u >= n || v >= n)
            raise(ErrorKind::FormatViolation, name + ": edge endpoint out of range");
        if (tok.size() == 3)
            b.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v),
                       parse_double(tok[2], name + " edge weight"));
        else
            b.add_edge_auto(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
    while (std::getline(is, line)) {
        if (!split_ws(line).empty())
            raise(ErrorKind::FormatViolation, name + ": trailing content after edge records");
    }
    return b.build();
}

inline Graph read_compact(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        raise(ErrorKind::Io, "cannot open " + path);
    return read_compact(f, path);
}

struct OdPair {
    VertexId origin;
    VertexId destination;
};

inline void write_od_pairs(const std::vector<OdPair>& pairs, const std::string& path) {
    std::ofstream f(path);
    if (!f)
        raise(ErrorKind::Io, "cannot open " + path + " for writing");
    for (const OdPair& p : pairs)
        f << p.origin << ' ' << p.destination << '\n';
    f.flush();
    if (!f)
        raise(ErrorKind::Io, "write failed on " + path);
}

inline std::vector<OdPair> read_od_pairs(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        raise(ErrorKind::Io, "cannot open " + path);
    std::vector<OdPair> out;
    std::string line;
    while (std::getline(f, line)) {
        auto tok = split_ws(line);
        if (tok.empty())
            continue;
        if (tok.size() != 2)
            raise(ErrorKind::FormatViolation, path + ": od record needs 2 fields");
        out.push_back(OdPair{static_cast<VertexId>(parse_u64(tok[0], path)),
                             static_cast<VertexId>(parse_u64(tok[1], path))});
    }
    return out;
}

// n origin/destination pairs drawn uniformly with origin != destination.
inline std::vector<OdPair> sample_od_pairs(const Graph& g, std::size_t n, std::uint64_t seed) {
    if (g.vertex_count() < 2)
        raise(ErrorKind::GraphTooSmall, "od sampling needs at least 2 vertices");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<VertexId> any(0, static_cast<VertexId>(g.vertex_count() - 1));
    std::uniform_int_distribution<VertexId> other(0, static_cast<VertexId>(g.vertex_count() - 2));
    std::vector<OdPair> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        VertexId o = any(rng);
        VertexId d = other(rng);
        if (d >= o)
            ++d;
        out.push_back(OdPair{o, d});
    }
    return out;
}

} // namespace momd
