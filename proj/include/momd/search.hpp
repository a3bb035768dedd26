#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "momd/errors.hpp"
#include "momd/graph.hpp"

namespace momd {

enum class SearchStatus { Found, Unreachable, Degenerate, SearchError };

inline const char* to_string(SearchStatus s) {
    switch (s) {
    case SearchStatus::Found:       return "found";
    case SearchStatus::Unreachable: return "unreachable";
    case SearchStatus::Degenerate:  return "degenerate";
    case SearchStatus::SearchError: return "error";
    }
    return "unknown";
}

inline SearchStatus parse_status(std::string_view s) {
    if (s == "found") return SearchStatus::Found;
    if (s == "unreachable") return SearchStatus::Unreachable;
    if (s == "degenerate") return SearchStatus::Degenerate;
    if (s == "error") return SearchStatus::SearchError;
    raise(ErrorKind::FormatViolation, "unknown search status '" + std::string(s) + "'");
}

struct SearchResult {
    SearchStatus status = SearchStatus::Unreachable;
    std::vector<VertexId> path; // origin..goal inclusive when found
    std::uint32_t hops = 0;
    std::uint64_t expansions = 0;
    std::int64_t elapsed_us = 0;
    double distance = std::numeric_limits<double>::infinity();
};

struct SearchOptions {
    // Allow a finalized vertex back onto the frontier when a strictly
    // smaller g is found. Needed when the heuristic can overestimate.
    bool reopen_closed = false;
};

// Scratch arrays reused across searches. Epoch stamps avoid clearing them
// between runs; one workspace serves graphs of different sizes.
class SearchWorkspace {
public:
    void begin(std::size_t n) {
        if (g_.size() < n) {
            g_.resize(n);
            parent_.resize(n);
            closed_.resize(n);
            stamp_.resize(n, 0);
        }
        ++epoch_;
        if (epoch_ == 0) { // stamp wrap-around: invalidate everything
            std::fill(stamp_.begin(), stamp_.end(), 0u);
            epoch_ = 1;
        }
    }

    void touch(VertexId v) {
        if (stamp_[v] != epoch_) {
            stamp_[v] = epoch_;
            g_[v] = std::numeric_limits<double>::infinity();
            parent_[v] = kNoVertex;
            closed_[v] = 0;
        }
    }

    double& g(VertexId v) { return g_[v]; }
    VertexId& parent(VertexId v) { return parent_[v]; }
    std::uint8_t& closed(VertexId v) { return closed_[v]; }

private:
    std::vector<double> g_;
    std::vector<VertexId> parent_;
    std::vector<std::uint8_t> closed_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
};

namespace detail {

struct HeapEntry {
    double f;
    double g;
    VertexId v;
};

// min-heap on (f, g, vertex id) so expansion order is deterministic
struct HeapCmp {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g > b.g;
        return a.v > b.v;
    }
};

} // namespace detail

// Best-first search from origin to goal. The heuristic is any callable
// double(VertexId). Terminates when the goal is popped; an entry is stale
// when its g no longer matches the label, and finalized vertices are
// re-expanded only in reopen mode. Expansions count non-stale pops.
template <class Heuristic>
SearchResult astar(const Graph& graph, VertexId origin, VertexId goal, Heuristic&& h,
                   const SearchOptions& opts = {}, SearchWorkspace* workspace = nullptr) {
    auto t0 = std::chrono::steady_clock::now();
    if (graph.vertex_count() == 0)
        raise(ErrorKind::EmptyGraph, "search needs a non-empty graph");
    graph.position(origin); // UnknownVertex checks
    graph.position(goal);

    SearchWorkspace local;
    SearchWorkspace& ws = workspace ? *workspace : local;
    ws.begin(graph.vertex_count());

    std::priority_queue<detail::HeapEntry, std::vector<detail::HeapEntry>, detail::HeapCmp> open;
    ws.touch(origin);
    ws.g(origin) = 0.0;
    open.push({h(origin), 0.0, origin});

    SearchResult res;
    std::uint64_t expansions = 0;
    bool found = false;
    while (!open.empty()) {
        detail::HeapEntry e = open.top();
        open.pop();
        if (e.g != ws.g(e.v))
            continue; // stale entry
        if (ws.closed(e.v))
            continue;
        ws.closed(e.v) = 1;
        ++expansions;
        if (e.v == goal) {
            found = true;
            break;
        }
        for (const Arc& a : graph.neighbors(e.v)) {
            ws.touch(a.to);
            double nd = e.g + a.weight;
            if (nd < ws.g(a.to)) {
                if (ws.closed(a.to)) {
                    if (!opts.reopen_closed)
                        continue;
                    ws.closed(a.to) = 0;
                }
                ws.g(a.to) = nd;
                ws.parent(a.to) = e.v;
                open.push({nd + h(a.to), nd, a.to});
            }
        }
    }

    res.expansions = expansions;
    if (found) {
        res.status = SearchStatus::Found;
        res.distance = ws.g(goal);
        for (VertexId v = goal;; v = ws.parent(v)) {
            res.path.push_back(v);
            if (v == origin)
                break;
        }
        std::reverse(res.path.begin(), res.path.end());
        res.hops = static_cast<std::uint32_t>(res.path.size() - 1);
    }
    res.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

// A* with the straight-line admissible heuristic towards the goal vertex.
inline SearchResult astar_straight_line(const Graph& graph, VertexId origin, VertexId goal,
                                        const SearchOptions& opts = {},
                                        SearchWorkspace* workspace = nullptr) {
    Position target = graph.position(goal);
    return astar(
        graph, origin, goal,
        [&graph, target](VertexId v) { return graph.straight_line_to(v, target); }, opts,
        workspace);
}

inline SearchResult dijkstra(const Graph& graph, VertexId origin, VertexId goal,
                             SearchWorkspace* workspace = nullptr) {
    return astar(graph, origin, goal, [](VertexId) { return 0.0; }, SearchOptions{}, workspace);
}

struct DistanceMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> cells; // row-major, infinity when unreachable

    double at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }
};

inline constexpr std::size_t kFloydWarshallLimit = 2000;

// Exact all-pairs distances restricted to the given origin rows and
// destination columns, via Floyd-Warshall over the whole graph. Guarded to
// small graphs; this is the reference oracle, not a production path.
inline DistanceMatrix floyd_warshall_region(const Graph& graph,
                                            const std::vector<VertexId>& origins,
                                            const std::vector<VertexId>& destinations) {
    const std::size_t n = graph.vertex_count();
    if (n == 0)
        raise(ErrorKind::EmptyGraph, "floyd_warshall_region needs a non-empty graph");
    if (n > kFloydWarshallLimit)
        raise(ErrorKind::GraphTooLarge,
              "floyd_warshall_region is limited to " + std::to_string(kFloydWarshallLimit) +
                  " vertices, got " + std::to_string(n));
    for (VertexId v : origins)
        graph.position(v);
    for (VertexId v : destinations)
        graph.position(v);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(n * n, inf);
    for (std::size_t v = 0; v < n; ++v)
        d[v * n + v] = 0.0;
    for (VertexId u = 0; u < n; ++u)
        for (const Arc& a : graph.neighbors(u))
            d[u * n + a.to] = std::min(d[u * n + a.to], a.weight);

    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            double dik = d[i * n + k];
            if (dik == inf)
                continue;
            const double* dk = d.data() + k * n;
            double* di = d.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) {
                double cand = dik + dk[j];
                if (cand < di[j])
                    di[j] = cand;
            }
        }

    DistanceMatrix out;
    out.rows = origins.size();
    out.cols = destinations.size();
    out.cells.resize(out.rows * out.cols);
    for (std::size_t i = 0; i < out.rows; ++i)
        for (std::size_t j = 0; j < out.cols; ++j)
            out.cells[i * out.cols + j] = d[origins[i] * n + destinations[j]];
    return out;
}

} // namespace momd
