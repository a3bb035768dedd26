#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "momd/coarsen.hpp"
#include "momd/errors.hpp"
#include "momd/graph.hpp"
#include "momd/io.hpp"
#include "momd/search.hpp"

namespace momd {

enum class StrategyKind { collapse_single, brute_force };

inline const char* to_string(StrategyKind s) {
    return s == StrategyKind::collapse_single ? "collapse" : "brute";
}

inline StrategyKind parse_strategy(std::string_view s) {
    if (s == "collapse") return StrategyKind::collapse_single;
    if (s == "brute") return StrategyKind::brute_force;
    raise(ErrorKind::ConfigInvalid, "unknown strategy '" + std::string(s) + "'");
}

struct MomdQuery {
    VertexId origin = kNoVertex;      // origin region seed
    VertexId destination = kNoVertex; // destination region seed
    double radius = 0.0;
};

struct MomdOutcome {
    SearchResult search;
    std::uint64_t searches = 0;       // shortest-path runs executed
    std::uint64_t collapsed_nodes = 0; // |origin members| + |destination members|
};

namespace detail {

// Shortest path between two vertices inside the subgraph induced by the
// given vertex set. Used when origin and destination regions overlap.
inline SearchResult restricted_dijkstra(const Graph& g, const std::vector<VertexId>& allowed,
                                        VertexId origin, VertexId destination) {
    std::unordered_map<VertexId, VertexId> local;
    local.reserve(allowed.size());
    GraphBuilder b(g.metric());
    for (VertexId v : allowed)
        local[v] = b.add_vertex(g.position(v));
    for (VertexId v : allowed)
        for (const Arc& a : g.neighbors(v)) {
            auto it = local.find(a.to);
            if (it != local.end() && v < a.to)
                b.add_edge(local[v], it->second, a.weight);
        }
    Graph sub = b.build();
    SearchResult res = dijkstra(sub, local.at(origin), local.at(destination));
    for (VertexId& v : res.path)
        v = allowed[v];
    return res;
}

inline bool regions_overlap(const Region& a, const Region& b) {
    std::size_t i = 0, j = 0;
    while (i < a.members.size() && j < b.members.size()) {
        if (a.members[i] < b.members[j]) ++i;
        else if (a.members[i] > b.members[j]) ++j;
        else return true;
    }
    return false;
}

} // namespace detail

// Collapse both regions into super vertices and run one A* between them.
// The heuristic aims at the destination centre, which can overestimate for
// other members, so the search reopens finalized vertices.
inline MomdOutcome run_collapse(const Graph& g, const MomdQuery& q,
                                SearchWorkspace* ws = nullptr) {
    Region region_o = build_region(g, q.origin, q.radius);
    Region region_d = build_region(g, q.destination, q.radius);

    MomdOutcome out;
    out.collapsed_nodes = region_o.members.size() + region_d.members.size();
    out.searches = 1;

    if (detail::regions_overlap(region_o, region_d)) {
        std::vector<VertexId> allowed;
        allowed.reserve(region_o.members.size() + region_d.members.size());
        std::set_union(region_o.members.begin(), region_o.members.end(),
                       region_d.members.begin(), region_d.members.end(),
                       std::back_inserter(allowed));
        SearchResult res = detail::restricted_dijkstra(g, allowed, q.origin, q.destination);
        if (res.status == SearchStatus::Found)
            res.status = SearchStatus::Degenerate;
        out.search = res;
        return out;
    }

    CollapseResult first = collapse(g, region_o);
    CollapseResult second = collapse(first.graph, region_d);
    const Graph& collapsed = second.graph;
    const CollapseMap& map_o = first.map;
    const CollapseMap& map_d = second.map;

    Position target = collapsed.position(map_d.super_id);
    SearchOptions opts;
    opts.reopen_closed = true;
    SearchResult res = astar(
        collapsed, map_o.super_id, map_d.super_id,
        [&collapsed, target](VertexId v) { return collapsed.straight_line_to(v, target); },
        opts, ws);

    if (res.status != SearchStatus::Found) {
        out.search = res;
        return out;
    }

    std::vector<VertexId> route;
    try {
        auto [o_end, d_end] = recover_endpoints(map_o, map_d, res.path);
        route.push_back(o_end);
        for (std::size_t i = 1; i + 1 < res.path.size(); ++i)
            route.push_back(res.path[i]);
        route.push_back(d_end);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegeneratePath)
            throw;
        res.status = SearchStatus::Degenerate;
        res.path.clear();
        res.hops = 0;
        out.search = res;
        return out;
    }

    // re-measure on the original graph; every hop must be a real edge
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
        double w = g.edge_weight(route[i], route[i + 1]);
        if (w == std::numeric_limits<double>::infinity())
            raise(ErrorKind::MismatchedInputs, "recovered route leaves the graph");
        total += w;
    }
    res.path = std::move(route);
    res.hops = static_cast<std::uint32_t>(res.path.size() - 1);
    res.distance = total;
    out.search = res;
    return out;
}

// Reference strategy: one point-to-point A* per member pair, keep the best.
// Expansions and time accumulate over every search executed.
inline MomdOutcome run_brute_force(const Graph& g, const MomdQuery& q,
                                   SearchWorkspace* ws = nullptr) {
    Region region_o = build_region(g, q.origin, q.radius);
    Region region_d = build_region(g, q.destination, q.radius);

    MomdOutcome out;
    out.collapsed_nodes = 0;
    out.searches = static_cast<std::uint64_t>(region_o.members.size()) *
                   static_cast<std::uint64_t>(region_d.members.size());

    SearchResult best;
    std::uint64_t expansions = 0;
    std::int64_t elapsed = 0;
    for (VertexId o : region_o.members) {
        for (VertexId d : region_d.members) {
            SearchResult res = astar_straight_line(g, o, d, SearchOptions{}, ws);
            expansions += res.expansions;
            elapsed += res.elapsed_us;
            if (res.status == SearchStatus::Found &&
                (best.status != SearchStatus::Found || res.distance < best.distance))
                best = std::move(res);
        }
    }
    best.expansions = expansions;
    best.elapsed_us = elapsed;
    out.search = std::move(best);
    return out;
}

inline MomdOutcome run_strategy(StrategyKind kind, const Graph& g, const MomdQuery& q,
                                SearchWorkspace* ws = nullptr) {
    return kind == StrategyKind::collapse_single ? run_collapse(g, q, ws)
                                                 : run_brute_force(g, q, ws);
}

// Distances within this tolerance of the optimum count as exact.
inline constexpr double kOptimalTolerance = 1e-6;

struct ComparisonRecord {
    OdPair pair;
    double radius = 0.0;
    double optimal = 0.0;
    double collapsed = 0.0;
    double error = 0.0;
    bool is_optimal = false;
};

struct CompareSummary {
    std::size_t queries = 0;
    std::size_t compared = 0;
    std::size_t excluded = 0;
    double accuracy = 0.0;
    double mean_error_all = 0.0;
    double mean_error_nonoptimal = 0.0;
    double max_error = 0.0;
};

struct CompareOutput {
    std::vector<ComparisonRecord> records;
    CompareSummary summary;
};

// Runs both strategies over the same queries and accumulates error
// statistics. Queries where either strategy fails to produce a route are
// excluded from the statistics and only counted.
inline CompareOutput compare_strategies(const Graph& g, const std::vector<OdPair>& pairs,
                                        double radius, SearchWorkspace* ws = nullptr) {
    CompareOutput out;
    out.summary.queries = pairs.size();
    double err_sum = 0.0;
    double err_nonopt_sum = 0.0;
    std::size_t nonopt = 0;

    for (const OdPair& p : pairs) {
        MomdQuery q{p.origin, p.destination, radius};
        MomdOutcome col = run_collapse(g, q, ws);
        MomdOutcome bru = run_brute_force(g, q, ws);
        if (col.search.status != SearchStatus::Found ||
            bru.search.status != SearchStatus::Found) {
            ++out.summary.excluded;
            continue;
        }
        double error = col.search.distance - bru.search.distance;
        if (error < -kOptimalTolerance)
            raise(ErrorKind::MismatchedInputs,
                  "collapse produced a route shorter than the optimum, query " +
                      std::to_string(p.origin) + "->" + std::to_string(p.destination));
        if (error < 0.0)
            error = 0.0;
        ComparisonRecord rec;
        rec.pair = p;
        rec.radius = radius;
        rec.optimal = bru.search.distance;
        rec.collapsed = col.search.distance;
        rec.error = error;
        rec.is_optimal = error <= kOptimalTolerance;
        out.records.push_back(rec);
        err_sum += error;
        if (!rec.is_optimal) {
            err_nonopt_sum += error;
            ++nonopt;
        }
    }
    out.summary.compared = out.records.size();
    if (out.summary.compared > 0) {
        std::size_t optimal = out.summary.compared - nonopt;
        out.summary.accuracy =
            static_cast<double>(optimal) / static_cast<double>(out.summary.compared);
        out.summary.mean_error_all = err_sum / static_cast<double>(out.summary.compared);
        for (const ComparisonRecord& r : out.records)
            out.summary.max_error = std::max(out.summary.max_error, r.error);
        if (nonopt > 0)
            out.summary.mean_error_nonoptimal = err_nonopt_sum / static_cast<double>(nonopt);
    }
    return out;
}

} // namespace momd
