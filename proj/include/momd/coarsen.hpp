#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "momd/errors.hpp"
#include "momd/graph.hpp"

namespace momd {

struct Region {
    VertexId seed = kNoVertex;
    double radius = 0.0;
    std::vector<VertexId> members; // ascending, always contains the seed
};

// All vertices within straight-line distance radius of the seed.
inline Region build_region(const Graph& g, VertexId seed, double radius) {
    if (radius < 0.0)
        raise(ErrorKind::ConfigInvalid, "region radius must be non-negative");
    const Position& s = g.position(seed);
    Region r;
    r.seed = seed;
    r.radius = radius;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.straight_line_to(v, s) <= radius)
            r.members.push_back(v);
    return r;
}

// Medoid of the region: the member minimising the summed straight-line
// distance to all members, smallest id on ties.
inline VertexId select_center(const Graph& g, const Region& region) {
    assert(!region.members.empty());
    VertexId best = region.members.front();
    double best_sum = std::numeric_limits<double>::infinity();
    for (VertexId c : region.members) {
        double sum = 0.0;
        const Position& pc = g.position(c);
        for (VertexId m : region.members)
            sum += g.straight_line_to(m, pc);
        if (sum < best_sum) {
            best_sum = sum;
            best = c;
        }
    }
    return best;
}

struct BoundaryEdge {
    VertexId external;
    VertexId member;
    double weight;
};

struct InternalEdge {
    VertexId u;
    VertexId v;
    double weight;
};

// Everything needed to undo a collapse and to map a route through the super
// vertex back onto region members.
struct CollapseMap {
    VertexId super_id = kNoVertex;
    VertexId center = kNoVertex;
    std::vector<VertexId> members;
    std::vector<BoundaryEdge> boundary; // all member-external edges, duplicates kept
    std::vector<InternalEdge> internal; // member-member edges
};

struct CollapseResult {
    Graph graph;
    CollapseMap map;
};

// Replaces a region by one super vertex appended after the existing ids.
// Member slots stay in place but lose all arcs, so every other vertex keeps
// its id. Parallel member-external edges to one neighbour fold into the
// cheapest; the map records each original edge for reconstruction.
inline CollapseResult collapse(const Graph& g, const Region& region) {
    if (region.members.empty())
        raise(ErrorKind::ConfigInvalid, "cannot collapse an empty region");
    const std::size_t n = g.vertex_count();
    std::vector<std::uint8_t> is_member(n, 0);
    for (VertexId m : region.members) {
        g.position(m); // UnknownVertex check
        is_member[m] = 1;
    }

    CollapseResult out;
    out.map.super_id = static_cast<VertexId>(n);
    out.map.center = select_center(g, region);
    out.map.members = region.members;

    GraphBuilder b(g.metric());
    for (VertexId v = 0; v < n; ++v)
        b.add_vertex(g.position(v));
    VertexId super = b.add_vertex(g.position(out.map.center));

    for (VertexId u = 0; u < n; ++u) {
        for (const Arc& a : g.neighbors(u)) {
            if (u >= a.to)
                continue;
            bool mu = is_member[u];
            bool mv = is_member[a.to];
            if (mu && mv)
                out.map.internal.push_back(InternalEdge{u, a.to, a.weight});
            else if (mu) {
                out.map.boundary.push_back(BoundaryEdge{a.to, u, a.weight});
                b.add_edge(super, a.to, a.weight);
            } else if (mv) {
                out.map.boundary.push_back(BoundaryEdge{u, a.to, a.weight});
                b.add_edge(u, super, a.weight);
            } else {
                b.add_edge(u, a.to, a.weight);
            }
        }
    }
    out.graph = b.build();
    return out;
}

// Inverse of collapse. The super vertex must be the last id of the
// collapsed graph; member slots regain their recorded edges.
inline Graph uncollapse(const Graph& collapsed, const CollapseMap& map) {
    if (collapsed.vertex_count() == 0)
        raise(ErrorKind::EmptyGraph, "uncollapse needs a non-empty graph");
    if (map.super_id != collapsed.vertex_count() - 1)
        raise(ErrorKind::MismatchedInputs,
              "collapse map does not belong to this graph (super id mismatch)");
    const std::size_t n = collapsed.vertex_count() - 1;
    for (VertexId m : map.members)
        if (m >= n)
            raise(ErrorKind::MismatchedInputs, "collapse map member out of range");

    GraphBuilder b(collapsed.metric());
    for (VertexId v = 0; v < n; ++v)
        b.add_vertex(collapsed.position(v));
    for (VertexId u = 0; u < n; ++u)
        for (const Arc& a : collapsed.neighbors(u))
            if (u < a.to && a.to < n)
                b.add_edge(u, a.to, a.weight);
    for (const BoundaryEdge& e : map.boundary)
        b.add_edge(e.member, e.external, e.weight);
    for (const InternalEdge& e : map.internal)
        b.add_edge(e.u, e.v, e.weight);
    return b.build();
}

// Picks the concrete member vertices a super-to-super route enters and
// leaves through. Single-member regions are unambiguous. Multi-member
// regions use the cheapest boundary edge towards the adjacent path vertex,
// smaller member id on ties. A direct super-super hop with a multi-member
// region on either end cannot be resolved and raises DegeneratePath.
inline std::pair<VertexId, VertexId> recover_endpoints(const CollapseMap& map_o,
                                                       const CollapseMap& map_d,
                                                       const std::vector<VertexId>& path) {
    if (path.size() < 2)
        raise(ErrorKind::DegeneratePath, "route must span two super vertices");
    if (path.front() != map_o.super_id || path.back() != map_d.super_id)
        raise(ErrorKind::MismatchedInputs, "route endpoints do not match the collapse maps");

    auto pick = [](const CollapseMap& map, VertexId external) -> VertexId {
        VertexId best = kNoVertex;
        double best_w = std::numeric_limits<double>::infinity();
        for (const BoundaryEdge& e : map.boundary) {
            if (e.external != external)
                continue;
            if (e.weight < best_w || (e.weight == best_w && e.member < best)) {
                best_w = e.weight;
                best = e.member;
            }
        }
        if (best == kNoVertex)
            raise(ErrorKind::MismatchedInputs,
                  "route edge has no matching boundary record for vertex " +
                      std::to_string(external));
        return best;
    };

    bool single_o = map_o.members.size() == 1;
    bool single_d = map_d.members.size() == 1;
    if (path.size() == 2) {
        if (!single_o || !single_d)
            raise(ErrorKind::DegeneratePath,
                  "adjacent super vertices with a multi-member region cannot be resolved");
        return {map_o.members.front(), map_d.members.front()};
    }
    VertexId origin = single_o ? map_o.members.front() : pick(map_o, path[1]);
    VertexId dest = single_d ? map_d.members.front() : pick(map_d, path[path.size() - 2]);
    return {origin, dest};
}

} // namespace momd
