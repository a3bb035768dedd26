#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "momd/errors.hpp"
#include "momd/geo.hpp"

namespace momd {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

enum class MetricKind { geographic, planar };

inline const char* to_string(MetricKind m) {
    return m == MetricKind::geographic ? "geographic" : "planar";
}

// Coordinates of one vertex. Geographic graphs store (lat, lon) in degrees,
// planar graphs store (x, y) in metres.
struct Position {
    double a;
    double b;
};

struct Arc {
    VertexId to;
    double weight;
};

inline double straight_line(MetricKind metric, const Position& p, const Position& q) {
    if (metric == MetricKind::geographic)
        return haversine(GeoPoint{p.a, p.b}, GeoPoint{q.a, q.b});
    return euclidean(PlanarPoint{p.a, p.b}, PlanarPoint{q.a, q.b});
}

// Immutable undirected graph in compressed sparse row form. Each undirected
// edge is stored as two arcs. Adjacency rows are sorted by target id.
class Graph {
public:
    Graph() : metric_(MetricKind::planar) { offsets_.push_back(0); }

    Graph(MetricKind metric, std::vector<Position> positions,
          std::vector<std::uint64_t> offsets, std::vector<Arc> arcs)
        : metric_(metric), positions_(std::move(positions)),
          offsets_(std::move(offsets)), arcs_(std::move(arcs)) {}

    MetricKind metric() const { return metric_; }
    std::size_t vertex_count() const { return positions_.size(); }
    std::size_t edge_count() const { return arcs_.size() / 2; }

    const Position& position(VertexId v) const {
        check_vertex(v);
        return positions_[v];
    }

    std::span<const Arc> neighbors(VertexId v) const {
        check_vertex(v);
        return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
    }

    std::size_t degree(VertexId v) const { return neighbors(v).size(); }

    double straight_line(VertexId u, VertexId v) const {
        return momd::straight_line(metric_, position(u), position(v));
    }

    double straight_line_to(VertexId u, const Position& target) const {
        return momd::straight_line(metric_, position(u), target);
    }

    // Weight of edge (u, v), or infinity when absent.
    double edge_weight(VertexId u, VertexId v) const {
        auto row = neighbors(u);
        auto it = std::lower_bound(row.begin(), row.end(), v,
                                   [](const Arc& a, VertexId id) { return a.to < id; });
        if (it == row.end() || it->to != v)
            return std::numeric_limits<double>::infinity();
        return it->weight;
    }

    bool has_edge(VertexId u, VertexId v) const {
        return edge_weight(u, v) != std::numeric_limits<double>::infinity();
    }

    bool operator==(const Graph& other) const {
        return metric_ == other.metric_ &&
               positions_.size() == other.positions_.size() &&
               std::equal(positions_.begin(), positions_.end(), other.positions_.begin(),
                          [](const Position& p, const Position& q) {
                              return p.a == q.a && p.b == q.b;
                          }) &&
               offsets_ == other.offsets_ &&
               arcs_.size() == other.arcs_.size() &&
               std::equal(arcs_.begin(), arcs_.end(), other.arcs_.begin(),
                          [](const Arc& x, const Arc& y) {
                              return x.to == y.to && x.weight == y.weight;
                          });
    }

private:
    void check_vertex(VertexId v) const {
        if (v >= positions_.size())
            raise(ErrorKind::UnknownVertex,
                  "vertex " + std::to_string(v) + " out of range (n=" +
                      std::to_string(positions_.size()) + ")");
    }

    MetricKind metric_;
    std::vector<Position> positions_;
    std::vector<std::uint64_t> offsets_; // size n+1
    std::vector<Arc> arcs_;              // size 2*edge_count
};

// Accumulates vertices and undirected edges, then produces a canonical CSR
// graph: self loops are dropped, parallel edges keep the smallest weight,
// adjacency rows come out sorted.
class GraphBuilder {
public:
    explicit GraphBuilder(MetricKind metric) : metric_(metric) {}

    VertexId add_vertex(Position pos) {
        positions_.push_back(pos);
        return static_cast<VertexId>(positions_.size() - 1);
    }

    std::size_t vertex_count() const { return positions_.size(); }
    const Position& position(VertexId v) const { return positions_.at(v); }
    MetricKind metric() const { return metric_; }

    void add_edge(VertexId u, VertexId v, double w) {
        if (u == v)
            return;
        if (u >= positions_.size() || v >= positions_.size())
            raise(ErrorKind::UnknownVertex, "edge endpoint out of range");
        if (!(w >= 0.0))
            raise(ErrorKind::ConfigInvalid, "edge weight must be non-negative");
        edges_.emplace_back(u, v, w);
    }

    // Edge weighted by the straight-line distance between its endpoints.
    void add_edge_auto(VertexId u, VertexId v) {
        if (u == v)
            return;
        if (u >= positions_.size() || v >= positions_.size())
            raise(ErrorKind::UnknownVertex, "edge endpoint out of range");
        edges_.emplace_back(u, v, momd::straight_line(metric_, positions_[u], positions_[v]));
    }

    Graph build() const {
        const std::size_t n = positions_.size();
        std::vector<std::tuple<VertexId, VertexId, double>> dir;
        dir.reserve(edges_.size() * 2);
        for (const auto& [u, v, w] : edges_) {
            dir.emplace_back(u, v, w);
            dir.emplace_back(v, u, w);
        }
        std::sort(dir.begin(), dir.end(),
                  [](const auto& x, const auto& y) {
                      if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
                      if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) < std::get<1>(y);
                      return std::get<2>(x) < std::get<2>(y);
                  });

        std::vector<std::uint64_t> offsets(n + 1, 0);
        std::vector<Arc> arcs;
        arcs.reserve(dir.size());
        std::size_t i = 0;
        for (VertexId v = 0; v < n; ++v) {
            while (i < dir.size() && std::get<0>(dir[i]) == v) {
                VertexId to = std::get<1>(dir[i]);
                // duplicates are adjacent after the sort, smallest weight first
                if (arcs.size() > offsets[v] && arcs.back().to == to) {
                    ++i;
                    continue;
                }
                arcs.push_back(Arc{to, std::get<2>(dir[i])});
                ++i;
            }
            offsets[v + 1] = arcs.size();
        }
        return Graph(metric_, positions_, std::move(offsets), std::move(arcs));
    }

private:
    MetricKind metric_;
    std::vector<Position> positions_;
    std::vector<std::tuple<VertexId, VertexId, double>> edges_;
};

struct ComponentLabeling {
    std::vector<std::uint32_t> label; // per vertex, dense from 0
    std::vector<std::size_t> sizes;   // per component
    std::size_t count() const { return sizes.size(); }
};

// Labels connected components. Components are numbered by decreasing size,
// ties broken by the smallest vertex id they contain.
inline ComponentLabeling connected_components(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> raw(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<VertexId> stack;
    std::uint32_t next = 0;
    std::vector<std::size_t> raw_sizes;
    std::vector<VertexId> raw_min;
    for (VertexId s = 0; s < n; ++s) {
        if (raw[s] != std::numeric_limits<std::uint32_t>::max())
            continue;
        std::size_t sz = 0;
        stack.push_back(s);
        raw[s] = next;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            ++sz;
            for (const Arc& a : g.neighbors(v)) {
                if (raw[a.to] == std::numeric_limits<std::uint32_t>::max()) {
                    raw[a.to] = next;
                    stack.push_back(a.to);
                }
            }
        }
        raw_sizes.push_back(sz);
        raw_min.push_back(s);
        ++next;
    }

    std::vector<std::uint32_t> order(raw_sizes.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (raw_sizes[a] != raw_sizes[b]) return raw_sizes[a] > raw_sizes[b];
        return raw_min[a] < raw_min[b];
    });
    std::vector<std::uint32_t> rank(order.size());
    for (std::uint32_t r = 0; r < order.size(); ++r)
        rank[order[r]] = r;

    ComponentLabeling out;
    out.label.resize(n);
    out.sizes.resize(raw_sizes.size());
    for (std::size_t c = 0; c < raw_sizes.size(); ++c)
        out.sizes[rank[c]] = raw_sizes[c];
    for (VertexId v = 0; v < n; ++v)
        out.label[v] = rank[raw[v]];
    return out;
}

struct GiantComponent {
    Graph graph;
    std::vector<VertexId> old_of_new;  // new id -> original id
    std::vector<VertexId> new_of_old;  // original id -> new id, kNoVertex if dropped
};

// Extracts the largest connected component, re-indexing vertices densely in
// ascending original-id order.
inline GiantComponent giant_component(const Graph& g) {
    if (g.vertex_count() == 0)
        raise(ErrorKind::EmptyGraph, "giant_component needs a non-empty graph");
    ComponentLabeling cc = connected_components(g);

    GiantComponent out;
    out.new_of_old.assign(g.vertex_count(), kNoVertex);
    GraphBuilder b(g.metric());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (cc.label[v] != 0)
            continue;
        out.new_of_old[v] = b.add_vertex(g.position(v));
        out.old_of_new.push_back(v);
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (cc.label[v] != 0)
            continue;
        for (const Arc& a : g.neighbors(v)) {
            if (v < a.to)
                b.add_edge(out.new_of_old[v], out.new_of_old[a.to], a.weight);
        }
    }
    out.graph = b.build();
    return out;
}

} // namespace momd
