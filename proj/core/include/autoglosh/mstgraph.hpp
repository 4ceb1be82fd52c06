#pragma once

#include "autoglosh/dataset.hpp"
#include "autoglosh/neighbors.hpp"

#include <iosfwd>
#include <vector>

namespace autoglosh {

/// Undirected edge with u < v.
struct WeightedEdge {
    PointId u;
    PointId v;
    double weight;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Strict total order used for every MST in this library: weight first,
/// then (u, v) lexicographically. Makes the MST unique.
inline bool edge_less(const WeightedEdge& a, const WeightedEdge& b) noexcept {
    if (a.weight != b.weight) {
        return a.weight < b.weight;
    }
    if (a.u != b.u) {
        return a.u < b.u;
    }
    return a.v < b.v;
}

/// Spanning tree over the mutual-reachability graph at one min_pts. Edges
/// are kept sorted by edge_less.
struct MstEdges {
    int min_pts = 0;
    std::vector<WeightedEdge> edges;

    double total_weight() const noexcept;
};

/// Raw-distance edge of the CORE-SG; weights depend on min_pts and are
/// recomputed on extraction.
struct RawEdge {
    PointId u;
    PointId v;
    double distance;
};

/// Sparse graph (MST at m_max plus the m_max-NN graph) that contains the
/// MST for every min_pts <= m_max.
struct CoreSg {
    int m_max = 0;
    std::size_t point_count = 0;
    std::vector<RawEdge> edges;
};

/// max(core(u), core(v), d(u, v)) at the given min_pts.
double mutual_reachability(const DistanceMatrix& dist, const CoreDistanceTable& core, int min_pts,
                           std::size_t u, std::size_t v);

/// Dense Prim over the implicit complete graph. O(n^2).
MstEdges mst_complete(const DistanceMatrix& dist, const CoreDistanceTable& core, int min_pts);

CoreSg build_core_sg(const DistanceMatrix& dist, const CoreDistanceTable& core, int m_max);

/// Kruskal over the CORE-SG edges re-weighted at min_pts.
MstEdges mst_from_core_sg(const CoreSg& graph, const CoreDistanceTable& core, int min_pts);

/// Debug dump: one `u,v,w` row per edge, with a header.
void write_mst_csv(std::ostream& out, const MstEdges& mst);

} // namespace autoglosh
