#include "autoglosh/mstgraph.hpp"

#include "union_find.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace autoglosh {

namespace {

WeightedEdge make_edge(std::size_t a, std::size_t b, double w) {
    if (a > b) {
        std::swap(a, b);
    }
    return {static_cast<PointId>(a), static_cast<PointId>(b), w};
}

} // namespace

double MstEdges::total_weight() const noexcept {
    double total = 0.0;
    for (const auto& e : edges) {
        total += e.weight;
    }
    return total;
}

double mutual_reachability(const DistanceMatrix& dist, const CoreDistanceTable& core, int min_pts,
                           std::size_t u, std::size_t v) {
    core.check_min_pts(min_pts);
    return std::max({core(u, min_pts), core(v, min_pts), dist(u, v)});
}

MstEdges mst_complete(const DistanceMatrix& dist, const CoreDistanceTable& core, int min_pts) {
    core.check_min_pts(min_pts);
    const std::size_t n = dist.size();
    if (core.size() != n) {
        throw std::invalid_argument("core table and distance matrix disagree on point count");
    }

    // key[v] is the best edge (under edge_less) joining v to the tree.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<WeightedEdge> key(n, WeightedEdge{0, 0, inf});
    std::vector<bool> in_tree(n, false);
    MstEdges mst{min_pts, {}};
    mst.edges.reserve(n - 1);

    std::size_t current = 0;
    in_tree[0] = true;
    for (std::size_t step = 1; step < n; ++step) {
        const double core_cur = core(current, min_pts);
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) {
                continue;
            }
            const double w = std::max({core_cur, core(v, min_pts), dist(current, v)});
            const WeightedEdge candidate = make_edge(current, v, w);
            if (key[v].weight == inf || edge_less(candidate, key[v])) {
                key[v] = candidate;
            }
            if (best == n || edge_less(key[v], key[best])) {
                best = v;
            }
        }
        in_tree[best] = true;
        mst.edges.push_back(key[best]);
        current = best;
    }
    std::sort(mst.edges.begin(), mst.edges.end(), edge_less);
    return mst;
}

CoreSg build_core_sg(const DistanceMatrix& dist, const CoreDistanceTable& core, int m_max) {
    if (m_max > core.m_max()) {
        throw std::out_of_range("CORE-SG m_max exceeds the core distance table range");
    }
    core.check_min_pts(m_max);
    const std::size_t n = dist.size();

    std::vector<std::pair<PointId, PointId>> pairs;
    pairs.reserve(n * static_cast<std::size_t>(m_max));
    for (const auto& e : mst_complete(dist, core, m_max).edges) {
        pairs.emplace_back(e.u, e.v);
    }
    for (std::size_t i = 0; i < n; ++i) {
        // Only the first m_max entries of the (distance, id)-ordered list; the
        // table may hold more neighbours when built for a larger m_max.
        const auto nearest = core.nearest(i).first(static_cast<std::size_t>(m_max));
        for (const PointId j : nearest) {
            if (j != i) {
                pairs.emplace_back(std::min<PointId>(i, j), std::max<PointId>(i, j));
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    CoreSg graph{m_max, n, {}};
    graph.edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs) {
        graph.edges.push_back({u, v, dist(u, v)});
    }
    return graph;
}

MstEdges mst_from_core_sg(const CoreSg& graph, const CoreDistanceTable& core, int min_pts) {
    if (min_pts > graph.m_max) {
        throw std::out_of_range("min_pts " + std::to_string(min_pts) + " exceeds CORE-SG m_max " +
                                std::to_string(graph.m_max));
    }
    core.check_min_pts(min_pts);

    std::vector<WeightedEdge> weighted;
    weighted.reserve(graph.edges.size());
    for (const auto& e : graph.edges) {
        weighted.push_back({e.u, e.v, std::max({core(e.u, min_pts), core(e.v, min_pts), e.distance})});
    }
    std::sort(weighted.begin(), weighted.end(), edge_less);

    const std::size_t n = graph.point_count;
    detail::UnionFind sets(n);
    MstEdges mst{min_pts, {}};
    mst.edges.reserve(n - 1);
    for (const auto& e : weighted) {
        const auto ru = sets.find(e.u);
        const auto rv = sets.find(e.v);
        if (ru == rv) {
            continue;
        }
        sets.unite_roots(ru, rv);
        mst.edges.push_back(e);
        if (mst.edges.size() + 1 == n) {
            break;
        }
    }
    if (mst.edges.size() + 1 != n) {
        throw std::logic_error("CORE-SG is disconnected");
    }
    return mst;
}

void write_mst_csv(std::ostream& out, const MstEdges& mst) {
    out << "u,v,w\n";
    out << std::setprecision(17);
    for (const auto& e : mst.edges) {
        out << e.u << ',' << e.v << ',' << e.weight << '\n';
    }
}

} // namespace autoglosh
