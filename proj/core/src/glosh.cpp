#include "autoglosh/glosh.hpp"

#include "parallel.hpp"
#include "union_find.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace autoglosh {

LambdaMode parse_lambda_mode(std::string_view name) {
    if (name == "core_distance") {
        return LambdaMode::core_distance;
    }
    if (name == "departure_level") {
        return LambdaMode::departure_level;
    }
    throw std::invalid_argument("unknown lambda mode '" + std::string(name) + "'");
}

std::string_view to_string(LambdaMode mode) {
    return mode == LambdaMode::core_distance ? "core_distance" : "departure_level";
}

namespace {

double relative_deficit(double reference, double own) {
    if (own == 0.0) {
        return 0.0;
    }
    if (reference == 0.0) {
        return 1.0;
    }
    return 1.0 - reference / own;
}

} // namespace

GloshScores glosh_scores(const MstEdges& mst, const CoreDistanceTable& core, int min_pts,
                         LambdaMode mode) {
    if (mst.min_pts != min_pts) {
        throw std::invalid_argument("MST was built at min_pts " + std::to_string(mst.min_pts) +
                                    ", scores requested at " + std::to_string(min_pts));
    }
    core.check_min_pts(min_pts);
    const std::size_t n = core.size();
    if (mst.edges.size() + 1 != n) {
        throw std::invalid_argument("MST must have n-1 edges");
    }

    std::vector<WeightedEdge> edges = mst.edges;
    std::sort(edges.begin(), edges.end(), edge_less);

    detail::UnionFind sets(n);
    std::vector<double> min_core(n);
    for (std::size_t i = 0; i < n; ++i) {
        min_core[i] = core(i, min_pts);
    }

    GloshScores out{min_pts, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                    std::vector<double>(n, 0.0)};
    for (const auto& e : edges) {
        const auto ru = sets.find(e.u);
        const auto rv = sets.find(e.v);
        if (ru == rv) {
            throw std::invalid_argument("MST edges contain a cycle");
        }
        const bool u_single = sets.set_size(ru) == 1;
        const bool v_single = sets.set_size(rv) == 1;
        const double merged_min = std::min(min_core[ru], min_core[rv]);
        const auto root = sets.unite_roots(ru, rv);
        min_core[root] = merged_min;
        if (u_single) {
            out.attach_level[e.u] = e.weight;
            out.comp_min_core[e.u] = merged_min;
        }
        if (v_single) {
            out.attach_level[e.v] = e.weight;
            out.comp_min_core[e.v] = merged_min;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double own = mode == LambdaMode::core_distance ? core(i, min_pts) : out.attach_level[i];
        out.scores[i] = relative_deficit(out.comp_min_core[i], own);
    }
    return out;
}

GloshProfileMatrix::GloshProfileMatrix(std::size_t n, int m_max)
    : n_(n), m_max_(m_max), values_(n * static_cast<std::size_t>(std::max(m_max - 1, 0)), 0.0) {
    if (m_max < 2) {
        throw std::out_of_range("profile matrix needs m_max >= 2");
    }
}

std::vector<double> GloshProfileMatrix::column(int min_pts) const {
    if (min_pts < 2 || min_pts > m_max_) {
        throw std::out_of_range("min_pts outside profile range");
    }
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        out[i] = values_[index(i, min_pts)];
    }
    return out;
}

void GloshProfileMatrix::set_column(int min_pts, const std::vector<double>& scores) {
    if (min_pts < 2 || min_pts > m_max_ || scores.size() != n_) {
        throw std::out_of_range("column does not fit the profile matrix");
    }
    for (std::size_t i = 0; i < n_; ++i) {
        values_[index(i, min_pts)] = scores[i];
    }
}

GloshProfileMatrix glosh_profile_matrix(const DistanceMatrix& dist, const CoreDistanceTable& core,
                                        LambdaMode mode, MstPath path, unsigned threads) {
    const int m_max = core.m_max();
    GloshProfileMatrix profiles(core.size(), m_max);
    const std::size_t columns = profiles.columns();

    CoreSg graph;
    if (path == MstPath::core_sg) {
        graph = build_core_sg(dist, core, m_max);
    }
    // Distinct columns touch disjoint cells of the matrix.
    detail::parallel_for(columns, threads, [&](std::size_t c) {
        const int min_pts = static_cast<int>(c) + 2;
        const MstEdges mst = path == MstPath::core_sg ? mst_from_core_sg(graph, core, min_pts)
                                                      : mst_complete(dist, core, min_pts);
        profiles.set_column(min_pts, glosh_scores(mst, core, min_pts, mode).scores);
    });
    return profiles;
}

GloshProfileMatrix glosh_profile_matrix(const Dataset& data, int m_max, LambdaMode mode,
                                        Metric metric, MstPath path, unsigned threads) {
    const auto dist = pairwise_distances(data, metric, threads);
    const auto core = core_distance_table(dist, m_max, threads);
    return glosh_profile_matrix(dist, core, mode, path, threads);
}

void write_profile_csv(std::ostream& out, const GloshProfileMatrix& profiles) {
    out << "point_id";
    for (int m = 2; m <= profiles.m_max(); ++m) {
        out << ",minpts_" << m;
    }
    out << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        out << i;
        for (int m = 2; m <= profiles.m_max(); ++m) {
            out << ',' << profiles(i, m);
        }
        out << '\n';
    }
}

} // namespace autoglosh
