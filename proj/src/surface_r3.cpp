#include "troprank/surface_r3.hpp"

#include <algorithm>
#include <set>

namespace troprank {

namespace {

struct Adjacency {
    // 2-face adjacency between cells of a 3D subdivision
    std::vector<std::vector<bool>> plane_neighbors;
};

Adjacency build_adjacency(const Subdivision& s) {
    Adjacency adj;
    adj.plane_neighbors.assign(s.cells.size(), std::vector<bool>(s.cells.size(), false));
    for (const FacetSharing& f : shared_facets(s.all_cell_points())) {
        adj.plane_neighbors[f.i][f.j] = true;
        adj.plane_neighbors[f.j][f.i] = true;
    }
    return adj;
}

}  // namespace

AlgoResult algo_bounds(const Subdivision& s,
                       std::optional<std::pair<std::size_t, std::size_t>> start) {
    if (s.n != 3) throw DimensionMismatchError("bloc-growing bounds need n = 3");
    AlgoResult res;
    if (s.cells.size() <= 1) {
        res.lower = res.upper = 3;  // 4 parameters minus the additive constant
        if (!s.cells.empty()) res.trace.push_back({0, 1, 4, 0, 0});
        return res;
    }
    if (!start) throw std::invalid_argument("a start pair is required for two or more cells");

    const Adjacency adj = build_adjacency(s);
    const auto [first, second] = *start;
    if (first >= s.cells.size() || second >= s.cells.size() || first == second ||
        !adj.plane_neighbors[first][second])
        throw std::invalid_argument("start cells must share a 2-face");

    std::set<std::size_t> bloc{first};
    std::set<std::size_t> determined(s.cells[first].vertices.begin(),
                                     s.cells[first].vertices.end());
    long long upper = 4;
    long long suspicious = 0;
    res.trace.push_back({first, 1, 4, 0, 0});

    auto shared_with_determined = [&](std::size_t ci) {
        std::vector<Point> pts;
        for (std::size_t v : s.cells[ci].vertices)
            if (determined.count(v)) pts.push_back(s.vertices[v]);
        return pts;
    };
    auto absorb = [&](std::size_t ci, int step, long long du) {
        const std::vector<Point> shared = shared_with_determined(ci);
        long long dl = 0;
        if (shared.size() >= 5) {
            ++suspicious;  // possible double condition
            dl = -1;
        }
        res.trace.push_back({ci, step, du, dl, shared.size()});
        upper += du;
        bloc.insert(ci);
        for (std::size_t v : s.cells[ci].vertices) determined.insert(v);
    };

    absorb(second, 2, 1);  // shares a 2-face: 3 degrees of freedom already fixed

    auto neighbors_bloc = [&](std::size_t ci) {
        for (std::size_t b : bloc)
            if (adj.plane_neighbors[ci][b]) return true;
        return false;
    };

    while (bloc.size() < s.cells.size()) {
        std::size_t pick = s.cells.size();
        // step 3/4: a plane neighbor with >= 4 determined vertices not all coplanar
        for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
            if (bloc.count(ci) || !neighbors_bloc(ci)) continue;
            const std::vector<Point> shared = shared_with_determined(ci);
            if (shared.size() >= 4 && affine_dim(shared) == 3) {
                pick = ci;
                break;
            }
        }
        if (pick != s.cells.size()) {
            absorb(pick, 4, 0);
            continue;
        }
        // step 5: a plane neighbor sharing exactly 3 vertices
        for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
            if (bloc.count(ci) || !neighbors_bloc(ci)) continue;
            if (shared_with_determined(ci).size() == 3) {
                pick = ci;
                break;
            }
        }
        if (pick == s.cells.size()) break;
        absorb(pick, 5, 1);
    }

    for (std::size_t ci = 0; ci < s.cells.size(); ++ci)
        if (!bloc.count(ci)) res.unreachable.push_back(ci);

    res.upper = upper - 1;  // the global additive constant
    res.lower = res.upper - suspicious;
    return res;
}

AlgoResult best_algo_bounds(const Subdivision& s, Exec exec) {
    if (s.n != 3) throw DimensionMismatchError("bloc-growing bounds need n = 3");
    if (s.cells.size() <= 1) return algo_bounds(s, std::nullopt);

    const Adjacency adj = build_adjacency(s);
    std::vector<std::pair<std::size_t, std::size_t>> starts;
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        for (std::size_t j = 0; j < s.cells.size(); ++j)
            if (i != j && adj.plane_neighbors[i][j]) starts.emplace_back(i, j);
    if (starts.empty()) {
        AlgoResult res = algo_bounds(s, std::make_pair<std::size_t, std::size_t>(0, 0));
        return res;  // unreachable: throws above; kept for completeness
    }

    std::vector<AlgoResult> results(starts.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(starts.size()); ++i)
            results[static_cast<std::size_t>(i)] =
                algo_bounds(s, starts[static_cast<std::size_t>(i)]);
    } else {
        for (std::size_t i = 0; i < starts.size(); ++i) results[i] = algo_bounds(s, starts[i]);
    }

    std::optional<AlgoResult> best;
    long long best_lower = 0;
    for (const AlgoResult& r : results) {
        if (!r.complete()) continue;
        if (!best || r.upper < best->upper) {
            const long long keep = best ? best_lower : r.lower;
            best = r;
            best_lower = std::max(keep, r.lower);
        } else {
            best_lower = std::max(best_lower, r.lower);
        }
    }
    if (!best) return results.front();  // report the unreachable cells
    best->lower = best_lower;
    return *best;
}

}  // namespace troprank
