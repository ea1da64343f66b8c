#ifndef TROPRANK_SURFACE_R3_HPP
#define TROPRANK_SURFACE_R3_HPP

#include <optional>
#include <utility>
#include <vector>

#include "troprank/execution.hpp"
#include "troprank/subdivision.hpp"

namespace troprank {

// Bloc-growing bounds for tropical surfaces in R^3. The bloc starts with a
// 2-face-adjacent cell pair (4 + 1 degrees of freedom), absorbs neighbors for
// free while they share 4 non-coplanar determined vertices, pays 1 for a
// neighbor sharing exactly 3 vertices on a 2-face, and drops 1 at the end for
// the global additive constant. The lower bound pays 1 more for every
// absorbed cell with at least 5 already-determined vertices.
struct AlgoStep {
    std::size_t cell;
    int step;  // 1, 2, 4 or 5 per the growing rule applied
    long long upper_delta;
    long long lower_delta;
    std::size_t determined_before;
};

struct AlgoResult {
    long long lower = 0;
    long long upper = 0;
    std::vector<AlgoStep> trace;
    std::vector<std::size_t> unreachable;  // cells the bloc could not absorb
    bool complete() const { return unreachable.empty(); }
};

AlgoResult algo_bounds(const Subdivision& s,
                       std::optional<std::pair<std::size_t, std::size_t>> start);

// Max lower / min upper over every admissible start pair. Keeps the trace of
// the run attaining the upper bound. If no run absorbs every cell, returns
// the unreachable report of the first attempted start.
AlgoResult best_algo_bounds(const Subdivision& s, Exec exec = Exec::Parallel);

}  // namespace troprank

#endif
