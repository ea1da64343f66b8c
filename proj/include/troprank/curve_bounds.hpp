#ifndef TROPRANK_CURVE_BOUNDS_HPP
#define TROPRANK_CURVE_BOUNDS_HPP

#include <cstdint>
#include <vector>

#include "troprank/execution.hpp"
#include "troprank/rank_core.hpp"

namespace troprank {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Indices of the cells that are neither triangles nor parallelograms.
std::vector<std::size_t> nontrivial_cells(const Subdivision& s);

// Upper bound for twice the defect: sum over 2m-gons of (2m-3)N_2m - N'_2m
// plus sum over (2m+1)-gons of (2m-2)N_(2m+1), minus 1 when a qualifying cell
// exists; 0 when every cell is a triangle or parallelogram. pre: n = 2.
long long lemma22_defect_bound(const Subdivision& s);

// #Vert(S) - 1 - sum over trivial cells of (#Vert-3) - sum over the ordered
// non-trivial cells of (#Vert - max{3, #vertices shared with earlier
// non-trivial cells}). `order` must be a permutation of nontrivial_cells(s).
long long upper_bound_ordered(const Subdivision& s, const std::vector<std::size_t>& order);

enum class OrderStrategy { Exhaustive, Cooriented, Sampled };

struct OrderPolicy {
    OrderStrategy strategy = OrderStrategy::Exhaustive;
    std::uint64_t seed = 0;
    std::size_t samples = 64;
};

// Minimum of upper_bound_ordered over the orderings selected by the policy.
// Exhaustive is limited to 8 non-trivial cells (BudgetError beyond).
long long best_upper_bound(const Subdivision& s, const OrderPolicy& policy,
                           Exec exec = Exec::Parallel);

// The exact formula for precisely three non-trivial cells, evaluated as the
// minimum over the six labelings.
long long exact_rank_three_nontrivial(const Subdivision& s);

// All six labeling values, for auditing order independence.
std::vector<long long> three_nontrivial_values(const Subdivision& s);

// Dispatcher returning the strongest certificate available for a plane
// curve: equality for at most two non-trivial cells, the exact three-cell
// formula, otherwise bounds clipped by the defect bound. Attaches the oracle
// value whenever the subdivision is regular.
RankReport rank_with_certificate(const Subdivision& s, const OrderPolicy& policy = {},
                                 Exec exec = Exec::Parallel);

}  // namespace troprank

#endif
