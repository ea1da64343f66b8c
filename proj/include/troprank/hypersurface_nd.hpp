#ifndef TROPRANK_HYPERSURFACE_ND_HPP
#define TROPRANK_HYPERSURFACE_ND_HPP

#include <vector>

#include "troprank/curve_bounds.hpp"
#include "troprank/rank_core.hpp"

namespace troprank {

// Cells with more than n+1 vertices (every non-triangle in the plane).
std::vector<std::size_t> nonsimplex_cells(const Subdivision& s);

// #Vert(S) - 1 - sum over the ordered non-simplex cells of
// (#new vertices - n + affine_dim(shared vertices)), where shared/new are
// relative to the earlier non-simplex cells and affine_dim of the empty set
// is -1 (so the first cell deducts #Vert - (n+1)).
long long upper_bound_nd(const Subdivision& s, const std::vector<std::size_t>& order);

// Exact rank for at most three non-simplex cells (n >= 3): the minimum of
// upper_bound_nd over all orderings.
long long exact_rank_nd(const Subdivision& s);

std::vector<long long> nd_ordering_values(const Subdivision& s);

// Minimum of upper_bound_nd over the orderings selected by the policy.
long long best_upper_bound_nd(const Subdivision& s, const OrderPolicy& policy,
                              Exec exec = Exec::Parallel);

// Dispatcher for n >= 3: the exact formula when at most three cells are not
// simplices, otherwise ordered bounds. Attaches the oracle when regular.
RankReport rank_with_certificate_nd(const Subdivision& s, const OrderPolicy& policy = {},
                                    Exec exec = Exec::Parallel);

}  // namespace troprank

#endif
