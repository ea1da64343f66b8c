#ifndef TROPRANK_LP_HPP
#define TROPRANK_LP_HPP

#include <utility>
#include <vector>

#include "troprank/rational.hpp"

namespace troprank::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status;
    Rat value;
    QVec x;
};

// maximize objective . x  subject to  a . x <= b (leq rows) and a . x = b
// (eq rows), x free. Solved by a two-phase dense simplex with Bland's rule;
// all arithmetic exact.
struct Problem {
    std::size_t num_vars = 0;
    std::vector<std::pair<QVec, Rat>> leq;
    std::vector<std::pair<QVec, Rat>> eq;
    QVec objective;

    void add_leq(QVec a, Rat b) { leq.emplace_back(std::move(a), std::move(b)); }
    void add_eq(QVec a, Rat b) { eq.emplace_back(std::move(a), std::move(b)); }
};

Result solve(const Problem& p);

}  // namespace troprank::lp

#endif
