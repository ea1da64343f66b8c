#include "troprank/curve_bounds.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace troprank {

std::vector<std::size_t> nontrivial_cells(const Subdivision& s) {
    std::vector<std::size_t> out;
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
        const auto& cls = s.cells[ci].cls;
        if (!cls) throw InvalidCellError("unclassified cell " + std::to_string(ci));
        if (!cls->trivial_2d()) out.push_back(ci);
    }
    return out;
}

long long lemma22_defect_bound(const Subdivision& s) {
    if (s.n != 2) throw DimensionMismatchError("defect bound needs n = 2");
    long long sum = 0;
    bool qualifying = false;
    for (const Cell& cell : s.cells) {
        if (!cell.cls) throw InvalidCellError("unclassified cell");
        const int m = cell.cls->half_gon;
        switch (cell.cls->kind) {
            case PolygonKind::Triangle:
            case PolygonKind::Parallelogram:
                break;  // cancels in (2m-3)N_4 - N'_4
            case PolygonKind::EvenGonNonParallel:
                sum += 2 * m - 3;
                qualifying = true;
                break;
            case PolygonKind::ParallelEvenGon:
                sum += 2 * m - 4;  // (2m-3) - 1 for the parallel pair count
                qualifying = true;
                break;
            case PolygonKind::OddGon:
                sum += 2 * m - 2;
                qualifying = true;
                break;
            default:
                throw InvalidCellError("unexpected cell class in the plane");
        }
    }
    if (!qualifying) return 0;
    return std::max<long long>(0, sum - 1);
}

long long upper_bound_ordered(const Subdivision& s, const std::vector<std::size_t>& order) {
    const std::vector<std::size_t> nic = nontrivial_cells(s);
    if (std::set<std::size_t>(order.begin(), order.end()) !=
            std::set<std::size_t>(nic.begin(), nic.end()) ||
        order.size() != nic.size())
        throw std::invalid_argument("order is not a permutation of the non-trivial cells");

    long long bound = static_cast<long long>(s.vertices.size()) - 1;
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci)
        if (s.cells[ci].cls->trivial_2d())
            bound -= static_cast<long long>(s.cells[ci].vertices.size()) - 3;

    std::set<std::size_t> seen;
    for (std::size_t ci : order) {
        long long shared = 0;
        for (std::size_t v : s.cells[ci].vertices) shared += seen.count(v);
        bound -= static_cast<long long>(s.cells[ci].vertices.size()) -
                 std::max<long long>(3, shared);
        for (std::size_t v : s.cells[ci].vertices) seen.insert(v);
    }
    return bound;
}

namespace {

std::vector<std::size_t> kth_permutation(std::vector<std::size_t> items, std::uint64_t k) {
    std::vector<std::size_t> out;
    while (!items.empty()) {
        std::uint64_t fact = 1;
        for (std::size_t i = 2; i < items.size(); ++i) fact *= i;
        const std::size_t pick = items.size() == 1 ? 0 : static_cast<std::size_t>(k / fact);
        k %= fact;
        out.push_back(items[pick]);
        items.erase(items.begin() + static_cast<long>(pick));
    }
    return out;
}

template <typename Eval>
long long min_over_orders(const std::vector<std::vector<std::size_t>>& orders, Eval eval,
                          Exec exec) {
    long long best = 0;
    bool first = true;
    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            long long local_best = 0;
            bool local_first = true;
#pragma omp for nowait
            for (long i = 0; i < static_cast<long>(orders.size()); ++i) {
                const long long v = eval(orders[static_cast<std::size_t>(i)]);
                if (local_first || v < local_best) {
                    local_best = v;
                    local_first = false;
                }
            }
#pragma omp critical
            {
                if (!local_first && (first || local_best < best)) {
                    best = local_best;
                    first = false;
                }
            }
        }
    } else {
        for (const auto& order : orders) {
            const long long v = eval(order);
            if (first || v < best) {
                best = v;
                first = false;
            }
        }
    }
    if (first) throw std::logic_error("no ordering to evaluate");
    return best;
}

std::vector<std::vector<std::size_t>> orders_for(const Subdivision& s,
                                                 const std::vector<std::size_t>& cells,
                                                 const OrderPolicy& policy) {
    std::vector<std::vector<std::size_t>> orders;
    switch (policy.strategy) {
        case OrderStrategy::Exhaustive: {
            if (cells.size() > 8)
                throw BudgetError("exhaustive ordering search limited to 8 non-trivial cells");
            std::uint64_t total = 1;
            for (std::size_t i = 2; i <= cells.size(); ++i) total *= i;
            for (std::uint64_t k = 0; k < total; ++k) orders.push_back(kth_permutation(cells, k));
            break;
        }
        case OrderStrategy::Cooriented: {
            std::vector<std::vector<Point>> pts;
            for (std::size_t ci : cells) pts.push_back(s.cell_points(ci));
            if (cells.empty()) {
                orders.push_back({});
                break;
            }
            GenericVector a = make_generic_vector(pts);
            GenericVector minus = a;
            for (Rat& x : minus.components) x = -x;
            for (const GenericVector& g : {a, minus}) {
                std::vector<std::size_t> order;
                for (std::size_t k : coorient_order(pts, g)) order.push_back(cells[k]);
                orders.push_back(std::move(order));
            }
            break;
        }
        case OrderStrategy::Sampled: {
            std::mt19937_64 rng(policy.seed);
            std::vector<std::size_t> base = cells;
            for (std::size_t i = 0; i < std::max<std::size_t>(1, policy.samples); ++i) {
                std::shuffle(base.begin(), base.end(), rng);
                orders.push_back(base);
            }
            break;
        }
    }
    return orders;
}

}  // namespace

long long best_upper_bound(const Subdivision& s, const OrderPolicy& policy, Exec exec) {
    const std::vector<std::size_t> cells = nontrivial_cells(s);
    const auto orders = orders_for(s, cells, policy);
    return min_over_orders(
        orders, [&](const std::vector<std::size_t>& o) { return upper_bound_ordered(s, o); },
        exec);
}

std::vector<long long> three_nontrivial_values(const Subdivision& s) {
    std::vector<std::size_t> cells = nontrivial_cells(s);
    if (cells.size() != 3)
        throw std::invalid_argument("exactly three non-trivial cells required");
    std::sort(cells.begin(), cells.end());
    std::vector<long long> values;
    do {
        values.push_back(upper_bound_ordered(s, cells));
    } while (std::next_permutation(cells.begin(), cells.end()));
    return values;
}

long long exact_rank_three_nontrivial(const Subdivision& s) {
    const std::vector<long long> values = three_nontrivial_values(s);
    return *std::min_element(values.begin(), values.end());
}

RankReport rank_with_certificate(const Subdivision& s, const OrderPolicy& policy, Exec exec) {
    if (s.n != 2) throw DimensionMismatchError("plane-curve dispatcher needs n = 2");
    const long long expected = expected_rank_embedded(s);
    const std::size_t k = nontrivial_cells(s).size();

    RankReport report;
    if (k == 0) {
        report = RankReport::make_exact(expected, "nodal-equality");
    } else if (k <= 2) {
        report = RankReport::make_exact(expected, "two-non-trivial-equality");
    } else if (k == 3) {
        report = RankReport::make_exact(exact_rank_three_nontrivial(s), "three-non-trivial-formula");
    } else {
        OrderPolicy p = policy;
        if (p.strategy == OrderStrategy::Exhaustive && k > 8) p.strategy = OrderStrategy::Sampled;
        long long upper = best_upper_bound(s, p, exec);
        if (p.strategy != OrderStrategy::Cooriented) {
            OrderPolicy coor{OrderStrategy::Cooriented, 0, 0};
            upper = std::min(upper, best_upper_bound(s, coor, exec));
        }
        upper = std::min(upper, expected + lemma22_defect_bound(s) / 2);
        report = RankReport::make_bounds(expected, upper, "ordered-upper-bound+defect-bound");
    }

    try {
        const long long oracle = oracle_rank(s);
        report.oracle = oracle;
        report.defect = oracle - expected;
    } catch (const NonRegularError&) {
    }
    return report;
}

}  // namespace troprank
