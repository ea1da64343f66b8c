#include "troprank/rank_core.hpp"

#include <algorithm>
#include <set>

#include "troprank/param_curves.hpp"

namespace troprank {

long long expected_rank_embedded(const Subdivision& s) {
    long long r = static_cast<long long>(s.vertices.size()) - 1;
    for (const Cell& c : s.cells)
        r -= static_cast<long long>(c.vertices.size()) - (s.n + 1);
    return r;
}

long long expected_rank_param(const ParamCurve& curve) {
    long long r = static_cast<long long>(curve.ends.size());
    r += static_cast<long long>(curve.n - 3) * (1 - curve.genus);
    std::vector<long long> valence(curve.positions.size(), 0);
    for (const ParamEdge& e : curve.edges) {
        ++valence[e.from];
        ++valence[e.to];
    }
    for (const ParamEnd& e : curve.ends) ++valence[e.node];
    for (long long v : valence) r -= v - 3;
    return r;
}

long long oracle_rank(const Subdivision& s) {
    if (s.coefficients && is_interior_certificate(s, *s.coefficients)) {
        // carried lifting certifies regularity
    } else {
        pick_interior_coefficients(s);  // throws NonRegularError when none exists
    }
    return static_cast<long long>(nullity(lift_condition_matrix(s))) - 1;
}

long long defect(const Subdivision& s) { return oracle_rank(s) - expected_rank_embedded(s); }

QMatrix parallelogram_condition_matrix(const Subdivision& s,
                                       const std::vector<std::size_t>& parallelogram_order) {
    if (s.n != 2) throw DimensionMismatchError("parallelogram conditions need n = 2");
    std::set<std::size_t> parallelograms;
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
        const auto& cls = s.cells[ci].cls;
        if (!cls) throw InvalidCellError("unclassified cell " + std::to_string(ci));
        if (cls->kind == PolygonKind::Parallelogram) parallelograms.insert(ci);
        else if (cls->kind != PolygonKind::Triangle)
            throw InvalidCellError("cell " + std::to_string(ci) +
                                   " is neither a triangle nor a parallelogram");
    }
    if (std::set<std::size_t>(parallelogram_order.begin(), parallelogram_order.end()) !=
            parallelograms ||
        parallelogram_order.size() != parallelograms.size())
        throw std::invalid_argument("order is not a permutation of the parallelogram cells");

    // Columns appear in vertex discovery order along the given cell order.
    std::vector<std::size_t> column_of(s.vertices.size(), static_cast<std::size_t>(-1));
    std::size_t width = 0;
    for (std::size_t ci : parallelogram_order)
        for (std::size_t v : s.cells[ci].vertices)
            if (column_of[v] == static_cast<std::size_t>(-1)) column_of[v] = width++;

    QMatrix m(parallelogram_order.size(), width);
    for (std::size_t r = 0; r < parallelogram_order.size(); ++r) {
        const Cell& cell = s.cells[parallelogram_order[r]];
        Rat sign(1);
        for (std::size_t k = 0; k < 4; ++k) {
            m.at(r, column_of[cell.vertices[k]]) = sign;  // cyclic second difference
            sign = -sign;
        }
    }
    return m;
}

std::vector<std::size_t> cooriented_parallelogram_order(const Subdivision& s) {
    std::vector<std::size_t> pcells;
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci)
        if (s.cells[ci].cls && s.cells[ci].cls->kind == PolygonKind::Parallelogram)
            pcells.push_back(ci);
    if (pcells.empty()) return {};
    std::vector<std::vector<Point>> pts;
    for (std::size_t ci : pcells) pts.push_back(s.cell_points(ci));
    const GenericVector a = make_generic_vector(pts);
    std::vector<std::size_t> order;
    for (std::size_t k : coorient_order(pts, a)) order.push_back(pcells[k]);
    return order;
}

}  // namespace troprank
