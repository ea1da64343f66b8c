#include "troprank/subdivision.hpp"

#include <algorithm>
#include <set>

#include "troprank/lp.hpp"

namespace troprank {

std::vector<Point> Subdivision::cell_points(std::size_t ci) const {
    std::vector<Point> p;
    for (std::size_t v : cells[ci].vertices) p.push_back(vertices[v]);
    return p;
}

std::vector<std::vector<Point>> Subdivision::all_cell_points() const {
    std::vector<std::vector<Point>> out;
    for (std::size_t i = 0; i < cells.size(); ++i) out.push_back(cell_points(i));
    return out;
}

Subdivision make_subdivision(int n, std::vector<Point> vertices,
                             std::vector<std::vector<std::size_t>> cells,
                             std::optional<QVec> coefficients) {
    Subdivision s;
    s.n = n;
    s.vertices = std::move(vertices);
    for (auto& idx : cells) {
        Cell cell;
        cell.vertices = std::move(idx);
        for (std::size_t v : cell.vertices)
            if (v >= s.vertices.size()) throw ValidationError("cell vertex index out of range");
        std::vector<Point> pts;
        for (std::size_t v : cell.vertices) pts.push_back(s.vertices[v]);
        try {
            if (n == 2) {
                const auto order = convex_cyclic_order_2d(pts);
                std::vector<std::size_t> reordered;
                std::vector<Point> cyc;
                for (std::size_t k : order) {
                    reordered.push_back(cell.vertices[k]);
                    cyc.push_back(pts[k]);
                }
                cell.vertices = std::move(reordered);
                cell.cls = classify_polygon_2d(cyc);
            } else {
                std::sort(cell.vertices.begin(), cell.vertices.end());
                cell.cls = is_simplex(pts, n) ? PolygonClass{PolygonKind::Simplex, 0}
                                              : PolygonClass{PolygonKind::NonSimplex, 0};
            }
        } catch (const InvalidCellError&) {
        } catch (const DegenerateCellError&) {
        }
        s.cells.push_back(std::move(cell));
    }
    if (coefficients) s.coefficients = TropicalPolynomial{std::move(*coefficients)};
    return s;
}

namespace {

struct BBox {
    ZVec lo, hi;
};

BBox bbox_of(const std::vector<Point>& pts) {
    BBox b{pts.front(), pts.front()};
    for (const Point& p : pts)
        for (std::size_t c = 0; c < p.size(); ++c) {
            b.lo[c] = std::min(b.lo[c], p[c]);
            b.hi[c] = std::max(b.hi[c], p[c]);
        }
    return b;
}

bool boxes_have_gap(const BBox& a, const BBox& b) {
    for (std::size_t c = 0; c < a.lo.size(); ++c)
        if (a.hi[c] < b.lo[c] || b.hi[c] < a.lo[c]) return true;
    return false;
}

// Certifies that the cells meet in the common face spanned by their shared
// vertices: a functional equal on the shared set and strictly separating the
// remaining vertices.
bool meets_in_common_face(int n, const std::vector<Point>& a, const std::vector<Point>& b) {
    std::vector<Point> shared;
    for (const Point& p : a)
        if (std::find(b.begin(), b.end(), p) != b.end()) shared.push_back(p);

    lp::Problem prob;
    prob.num_vars = static_cast<std::size_t>(n) + 1;  // u, beta
    prob.objective.assign(prob.num_vars, Rat(0));
    auto functional = [&](const Point& p, const Rat& sign) {
        QVec row(prob.num_vars);
        for (int c = 0; c < n; ++c) row[c] = sign * Rat(p[c], 1);
        row[n] = -sign;
        return row;
    };
    for (const Point& p : shared) prob.add_eq(functional(p, Rat(1)), Rat(0));
    for (const Point& p : a)
        if (std::find(shared.begin(), shared.end(), p) == shared.end())
            prob.add_leq(functional(p, Rat(1)), Rat(-1));
    for (const Point& p : b)
        if (std::find(shared.begin(), shared.end(), p) == shared.end())
            prob.add_leq(functional(p, Rat(-1)), Rat(-1));
    return lp::solve(prob).status == lp::Status::Optimal;
}

}  // namespace

ValidationReport validate(const Subdivision& s) {
    ValidationReport rep;
    auto flag = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };

    if (s.n < 1) flag("dimension must be at least 1");
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        if (s.vertices[i].size() != static_cast<std::size_t>(s.n))
            flag("vertex " + std::to_string(i) + " has wrong dimension");
        for (std::size_t j = i + 1; j < s.vertices.size(); ++j)
            if (s.vertices[i] == s.vertices[j])
                flag("vertices " + std::to_string(i) + "," + std::to_string(j) + " coincide");
    }
    if (s.coefficients && s.coefficients->coefficients.size() != s.vertices.size())
        flag("coefficient count differs from vertex count");
    if (!rep.ok()) return rep;

    std::vector<bool> used(s.vertices.size(), false);
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
        const Cell& cell = s.cells[ci];
        const std::string name = "cell " + std::to_string(ci);
        std::set<std::size_t> uniq(cell.vertices.begin(), cell.vertices.end());
        if (uniq.size() != cell.vertices.size()) flag(name + " repeats a vertex");
        for (std::size_t v : cell.vertices) used[v] = true;
        if (cell.vertices.size() < static_cast<std::size_t>(s.n) + 1)
            flag(name + " has fewer than n+1 vertices");
        else if (affine_dim(s.cell_points(ci)) != s.n)
            flag(name + " is not full-dimensional");
        else if (!cell.cls)
            flag(name + " is not in convex position");
    }
    for (std::size_t v = 0; v < s.vertices.size(); ++v)
        if (!used[v]) flag("vertex " + std::to_string(v) + " belongs to no cell");
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        for (std::size_t j = i + 1; j < s.cells.size(); ++j) {
            std::set<std::size_t> a(s.cells[i].vertices.begin(), s.cells[i].vertices.end());
            std::set<std::size_t> b(s.cells[j].vertices.begin(), s.cells[j].vertices.end());
            if (a == b) flag("cells " + std::to_string(i) + "," + std::to_string(j) + " coincide");
        }
    if (!rep.ok()) return rep;

    if ((s.n == 2 || s.n == 3) && !s.cells.empty()) {
        Rat total(0);
        for (std::size_t ci = 0; ci < s.cells.size(); ++ci)
            total += volume(s.cell_points(ci), s.n);
        if (total != volume(s.vertices, s.n))
            flag("cell volumes do not cover the Newton polytope");
    }

    std::vector<BBox> boxes;
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) boxes.push_back(bbox_of(s.cell_points(ci)));
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        for (std::size_t j = i + 1; j < s.cells.size(); ++j) {
            if (boxes_have_gap(boxes[i], boxes[j])) continue;
            if (!meets_in_common_face(s.n, s.cell_points(i), s.cell_points(j)))
                flag("cells " + std::to_string(i) + "," + std::to_string(j) +
                     " do not intersect in a common face");
        }
    return rep;
}

TropicalValue tropical_eval(const TropicalPolynomial& f, const Subdivision& s, const QVec& x) {
    if (x.size() != static_cast<std::size_t>(s.n))
        throw DimensionMismatchError("evaluation point has wrong dimension");
    TropicalValue out;
    for (std::size_t v = 0; v < s.vertices.size(); ++v) {
        const Rat val = dot(x, s.vertices[v]) + f.coefficients[v];
        if (out.argmax.empty() || val > out.value) {
            out.value = val;
            out.argmax.assign(1, v);
        } else if (val == out.value) {
            out.argmax.push_back(v);
        }
    }
    return out;
}

CellAnchors cell_anchors(const Subdivision& s, std::size_t ci) {
    std::vector<std::size_t> sorted = s.cells[ci].vertices;
    std::sort(sorted.begin(), sorted.end());

    CellAnchors a;
    std::vector<Point> chosen;
    for (std::size_t v : sorted) {
        if (a.anchors.size() == static_cast<std::size_t>(s.n) + 1) break;
        chosen.push_back(s.vertices[v]);
        if (affine_dim(chosen) == static_cast<int>(chosen.size()) - 1) {
            a.anchors.push_back(v);
        } else {
            chosen.pop_back();
        }
    }
    if (a.anchors.size() != static_cast<std::size_t>(s.n) + 1)
        throw DegenerateCellError("cell " + std::to_string(ci) +
                                  " has no full-dimensional anchor set");
    for (std::size_t v : sorted)
        if (std::find(a.anchors.begin(), a.anchors.end(), v) == a.anchors.end())
            a.others.emplace_back(v, barycentric_in_anchors(s, a, s.vertices[v]));
    return a;
}

QVec barycentric_in_anchors(const Subdivision& s, const CellAnchors& a, const Point& p) {
    const std::size_t k = a.anchors.size();
    QMatrix m(static_cast<std::size_t>(s.n) + 1, k);
    QVec rhs(static_cast<std::size_t>(s.n) + 1);
    for (std::size_t col = 0; col < k; ++col) {
        m.at(0, col) = 1;
        for (int r = 0; r < s.n; ++r) m.at(r + 1, col) = Rat(s.vertices[a.anchors[col]][r], 1);
    }
    rhs[0] = 1;
    for (int r = 0; r < s.n; ++r) rhs[r + 1] = Rat(p[r], 1);
    auto sol = solve_linear(m, rhs);
    if (!sol) throw std::logic_error("anchor system must be solvable");
    return *sol;
}

QMatrix lift_condition_matrix(const Subdivision& s) {
    QMatrix m(0, s.vertices.size());
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
        const CellAnchors a = cell_anchors(s, ci);
        for (const auto& [v, lambda] : a.others) {
            QVec row(s.vertices.size(), Rat(0));
            row[v] = 1;
            for (std::size_t k = 0; k < a.anchors.size(); ++k) row[a.anchors[k]] -= lambda[k];
            m.append_row(row);
        }
    }
    return m;
}

bool is_interior_certificate(const Subdivision& s, const TropicalPolynomial& f,
                             std::string* reason) {
    const QVec& c = f.coefficients;
    if (c.size() != s.vertices.size()) {
        if (reason) *reason = "coefficient count differs from vertex count";
        return false;
    }
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
        const CellAnchors a = cell_anchors(s, ci);
        auto lift_at = [&](const QVec& lambda) {
            Rat v(0);
            for (std::size_t k = 0; k < a.anchors.size(); ++k) v += lambda[k] * c[a.anchors[k]];
            return v;
        };
        for (const auto& [v, lambda] : a.others) {
            if (lift_at(lambda) != c[v]) {
                if (reason)
                    *reason = "lift is not affine on cell " + std::to_string(ci);
                return false;
            }
        }
        std::set<std::size_t> members(s.cells[ci].vertices.begin(), s.cells[ci].vertices.end());
        for (std::size_t v = 0; v < s.vertices.size(); ++v) {
            if (members.count(v)) continue;
            const QVec lambda = barycentric_in_anchors(s, a, s.vertices[v]);
            if (lift_at(lambda) <= c[v]) {
                if (reason)
                    *reason = "vertex " + std::to_string(v) +
                              " is not strictly below the lift of cell " + std::to_string(ci);
                return false;
            }
        }
    }
    return true;
}

TropicalPolynomial pick_interior_coefficients(const Subdivision& s) {
    const std::size_t nv = s.vertices.size();
    const std::vector<QVec> kernel = solve_homogeneous(lift_condition_matrix(s));
    const std::size_t d = kernel.size();

    // Strictness rows expressed in kernel coordinates y (c = sum y_j K_j).
    std::vector<QVec> rows;
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
        const CellAnchors a = cell_anchors(s, ci);
        std::set<std::size_t> members(s.cells[ci].vertices.begin(), s.cells[ci].vertices.end());
        for (std::size_t v = 0; v < nv; ++v) {
            if (members.count(v)) continue;
            const QVec lambda = barycentric_in_anchors(s, a, s.vertices[v]);
            QVec coeff_on_c(nv, Rat(0));
            for (std::size_t k = 0; k < a.anchors.size(); ++k) coeff_on_c[a.anchors[k]] += lambda[k];
            coeff_on_c[v] -= 1;
            QVec g(d, Rat(0));
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t i = 0; i < nv; ++i) g[j] += coeff_on_c[i] * kernel[j][i];
            rows.push_back(std::move(g));
        }
    }

    QVec c(nv, Rat(0));
    if (!rows.empty()) {
        lp::Problem prob;  // variables: y (d), then the slack t; maximize t <= 1
        prob.num_vars = d + 1;
        prob.objective.assign(d + 1, Rat(0));
        prob.objective[d] = 1;
        for (const QVec& g : rows) {
            QVec row(d + 1, Rat(0));
            for (std::size_t j = 0; j < d; ++j) row[j] = -g[j];
            row[d] = 1;
            prob.add_leq(std::move(row), Rat(0));
        }
        {
            QVec cap(d + 1, Rat(0));
            cap[d] = 1;
            prob.add_leq(std::move(cap), Rat(1));
        }
        const lp::Result res = lp::solve(prob);
        if (res.status != lp::Status::Optimal || res.value <= 0)
            throw NonRegularError("no coefficient vector induces this subdivision");
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < nv; ++i) c[i] += res.x[j] * kernel[j][i];
        Int scale = 1;
        for (const Rat& x : c) scale = boost::multiprecision::lcm(scale, denominator(x));
        for (Rat& x : c) x *= Rat(scale, 1);
    }

    TropicalPolynomial f{std::move(c)};
    std::string why;
    if (!is_interior_certificate(s, f, &why))
        throw std::logic_error("interior certificate re-check failed: " + why);
    return f;
}

DualComplex dual_complex(const Subdivision& s, const TropicalPolynomial& f) {
    std::string why;
    if (!is_interior_certificate(s, f, &why)) throw NonInteriorError(why);

    DualComplex dc;
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
        const CellAnchors a = cell_anchors(s, ci);
        // <w, x> - M = -c_w over the anchors.
        QMatrix m(a.anchors.size(), static_cast<std::size_t>(s.n) + 1);
        QVec rhs(a.anchors.size());
        for (std::size_t r = 0; r < a.anchors.size(); ++r) {
            for (int c = 0; c < s.n; ++c) m.at(r, c) = Rat(s.vertices[a.anchors[r]][c], 1);
            m.at(r, s.n) = -1;
            rhs[r] = -f.coefficients[a.anchors[r]];
        }
        const auto sol = solve_linear(m, rhs);
        if (!sol) throw std::logic_error("dual vertex system must be solvable");
        dc.cell_point.emplace_back(sol->begin(), sol->begin() + s.n);
        dc.cell_value.push_back((*sol)[s.n]);
    }

    const auto cells_pts = s.all_cell_points();
    std::vector<std::set<std::vector<Int>>> interior_facets(s.cells.size());
    for (const FacetSharing& sh : shared_facets(cells_pts)) {
        DualComplex::Edge e;
        e.a = sh.i;
        e.b = sh.j;
        e.direction = sh.outward_from_i;
        e.weight = normalized_facet_volume(sh.points);
        for (std::size_t v = 0; v < s.vertices.size(); ++v)
            if (std::find(sh.points.begin(), sh.points.end(), s.vertices[v]) != sh.points.end())
                e.facet.push_back(v);
        // dual edge runs along the facet normal, away from cell a
        QVec diff(s.n);
        for (int c = 0; c < s.n; ++c) diff[c] = dc.cell_point[e.b][c] - dc.cell_point[e.a][c];
        std::optional<Rat> t;
        for (int c = 0; c < s.n; ++c) {
            if (e.direction[c] == 0) {
                if (diff[c] != 0) throw std::logic_error("dual edge not parallel to facet normal");
                continue;
            }
            const Rat ratio = diff[c] / Rat(e.direction[c], 1);
            if (t && *t != ratio) throw std::logic_error("dual edge not parallel to facet normal");
            t = ratio;
        }
        if (!t || *t <= 0) throw std::logic_error("dual edge has nonpositive length");
        e.length = *t;
        // remember which facets of each cell are interior
        auto key = [](std::vector<Point> pts) {
            std::sort(pts.begin(), pts.end());
            std::vector<Int> flat;
            for (const Point& p : pts) flat.insert(flat.end(), p.begin(), p.end());
            return flat;
        };
        interior_facets[sh.i].insert(key(sh.points));
        interior_facets[sh.j].insert(key(sh.points));
        dc.edges.push_back(std::move(e));
    }

    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
        const std::vector<Point>& pts = cells_pts[ci];
        for (const HullFacet& hf : hull_facets(pts, s.n)) {
            std::vector<Point> fpts;
            for (std::size_t k : hf.on) fpts.push_back(pts[k]);
            std::vector<Point> sorted = fpts;
            std::sort(sorted.begin(), sorted.end());
            std::vector<Int> flat;
            for (const Point& p : sorted) flat.insert(flat.end(), p.begin(), p.end());
            if (interior_facets[ci].count(flat)) continue;
            DualComplex::Ray ray;
            ray.cell = ci;
            ray.direction = hf.normal;
            ray.weight = normalized_facet_volume(fpts);
            for (std::size_t v = 0; v < s.vertices.size(); ++v)
                if (std::find(fpts.begin(), fpts.end(), s.vertices[v]) != fpts.end())
                    ray.facet.push_back(v);
            dc.rays.push_back(std::move(ray));
        }
    }

    // Balancing at every dual vertex: weighted outward facet normals cancel.
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
        ZVec sum(s.n, Int(0));
        for (const auto& e : dc.edges) {
            if (e.a == ci)
                for (int c = 0; c < s.n; ++c) sum[c] += e.weight * e.direction[c];
            if (e.b == ci)
                for (int c = 0; c < s.n; ++c) sum[c] -= e.weight * e.direction[c];
        }
        for (const auto& r : dc.rays)
            if (r.cell == ci)
                for (int c = 0; c < s.n; ++c) sum[c] += r.weight * r.direction[c];
        for (const Int& x : sum)
            if (x != 0) throw std::logic_error("dual complex fails the balancing identity");
    }
    return dc;
}

}  // namespace troprank
