#include "troprank/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "troprank/matrix.hpp"

namespace troprank {

Int dot(const ZVec& a, const ZVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const QVec& a, const ZVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i], 1);
    return s;
}

Rat dot(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int cross2(const ZVec& a, const ZVec& b) { return a[0] * b[1] - a[1] * b[0]; }

ZVec sub(const Point& a, const Point& b) {
    ZVec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

Int int_determinant(std::vector<ZVec> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k;
        while (pr < n && m[pr][k] == 0) ++pr;
        if (pr == n) return 0;
        if (pr != k) {
            std::swap(m[pr], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

ZVec make_primitive(ZVec v) {
    Int g = gcd_of(v);
    if (g > 1)
        for (Int& x : v) x /= g;
    return v;
}

namespace {

QMatrix difference_matrix(const std::vector<Point>& points) {
    std::vector<QVec> rows;
    for (std::size_t i = 1; i < points.size(); ++i) {
        QVec r(points[i].size());
        for (std::size_t c = 0; c < r.size(); ++c)
            r[c] = Rat(points[i][c] - points[0][c], 1);
        rows.push_back(std::move(r));
    }
    return QMatrix::from_rows(rows);
}

}  // namespace

int affine_dim(const std::vector<Point>& points) {
    if (points.empty()) return -1;
    const std::size_t n = points.front().size();
    for (const Point& p : points)
        if (p.size() != n)
            throw DimensionMismatchError("points of mixed dimension in affine_dim");
    if (points.size() == 1) return 0;
    return static_cast<int>(matrix_rank(difference_matrix(points)));
}

std::string to_string(const PolygonClass& c) {
    switch (c.kind) {
        case PolygonKind::Triangle: return "triangle";
        case PolygonKind::Parallelogram: return "parallelogram";
        case PolygonKind::ParallelEvenGon:
            return "parallel-" + std::to_string(2 * c.half_gon) + "-gon";
        case PolygonKind::EvenGonNonParallel:
            return std::to_string(2 * c.half_gon) + "-gon";
        case PolygonKind::OddGon: return std::to_string(2 * c.half_gon + 1) + "-gon";
        case PolygonKind::Simplex: return "simplex";
        case PolygonKind::NonSimplex: return "non-simplex";
    }
    return "?";
}

std::vector<std::size_t> convex_cyclic_order_2d(const std::vector<Point>& points) {
    const std::size_t k = points.size();
    if (k < 3) throw InvalidCellError("2D cell needs at least 3 vertices");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (points[i] == points[j]) throw InvalidCellError("repeated cell vertex");

    // Sort counterclockwise around the centroid (scaled by k to stay integral).
    ZVec center(2, Int(0));
    for (const Point& p : points) {
        center[0] += p[0];
        center[1] += p[1];
    }
    auto scaled = [&](std::size_t i) {
        return ZVec{points[i][0] * Int(k) - center[0], points[i][1] * Int(k) - center[1]};
    };
    auto half = [](const ZVec& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; };
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const ZVec vi = scaled(i), vj = scaled(j);
        if (half(vi) != half(vj)) return half(vi) < half(vj);
        const Int c = cross2(vi, vj);
        if (c != 0) return c > 0;
        return points[i] < points[j];
    });

    for (std::size_t i = 0; i < k; ++i) {
        const Point& a = points[order[i]];
        const Point& b = points[order[(i + 1) % k]];
        const Point& c = points[order[(i + 2) % k]];
        if (cross2(sub(b, a), sub(c, b)) <= 0)
            throw InvalidCellError("cell vertices not in strictly convex position");
    }

    const std::size_t start = static_cast<std::size_t>(std::distance(
        order.begin(),
        std::min_element(order.begin(), order.end(),
                         [&](std::size_t i, std::size_t j) { return points[i] < points[j]; })));
    std::rotate(order.begin(), order.begin() + start, order.end());
    return order;
}

PolygonClass classify_polygon_2d(const std::vector<Point>& cyclic) {
    const std::size_t k = cyclic.size();
    if (k < 3) throw InvalidCellError("polygon needs at least 3 vertices");
    if (k == 3) return {PolygonKind::Triangle, 0};
    if (k % 2 == 1) return {PolygonKind::OddGon, static_cast<int>(k / 2)};

    const std::size_t m = k / 2;
    bool all_parallel = true;
    for (std::size_t i = 0; i < m && all_parallel; ++i) {
        const ZVec e1 = sub(cyclic[(i + 1) % k], cyclic[i]);
        const ZVec e2 = sub(cyclic[(i + m + 1) % k], cyclic[(i + m) % k]);
        if (cross2(e1, e2) != 0) all_parallel = false;
    }
    if (all_parallel)
        return k == 4 ? PolygonClass{PolygonKind::Parallelogram, 0}
                      : PolygonClass{PolygonKind::ParallelEvenGon, static_cast<int>(m)};
    return {PolygonKind::EvenGonNonParallel, static_cast<int>(m)};
}

bool is_simplex(const std::vector<Point>& vertices, int n) {
    if (vertices.size() < static_cast<std::size_t>(n) + 1)
        throw InvalidCellError("cell needs at least n+1 vertices");
    const int dim = affine_dim(vertices);
    if (vertices.size() == static_cast<std::size_t>(n) + 1) {
        if (dim < n) throw DegenerateCellError("minimal cell of deficient dimension");
        return true;
    }
    return false;
}

namespace {

std::vector<Point> shared_points(const std::vector<Point>& a, const std::vector<Point>& b) {
    std::vector<Point> w;
    for (const Point& p : a)
        if (std::find(b.begin(), b.end(), p) != b.end()) w.push_back(p);
    return w;
}

}  // namespace

std::vector<FacetSharing> shared_facets(const std::vector<std::vector<Point>>& cells) {
    std::vector<FacetSharing> out;
    if (cells.empty()) return out;
    const int n = static_cast<int>(cells.front().front().size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            std::vector<Point> w = shared_points(cells[i], cells[j]);
            if (w.empty() || affine_dim(w) != n - 1) continue;
            ZVec nrm = primitive_normal(w);
            const Int b = dot(nrm, w.front());
            // orient outward from cell i
            int side = 0;
            bool mixed = false;
            for (const Point& v : cells[i]) {
                const Int s = dot(nrm, v) - b;
                if (s == 0) continue;
                const int sgn = s > 0 ? 1 : -1;
                if (side == 0) side = sgn;
                else if (side != sgn) mixed = true;
            }
            if (mixed || side == 0) continue;  // shared set is not a face of cell i
            if (side > 0)
                for (Int& x : nrm) x = -x;
            out.push_back({i, j, std::move(w), std::move(nrm)});
        }
    }
    return out;
}

bool is_generic_for(const GenericVector& a, const std::vector<std::vector<Point>>& cells) {
    if (cells.empty()) return true;
    const std::size_t n = cells.front().front().size();
    if (n == 2) {
        for (const auto& cell : cells) {
            const auto order = convex_cyclic_order_2d(cell);
            for (std::size_t i = 0; i < order.size(); ++i) {
                const ZVec e = sub(cell[order[(i + 1) % order.size()]], cell[order[i]]);
                const ZVec normal{-e[1], e[0]};
                if (dot(a.components, e) == 0) return false;
                if (dot(a.components, normal) == 0) return false;
            }
        }
        return true;
    }
    for (const FacetSharing& f : shared_facets(cells))
        if (dot(a.components, f.outward_from_i) == 0) return false;
    return true;
}

GenericVector make_generic_vector(const std::vector<std::vector<Point>>& cells) {
    Int maxabs = 0;
    std::size_t n = 2;
    for (const auto& cell : cells)
        for (const Point& p : cell) {
            n = p.size();
            for (const Int& x : p) maxabs = std::max(maxabs, abs(x));
        }
    for (Int k = 1 + 2 * maxabs;; ++k) {
        GenericVector a;
        Rat pow(1);
        for (std::size_t i = 0; i < n; ++i) {
            a.components.push_back(pow);
            pow *= Rat(k, 1);
        }
        if (is_generic_for(a, cells)) return a;
    }
}

std::vector<std::size_t> coorient_order(const std::vector<std::vector<Point>>& cells,
                                        const GenericVector& a) {
    const std::size_t m = cells.size();
    std::vector<std::vector<std::size_t>> succ(m);
    std::vector<std::size_t> indeg(m, 0);
    for (const FacetSharing& f : shared_facets(cells)) {
        const Rat s = dot(a.components, f.outward_from_i);
        if (s == 0) throw GenericityError("direction not generic for the configuration");
        const std::size_t from = s > 0 ? f.i : f.j;
        const std::size_t to = s > 0 ? f.j : f.i;
        succ[from].push_back(to);
        ++indeg[to];
    }
    std::vector<std::size_t> order;
    std::vector<bool> done(m, false);
    for (std::size_t step = 0; step < m; ++step) {
        std::size_t pick = m;
        for (std::size_t i = 0; i < m; ++i)
            if (!done[i] && indeg[i] == 0) {
                pick = i;
                break;
            }
        if (pick == m) throw GenericityError("cyclic coorientation relation");
        done[pick] = true;
        order.push_back(pick);
        for (std::size_t t : succ[pick]) --indeg[t];
    }
    return order;
}

std::vector<std::size_t> convex_hull_2d(const std::vector<Point>& points) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dup = false;
        for (std::size_t j : idx) dup = dup || points[j] == points[i];
        if (!dup) idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return points[i] < points[j]; });
    if (idx.size() <= 2) return idx;

    auto build = [&](const std::vector<std::size_t>& in) {
        std::vector<std::size_t> h;
        for (std::size_t i : in) {
            while (h.size() >= 2 &&
                   cross2(sub(points[h.back()], points[h[h.size() - 2]]),
                          sub(points[i], points[h.back()])) <= 0)
                h.pop_back();
            h.push_back(i);
        }
        return h;
    };
    std::vector<std::size_t> lower = build(idx);
    std::reverse(idx.begin(), idx.end());
    std::vector<std::size_t> upper = build(idx);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return lower;
}

std::vector<HullFacet> hull_facets(const std::vector<Point>& points, int d) {
    const std::size_t v = points.size();
    std::vector<HullFacet> facets;
    std::set<std::pair<ZVec, Int>> seen;

    std::vector<std::size_t> comb(d);
    std::iota(comb.begin(), comb.end(), 0);
    if (v < static_cast<std::size_t>(d)) return facets;

    auto next_comb = [&]() {
        int i = d - 1;
        while (i >= 0 && comb[i] == v - d + i) --i;
        if (i < 0) return false;
        ++comb[i];
        for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
        return true;
    };

    do {
        std::vector<QVec> diffs;
        for (int i = 1; i < d; ++i) {
            QVec r(d);
            for (int c = 0; c < d; ++c)
                r[c] = Rat(points[comb[i]][c] - points[comb[0]][c], 1);
            diffs.push_back(std::move(r));
        }
        QMatrix dm = QMatrix::from_rows(diffs);
        if (d > 1 && matrix_rank(dm) != static_cast<std::size_t>(d - 1)) continue;
        std::vector<QVec> kernel = d == 1 ? std::vector<QVec>{{Rat(1)}} : solve_homogeneous(dm);
        if (kernel.size() != 1) continue;

        ZVec nrm(d);
        Int scale = 1;
        for (int c = 0; c < d; ++c) scale = boost::multiprecision::lcm(scale, denominator(kernel[0][c]));
        for (int c = 0; c < d; ++c)
            nrm[c] = numerator(kernel[0][c]) * (scale / denominator(kernel[0][c]));
        nrm = make_primitive(nrm);

        Int b = dot(nrm, points[comb[0]]);
        bool above = false, below = false;
        for (const Point& p : points) {
            const Int s = dot(nrm, p) - b;
            if (s > 0) above = true;
            if (s < 0) below = true;
            if (above && below) break;
        }
        if (above && below) continue;
        if (above) {
            for (Int& x : nrm) x = -x;
            b = -b;
        }
        auto key = std::make_pair(nrm, b);
        if (!seen.insert(key).second) continue;

        HullFacet f;
        f.normal = std::move(nrm);
        f.offset = b;
        for (std::size_t i = 0; i < v; ++i)
            if (dot(f.normal, points[i]) == f.offset) f.on.push_back(i);
        facets.push_back(std::move(f));
    } while (next_comb());

    return facets;
}

namespace {

Rat polygon_area_2d(const std::vector<Point>& points) {
    const std::vector<std::size_t> hull = convex_hull_2d(points);
    if (hull.size() < 3) return Rat(0);
    Int twice(0);
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& a = points[hull[i]];
        const Point& b = points[hull[(i + 1) % hull.size()]];
        twice += a[0] * b[1] - b[0] * a[1];
    }
    return Rat(abs(twice), 2);
}

}  // namespace

Rat volume(const std::vector<Point>& points, int d) {
    if (points.empty()) return Rat(0);
    if (d == 1) {
        Int lo = points[0][0], hi = points[0][0];
        for (const Point& p : points) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return Rat(hi - lo, 1);
    }
    if (d == 2) return polygon_area_2d(points);
    if (d != 3) throw std::invalid_argument("volume supports dimensions 1..3");
    if (affine_dim(points) < 3) return Rat(0);

    const Point& ref = points.front();
    Rat vol(0);
    for (const HullFacet& f : hull_facets(points, 3)) {
        if (dot(f.normal, ref) == f.offset) continue;  // pyramid over this facet is flat
        std::vector<Point> fp;
        for (std::size_t i : f.on) fp.push_back(points[i]);
        std::vector<ZVec> dirs;
        for (std::size_t i = 1; i < fp.size(); ++i) dirs.push_back(sub(fp[i], fp[0]));
        const std::vector<ZVec> basis = lattice_basis_of_span(dirs, 3);
        std::vector<Point> plane2d;
        for (const Point& p : fp) plane2d.push_back(lattice_coordinates(p, fp[0], basis));
        const std::vector<std::size_t> cyc = convex_hull_2d(plane2d);
        Int acc(0);
        for (std::size_t t = 1; t + 1 < cyc.size(); ++t) {
            std::vector<ZVec> m{sub(fp[cyc[0]], ref), sub(fp[cyc[t]], ref),
                                sub(fp[cyc[t + 1]], ref)};
            acc += int_determinant(std::move(m));
        }
        vol += Rat(abs(acc), 6);
    }
    return vol;
}

std::vector<ZVec> integer_kernel(const std::vector<ZVec>& rows, std::size_t n) {
    // Column-style Hermite reduction with a tracked unimodular transform.
    std::vector<ZVec> w = rows;
    std::vector<ZVec> u(n, ZVec(n, Int(0)));  // u[j] is column j
    for (std::size_t j = 0; j < n; ++j) u[j][j] = 1;

    auto col_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (ZVec& row : w) row[dst] -= q * row[src];
        for (std::size_t i = 0; i < n; ++i) u[dst][i] -= q * u[src][i];
    };

    auto col_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (ZVec& row : w) std::swap(row[a], row[b]);
        std::swap(u[a], u[b]);
    };

    std::size_t fixed = 0;
    for (std::size_t r = 0; r < w.size() && fixed < n; ++r) {
        while (true) {
            std::size_t best = n;
            for (std::size_t j = fixed; j < n; ++j)
                if (w[r][j] != 0 && (best == n || abs(w[r][j]) < abs(w[r][best]))) best = j;
            if (best == n) break;  // row already zero past the fixed columns
            bool others = false;
            for (std::size_t j = fixed; j < n; ++j) {
                if (j == best || w[r][j] == 0) continue;
                others = true;
                col_axpy(j, best, w[r][j] / w[r][best]);
            }
            if (!others) {
                col_swap(fixed, best);
                ++fixed;
                break;
            }
        }
    }
    return {u.begin() + static_cast<long>(fixed), u.end()};
}

std::vector<ZVec> lattice_basis_of_span(const std::vector<ZVec>& vectors, std::size_t n) {
    if (vectors.empty()) return {};
    std::vector<QVec> rows;
    for (const ZVec& v : vectors) {
        QVec r(n);
        for (std::size_t c = 0; c < n; ++c) r[c] = Rat(v[c], 1);
        rows.push_back(std::move(r));
    }
    const std::vector<QVec> kernel = solve_homogeneous(QMatrix::from_rows(rows));
    std::vector<ZVec> krows;
    for (const QVec& k : kernel) {
        Int scale = 1;
        for (const Rat& x : k) scale = boost::multiprecision::lcm(scale, denominator(x));
        ZVec row(n);
        for (std::size_t c = 0; c < n; ++c) row[c] = numerator(k[c]) * (scale / denominator(k[c]));
        krows.push_back(std::move(row));
    }
    return integer_kernel(krows, n);
}

ZVec primitive_normal(const std::vector<Point>& facet_points) {
    const std::size_t n = facet_points.front().size();
    std::vector<QVec> rows;
    for (std::size_t i = 1; i < facet_points.size(); ++i) {
        QVec r(n);
        for (std::size_t c = 0; c < n; ++c)
            r[c] = Rat(facet_points[i][c] - facet_points[0][c], 1);
        rows.push_back(std::move(r));
    }
    const std::vector<QVec> kernel = solve_homogeneous(QMatrix::from_rows(rows));
    if (kernel.size() != 1)
        throw DegenerateCellError("facet point set is not (n-1)-dimensional");
    Int scale = 1;
    for (const Rat& x : kernel[0]) scale = boost::multiprecision::lcm(scale, denominator(x));
    ZVec nrm(n);
    for (std::size_t c = 0; c < n; ++c)
        nrm[c] = numerator(kernel[0][c]) * (scale / denominator(kernel[0][c]));
    return make_primitive(nrm);
}

ZVec lattice_coordinates(const Point& p, const Point& base, const std::vector<ZVec>& basis) {
    const std::size_t n = base.size();
    const std::size_t k = basis.size();
    // Solve basis^T * x = p - base by elimination over the rationals.
    std::vector<QVec> rows;
    for (std::size_t c = 0; c < n; ++c) {
        QVec r(k + 1);
        for (std::size_t j = 0; j < k; ++j) r[j] = Rat(basis[j][c], 1);
        r[k] = Rat(p[c] - base[c], 1);
        rows.push_back(std::move(r));
    }
    // Augmented homogeneous trick: kernel vectors with last coordinate -1
    // encode solutions of the inhomogeneous system.
    const std::vector<QVec> kernel = solve_homogeneous(QMatrix::from_rows(rows));
    for (const QVec& kv : kernel) {
        if (kv[k] == 0) continue;
        ZVec x(k);
        for (std::size_t j = 0; j < k; ++j) {
            const Rat coord = -kv[j] / kv[k];
            if (denominator(coord) != 1)
                throw std::runtime_error("point not in the lattice spanned by basis");
            x[j] = numerator(coord);
        }
        return x;
    }
    throw std::runtime_error("point outside the affine span of basis");
}

Int normalized_facet_volume(const std::vector<Point>& facet_points) {
    const std::size_t n = facet_points.front().size();
    std::vector<ZVec> dirs;
    for (std::size_t i = 1; i < facet_points.size(); ++i)
        dirs.push_back(sub(facet_points[i], facet_points[0]));
    const std::vector<ZVec> basis = lattice_basis_of_span(dirs, n);
    if (basis.size() != n - 1)
        throw DegenerateCellError("facet of unexpected dimension");
    std::vector<Point> coords;
    for (const Point& p : facet_points)
        coords.push_back(lattice_coordinates(p, facet_points[0], basis));
    Rat v = volume(coords, static_cast<int>(n) - 1);
    Int factorial = 1;
    for (std::size_t i = 2; i < n; ++i) factorial *= Int(i);
    const Rat nv = v * Rat(factorial, 1);
    if (denominator(nv) != 1)
        throw std::runtime_error("normalized facet volume not integral");
    return numerator(nv);
}

Point AffineMap::apply(const Point& p) const {
    Point out(linear.size());
    for (std::size_t r = 0; r < linear.size(); ++r) out[r] = dot(linear[r], p) + shift[r];
    return out;
}

}  // namespace troprank
