#include "troprank/param_curves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace troprank {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

QVec scaled(const ZVec& d, const Rat& t) {
    QVec out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = Rat(d[i], 1) * t;
    return out;
}

}  // namespace

ValidationReport validate(const ParamCurve& c) {
    ValidationReport rep;
    auto flag = [&](std::string m) { rep.violations.push_back(std::move(m)); };
    const std::size_t nv = c.positions.size();

    for (std::size_t i = 0; i < nv; ++i)
        if (c.positions[i].size() != static_cast<std::size_t>(c.n))
            flag("node " + std::to_string(i) + " has wrong dimension");
    for (std::size_t ei = 0; ei < c.edges.size(); ++ei) {
        const ParamEdge& e = c.edges[ei];
        const std::string name = "edge " + std::to_string(ei);
        if (e.from >= nv || e.to >= nv || e.from == e.to) flag(name + " has bad endpoints");
        else {
            if (make_primitive(e.direction) != e.direction || gcd_of(e.direction) == 0)
                flag(name + " direction is not primitive");
            if (e.weight <= 0) flag(name + " weight must be positive");
            if (e.length <= 0) flag(name + " length must be positive");
            for (int k = 0; k < c.n; ++k)
                if (c.positions[e.to][k] - c.positions[e.from][k] !=
                    Rat(e.direction[k], 1) * e.length)
                    flag(name + " positions are inconsistent with direction and length");
        }
    }
    for (std::size_t i = 0; i < c.ends.size(); ++i) {
        const ParamEnd& e = c.ends[i];
        if (e.node >= nv) flag("end " + std::to_string(i) + " has a bad node");
        if (gcd_of(e.direction) == 0 || make_primitive(e.direction) != e.direction)
            flag("end " + std::to_string(i) + " direction is not primitive");
        if (e.weight <= 0) flag("end " + std::to_string(i) + " weight must be positive");
    }
    if (!rep.ok()) return rep;

    for (std::size_t v = 0; v < nv; ++v) {
        ZVec sum(c.n, Int(0));
        for (const ParamEdge& e : c.edges) {
            if (e.from == v)
                for (int k = 0; k < c.n; ++k) sum[k] += e.weight * e.direction[k];
            if (e.to == v)
                for (int k = 0; k < c.n; ++k) sum[k] -= e.weight * e.direction[k];
        }
        for (const ParamEnd& e : c.ends)
            if (e.node == v)
                for (int k = 0; k < c.n; ++k) sum[k] += e.weight * e.direction[k];
        for (const Int& x : sum)
            if (x != 0) {
                flag("node " + std::to_string(v) + " is not balanced");
                break;
            }
    }

    UnionFind uf(nv);
    for (const ParamEdge& e : c.edges) uf.unite(e.from, e.to);
    std::set<std::size_t> roots;
    for (std::size_t v = 0; v < nv; ++v) roots.insert(uf.find(v));
    const long long betti = static_cast<long long>(c.edges.size()) - static_cast<long long>(nv) +
                            static_cast<long long>(roots.size());
    if (betti != c.genus) flag("declared genus differs from the first Betti number");
    return rep;
}

namespace {

// Per-node path indicators over the bounded edges of a spanning forest:
// displacement(v) - displacement(root) = sum_e path[v][e] * length_e * dir_e.
struct Forest {
    std::vector<std::vector<int>> path;      // node -> per-edge coefficient in {-1,0,1}
    std::vector<bool> tree_edge;
    std::vector<std::size_t> root_of;        // merged-class representative per node
};

Forest spanning_forest(std::size_t nv, const std::vector<ParamEdge>& edges, UnionFind& classes) {
    Forest f;
    f.path.assign(nv, std::vector<int>(edges.size(), 0));
    f.tree_edge.assign(edges.size(), false);
    f.root_of.assign(nv, 0);

    // Adjacency on merged classes via representative nodes.
    std::vector<std::vector<std::size_t>> incident(nv);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        incident[classes.find(edges[e].from)].push_back(e);
        incident[classes.find(edges[e].to)].push_back(e);
    }
    std::vector<bool> visited(nv, false);
    for (std::size_t start = 0; start < nv; ++start) {
        const std::size_t r = classes.find(start);
        if (visited[r]) continue;
        visited[r] = true;
        std::queue<std::size_t> q;
        q.push(r);
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            for (std::size_t e : incident[u]) {
                const std::size_t a = classes.find(edges[e].from);
                const std::size_t b = classes.find(edges[e].to);
                const std::size_t other = (a == u) ? b : a;
                if (visited[other]) continue;
                visited[other] = true;
                f.tree_edge[e] = true;
                f.path[other] = f.path[u];
                f.path[other][e] += (a == u) ? 1 : -1;
                q.push(other);
            }
        }
    }
    for (std::size_t v = 0; v < nv; ++v) {
        const std::size_t r = classes.find(v);
        f.root_of[v] = r;
        if (v != r) f.path[v] = f.path[r];
    }
    return f;
}

}  // namespace

long long param_oracle_rank(const ParamCurve& curve, const ImageIdentification& idents) {
    const std::size_t nv = curve.positions.size();
    const std::size_t ne = curve.edges.size();

    {
        UnionFind conn(nv);
        for (const ParamEdge& e : curve.edges) conn.unite(e.from, e.to);
        std::set<std::size_t> roots;
        for (std::size_t v = 0; v < nv; ++v) roots.insert(conn.find(v));
        if (roots.size() > 1)
            throw std::invalid_argument("parameterized curve must be connected");
    }

    for (const VertexVertexIdent& id : idents.vertex_vertex)
        if (curve.positions[id.a] != curve.positions[id.b])
            throw InconsistentIdentError("identified vertices have different images");
    for (const VertexEdgeIdent& id : idents.vertex_edge) {
        const ParamEdge& e = curve.edges[id.edge];
        const QVec& p = curve.positions[id.vertex];
        const QVec& u = curve.positions[e.from];
        std::optional<Rat> t;
        for (int k = 0; k < curve.n; ++k) {
            const Rat diff = p[k] - u[k];
            if (e.direction[k] == 0) {
                if (diff != 0) throw InconsistentIdentError("vertex is off the identified edge");
                continue;
            }
            const Rat ratio = diff / Rat(e.direction[k], 1);
            if (t && *t != ratio) throw InconsistentIdentError("vertex is off the identified edge");
            t = ratio;
        }
        if (!t || *t <= 0 || *t >= e.length)
            throw InconsistentIdentError("vertex does not meet the edge interior");
    }

    UnionFind classes(nv);
    for (const VertexVertexIdent& id : idents.vertex_vertex) classes.unite(id.a, id.b);
    const Forest forest = spanning_forest(nv, curve.edges, classes);

    // Rows over the edge lengths; the ambient translation is always free.
    std::vector<QVec> rows;
    auto closure_row = [&](std::size_t va, std::size_t vb, const QVec& measure) {
        // measure . (displacement(vb) - displacement(va)) as a form in lengths
        QVec row(ne, Rat(0));
        for (std::size_t e = 0; e < ne; ++e) {
            const int coef = forest.path[vb][e] - forest.path[va][e];
            if (coef == 0) continue;
            row[e] = Rat(coef, 1) * dot(measure, curve.edges[e].direction);
        }
        return row;
    };
    auto unit = [&](int k) {
        QVec u(curve.n, Rat(0));
        u[k] = 1;
        return u;
    };

    for (std::size_t e = 0; e < ne; ++e) {
        if (forest.tree_edge[e]) continue;
        // non-tree edge closes a cycle: displacement(to) - displacement(from)
        // must equal length_e * dir_e, one scalar row per coordinate
        for (int k = 0; k < curve.n; ++k) {
            QVec row = closure_row(curve.edges[e].from, curve.edges[e].to, unit(k));
            row[e] -= Rat(curve.edges[e].direction[k], 1);
            rows.push_back(std::move(row));
        }
    }
    for (const VertexEdgeIdent& id : idents.vertex_edge) {
        const ParamEdge& e = curve.edges[id.edge];
        for (const ZVec& normal : integer_kernel({e.direction}, curve.n)) {
            QVec measure(curve.n);
            for (int k = 0; k < curve.n; ++k) measure[k] = Rat(normal[k], 1);
            rows.push_back(closure_row(e.from, id.vertex, measure));
        }
    }

    const std::size_t rank = rows.empty() ? 0 : matrix_rank(QMatrix::from_rows(rows));
    return static_cast<long long>(ne + curve.n) - static_cast<long long>(rank);
}

long long end_marked_def_dim(const ParamCurve& curve, long long rank, std::size_t m) {
    if (m > curve.ends.size())
        throw std::invalid_argument("more markers than ends");
    if (m == curve.ends.size()) return rank - static_cast<long long>(m) + 1;
    return rank - static_cast<long long>(m);
}

Rat balancing_sum_raw(const ParamCurve& curve, const std::vector<QVec>& points) {
    Rat sum(0);
    for (std::size_t i = 0; i < curve.ends.size(); ++i) {
        const ParamEnd& e = curve.ends[i];
        // R_{pi/2}(w*d) = (-w*d_y, w*d_x)
        sum += Rat(-e.weight * e.direction[1], 1) * points[i][0] +
               Rat(e.weight * e.direction[0], 1) * points[i][1];
    }
    return sum;
}

Rat balancing_sum(const ParamCurve& curve, const EndMarking& marking) {
    if (curve.n != 2) throw DimensionMismatchError("balancing identity needs n = 2");
    std::vector<std::optional<QVec>> by_end(curve.ends.size());
    for (const auto& [ei, p] : marking.markers) {
        if (ei >= curve.ends.size()) throw std::invalid_argument("marker on unknown end");
        if (by_end[ei]) throw std::invalid_argument("two markers on one end");
        by_end[ei] = p;
    }
    std::vector<QVec> points;
    for (std::size_t i = 0; i < curve.ends.size(); ++i) {
        if (!by_end[i]) throw std::invalid_argument("unmarked end " + std::to_string(i));
        const ParamEnd& e = curve.ends[i];
        const QVec& p = *by_end[i];
        std::optional<Rat> t;
        for (int k = 0; k < 2; ++k) {
            const Rat diff = p[k] - curve.positions[e.node][k];
            if (e.direction[k] == 0) {
                if (diff != 0) throw std::invalid_argument("marker off its ray");
                continue;
            }
            const Rat ratio = diff / Rat(e.direction[k], 1);
            if (t && *t != ratio) throw std::invalid_argument("marker off its ray");
            t = ratio;
        }
        if (!t || *t <= 0) throw std::invalid_argument("marker must lie on the ray interior");
        points.push_back(p);
    }
    return balancing_sum_raw(curve, points);
}

PVertexReport p_vertices_report(const ParamCurve& curve, const ImageIdentification& idents) {
    if (curve.n != 2) throw DimensionMismatchError("p-vertex bound needs n = 2");
    if (curve.genus != 0) throw std::invalid_argument("curve must be rational (genus 0)");
    std::vector<std::size_t> valence(curve.positions.size(), 0);
    for (const ParamEdge& e : curve.edges) {
        ++valence[e.from];
        ++valence[e.to];
    }
    for (const ParamEnd& e : curve.ends) ++valence[e.node];
    for (std::size_t v : valence)
        if (v != 3) throw std::invalid_argument("curve must be trivalent");

    // Overvalent image points created by the identifications.
    std::map<QVec, std::size_t> image_valence;
    UnionFind classes(curve.positions.size());
    for (const VertexVertexIdent& id : idents.vertex_vertex) classes.unite(id.a, id.b);
    std::map<std::size_t, std::size_t> class_size;
    for (std::size_t v = 0; v < curve.positions.size(); ++v) ++class_size[classes.find(v)];
    for (const auto& [root, size] : class_size)
        if (size >= 2) image_valence[curve.positions[root]] += 3 * size;
    for (const VertexEdgeIdent& id : idents.vertex_edge)
        image_valence[curve.positions[id.vertex]] += 5;  // 3 from the vertex + the edge through

    std::size_t p = 0;
    for (const auto& [pos, val] : image_valence)
        if (val > 3) ++p;

    PVertexReport rep;
    rep.p = p;
    rep.bound = static_cast<long long>(curve.ends.size()) - 1 +
                std::max<long long>(0, static_cast<long long>(p) - 2);
    const long long dim = param_oracle_rank(curve, idents);
    rep.constraint_rank =
        static_cast<std::size_t>(static_cast<long long>(curve.edges.size() + curve.n) - dim);
    return rep;
}

long long p_vertices_bound(const ParamCurve& curve, const ImageIdentification& idents) {
    return p_vertices_report(curve, idents).bound;
}

// ---- Resolution ----

ResolvedCurve resolve_curve(const Subdivision& s, const TropicalPolynomial& f) {
    if (s.n != 2) throw DimensionMismatchError("curve resolution needs n = 2");
    const DualComplex dc = dual_complex(s, f);

    ResolvedCurve rc;
    std::vector<std::size_t> vertex_of_cell(s.cells.size(), ResolvedCurve::kOpen);
    auto is_parallelogram = [&](std::size_t ci) {
        return s.cells[ci].cls->kind == PolygonKind::Parallelogram;
    };
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
        if (is_parallelogram(ci)) continue;
        vertex_of_cell[ci] = rc.vertices.size();
        rc.vertices.push_back({ci, !s.cells[ci].cls->trivial_2d(), dc.cell_point[ci]});
    }

    // Dual items: bounded edges and rays, each with up to two cell ports.
    struct Item {
        std::size_t cell_a, cell_b;  // kOpen marks the unbounded side
        ZVec dir_a_to_b;
        Int weight;
        Rat length;  // 0 for rays
    };
    std::vector<Item> items;
    for (const auto& e : dc.edges)
        items.push_back({e.a, e.b, e.direction, e.weight, e.length});
    for (const auto& r : dc.rays) {
        ZVec inward(r.direction.size());
        for (std::size_t k = 0; k < r.direction.size(); ++k) inward[k] = -r.direction[k];
        // oriented from the open end toward the cell, so cell_b is the port
        items.push_back({ResolvedCurve::kOpen, r.cell, std::move(inward), r.weight, Rat(0)});
    }

    // At a parallelogram the four incident items pair up by opposite facet
    // direction; walking continues through the pair.
    std::map<std::size_t, std::vector<std::pair<std::size_t, int>>> at_parallelogram;
    for (std::size_t it = 0; it < items.size(); ++it) {
        if (items[it].cell_a != ResolvedCurve::kOpen && is_parallelogram(items[it].cell_a))
            at_parallelogram[items[it].cell_a].push_back({it, 0});
        if (items[it].cell_b != ResolvedCurve::kOpen && is_parallelogram(items[it].cell_b))
            at_parallelogram[items[it].cell_b].push_back({it, 1});
    }
    // direction of motion when traversing an item toward the given port
    auto travel_dir = [&](std::size_t it, int toward_port) {
        ZVec d = items[it].dir_a_to_b;
        if (toward_port == 0)
            for (Int& x : d) x = -x;
        return d;
    };
    std::map<std::pair<std::size_t, int>, std::pair<std::size_t, int>> continuation;
    for (auto& [cell, ports] : at_parallelogram) {
        if (ports.size() != 4)
            throw std::logic_error("parallelogram dual vertex must be 4-valent");
        std::vector<bool> done(4, false);
        for (std::size_t i = 0; i < 4; ++i) {
            if (done[i]) continue;
            const ZVec din = travel_dir(ports[i].first, ports[i].second);
            for (std::size_t j = i + 1; j < 4; ++j) {
                if (done[j]) continue;
                // leaving through j continues straight: exit travel dir == din
                const ZVec dj = travel_dir(ports[j].first, 1 - ports[j].second);
                if (dj == din) {
                    continuation[ports[i]] = ports[j];
                    continuation[ports[j]] = ports[i];
                    done[i] = done[j] = true;
                    break;
                }
            }
            if (!done[i]) throw std::logic_error("no straight continuation at a nodal vertex");
        }
    }

    // Walk chains. A chain endpoint is an open end or a non-parallelogram cell.
    std::vector<bool> visited(items.size(), false);
    auto port_terminates = [&](std::size_t it, int port) {
        const std::size_t cell = port == 0 ? items[it].cell_a : items[it].cell_b;
        return cell == ResolvedCurve::kOpen || !is_parallelogram(cell);
    };
    auto walk = [&](std::size_t it0, int start_port) {
        // start_port is the terminating side; walk toward the other side
        ResolvedCurve::REdge edge;
        const std::size_t c0 = start_port == 0 ? items[it0].cell_a : items[it0].cell_b;
        edge.a = c0 == ResolvedCurve::kOpen ? ResolvedCurve::kOpen : vertex_of_cell[c0];
        edge.weight = items[it0].weight;
        edge.dir_a_to_b = travel_dir(it0, 1 - start_port);
        edge.length = items[it0].length;
        std::size_t it = it0;
        int exit_port = 1 - start_port;
        visited[it] = true;
        while (!port_terminates(it, exit_port)) {
            auto next = continuation.at({it, exit_port});
            it = next.first;
            // next.second is the port we ENTER through; we exit the other one
            exit_port = 1 - next.second;
            visited[it] = true;
            if (items[it].weight != edge.weight)
                throw std::logic_error("weight changes along a nodal chain");
            if (travel_dir(it, exit_port) != edge.dir_a_to_b)
                throw std::logic_error("direction changes along a nodal chain");
            edge.length += items[it].length;
        }
        const std::size_t cend = exit_port == 0 ? items[it].cell_a : items[it].cell_b;
        edge.b = cend == ResolvedCurve::kOpen ? ResolvedCurve::kOpen : vertex_of_cell[cend];
        rc.edges.push_back(std::move(edge));
    };

    for (std::size_t it = 0; it < items.size(); ++it) {
        if (visited[it]) continue;
        if (port_terminates(it, 0)) walk(it, 0);
        else if (port_terminates(it, 1)) walk(it, 1);
    }
    // anything left unvisited lies on closed loops through nodes only
    for (std::size_t it = 0; it < items.size(); ++it) {
        if (visited[it]) continue;
        ++rc.closed_loops;
        std::size_t cur = it;
        int exit_port = 1;
        while (!visited[cur]) {
            visited[cur] = true;
            auto next = continuation.at({cur, exit_port});
            cur = next.first;
            exit_port = 1 - next.second;
        }
    }
    return rc;
}

BoundedComponentsReport bounded_components_rank(const Subdivision& s, const ResolvedCurve& rc) {
    const long long expected = expected_rank_embedded(s);

    // Components of the curve minus the non-nodal vertices: union-find over
    // edges and the surviving (triangle-dual) vertices.
    const std::size_t ne = rc.edges.size();
    const std::size_t nv = rc.vertices.size();
    UnionFind uf(ne + nv);
    auto survives = [&](std::size_t v) { return !rc.vertices[v].vnn; };
    std::vector<bool> unbounded(ne + nv, false);
    for (std::size_t e = 0; e < ne; ++e) {
        for (const std::size_t end : {rc.edges[e].a, rc.edges[e].b}) {
            if (end == ResolvedCurve::kOpen) unbounded[e] = true;
            else if (survives(end)) uf.unite(e, ne + end);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> edges_of_comp;
    for (std::size_t e = 0; e < ne; ++e) edges_of_comp[uf.find(e)].push_back(e);
    std::map<std::size_t, bool> comp_unbounded;
    for (std::size_t e = 0; e < ne; ++e) comp_unbounded[uf.find(e)] |= unbounded[e];

    // One balancing row per bounded component, columns = coordinates of the
    // non-nodal vertices.
    std::vector<std::size_t> vnn;
    for (std::size_t v = 0; v < nv; ++v)
        if (rc.vertices[v].vnn) vnn.push_back(v);
    std::map<std::size_t, std::size_t> vnn_col;
    for (std::size_t i = 0; i < vnn.size(); ++i) vnn_col[vnn[i]] = 2 * i;

    std::vector<QVec> rows;
    std::size_t components = rc.closed_loops;  // loops are bounded, zero attachments
    for (std::size_t li = 0; li < rc.closed_loops; ++li)
        rows.push_back(QVec(2 * vnn.size(), Rat(0)));
    for (const auto& [root, edges] : edges_of_comp) {
        if (comp_unbounded[root]) continue;
        ++components;
        QVec row(2 * vnn.size(), Rat(0));
        for (std::size_t e : edges) {
            const ResolvedCurve::REdge& edge = rc.edges[e];
            for (int side = 0; side < 2; ++side) {
                const std::size_t end = side == 0 ? edge.a : edge.b;
                if (end == ResolvedCurve::kOpen || survives(end)) continue;
                // outward direction of this attachment end
                ZVec d = edge.dir_a_to_b;
                if (side == 0)
                    for (Int& x : d) x = -x;
                const std::size_t col = vnn_col.at(end);
                row[col] += Rat(-edge.weight * d[1], 1);
                row[col + 1] += Rat(edge.weight * d[0], 1);
            }
        }
        rows.push_back(std::move(row));
    }

    const std::size_t mrank = rows.empty() ? 0 : matrix_rank(QMatrix::from_rows(rows));

    BoundedComponentsReport rep;
    rep.components = components;
    rep.m_rank = mrank;
    rep.exact = expected + static_cast<long long>(components) - static_cast<long long>(mrank);
    rep.coarse_upper =
        expected + std::max<long long>(0, static_cast<long long>(components) - 2);
    rep.report = RankReport::make_exact(rep.exact, "bounded-components-matrix");
    return rep;
}

}  // namespace troprank
