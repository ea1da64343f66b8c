#ifndef TROPRANK_SUBDIVISION_HPP
#define TROPRANK_SUBDIVISION_HPP

#include <optional>
#include <string>
#include <vector>

#include "troprank/lattice.hpp"
#include "troprank/matrix.hpp"

namespace troprank {

struct NonRegularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonInteriorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Cell {
    // Canonical order: counterclockwise from the smallest vertex in the
    // plane, ascending indices in higher dimension.
    std::vector<std::size_t> vertices;
    std::optional<PolygonClass> cls;  // empty when the cell is malformed

    bool trivial_2d() const { return cls && cls->trivial_2d(); }
    bool simplex_nd() const { return cls && cls->kind == PolygonKind::Simplex; }
};

struct TropicalPolynomial {
    QVec coefficients;  // one rational per subdivision vertex
};

// A Newton polytope with a polytopal subdivision, the central input object.
// `coefficients`, when present, is a lifting that induces exactly this
// subdivision (checked by is_interior_certificate).
struct Subdivision {
    int n = 2;
    std::vector<Point> vertices;
    std::vector<Cell> cells;
    std::optional<TropicalPolynomial> coefficients;

    std::vector<Point> cell_points(std::size_t ci) const;
    std::vector<std::vector<Point>> all_cell_points() const;
};

// Canonicalizes cell vertex order and caches the classification. Cells that
// cannot be classified (non-convex, degenerate) keep an empty class and are
// reported by validate().
Subdivision make_subdivision(int n, std::vector<Point> vertices,
                             std::vector<std::vector<std::size_t>> cells,
                             std::optional<QVec> coefficients = std::nullopt);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Subdivision& s);

struct TropicalValue {
    Rat value;
    std::vector<std::size_t> argmax;
};

// N_f(x) = max over vertices of <w, x> + c_w; x lies on the hypersurface iff
// the argmax has at least two elements.
TropicalValue tropical_eval(const TropicalPolynomial& f, const Subdivision& s, const QVec& x);

// Anchor representation of a cell: n+1 affinely independent vertices chosen
// greedily by ascending index, plus barycentric coordinates of every other
// cell vertex in those anchors.
struct CellAnchors {
    std::vector<std::size_t> anchors;
    std::vector<std::pair<std::size_t, QVec>> others;
};
CellAnchors cell_anchors(const Subdivision& s, std::size_t ci);

// Barycentric coordinates of an arbitrary point in the anchors of a cell.
QVec barycentric_in_anchors(const Subdivision& s, const CellAnchors& a, const Point& p);

// The homogeneous linear system on the coefficient vector whose solutions are
// the liftings affine on every cell: one row per non-anchor vertex per cell.
QMatrix lift_condition_matrix(const Subdivision& s);

// Exact check that f lifts every cell affinely and every vertex outside a
// cell lies strictly below that cell's affine function.
bool is_interior_certificate(const Subdivision& s, const TropicalPolynomial& f,
                             std::string* reason = nullptr);

// A lifting that induces exactly this subdivision, certified by exact
// re-check. Throws NonRegularError when none exists.
TropicalPolynomial pick_interior_coefficients(const Subdivision& s);

// Geometric dual complex: one point per cell (where all its vertices' affine
// functions agree), bounded edges dual to shared facets, rays dual to
// boundary facets. Edge directions are primitive integer facet normals and
// the weighted directions balance at every dual vertex.
struct DualComplex {
    struct Edge {
        std::size_t a, b;   // cells; direction points from a's dual vertex to b's
        ZVec direction;     // primitive normal of the shared facet
        Int weight;         // normalized lattice volume of the shared facet
        Rat length;         // dual_point(b) = dual_point(a) + length * direction
        std::vector<std::size_t> facet;  // subdivision vertices of the shared facet
    };
    struct Ray {
        std::size_t cell;
        ZVec direction;  // outward primitive normal of the boundary facet
        Int weight;
        std::vector<std::size_t> facet;
    };
    std::vector<QVec> cell_point;
    std::vector<Rat> cell_value;
    std::vector<Edge> edges;
    std::vector<Ray> rays;
};

DualComplex dual_complex(const Subdivision& s, const TropicalPolynomial& f);

}  // namespace troprank

#endif
