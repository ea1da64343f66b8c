#ifndef TROPRANK_LATTICE_HPP
#define TROPRANK_LATTICE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "troprank/rational.hpp"

namespace troprank {

// A lattice point: n integer coordinates.
using Point = ZVec;

struct DimensionMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidCellError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateCellError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GenericityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Int dot(const ZVec& a, const ZVec& b);
Rat dot(const QVec& a, const ZVec& b);
Rat dot(const QVec& a, const QVec& b);
Int cross2(const ZVec& a, const ZVec& b);  // 2D cross product a.x*b.y - a.y*b.x

ZVec sub(const Point& a, const Point& b);

// Determinant of a square integer matrix (fraction-free elimination).
Int int_determinant(std::vector<ZVec> m);

// Divides by the gcd of the entries; the zero vector stays zero.
ZVec make_primitive(ZVec v);

// Dimension of the affine hull: -1 for empty input, 0 for a single point.
// Throws DimensionMismatchError on mixed coordinate counts.
int affine_dim(const std::vector<Point>& points);

enum class PolygonKind {
    Triangle,
    Parallelogram,
    ParallelEvenGon,     // 2m >= 6 vertices, all opposite edges parallel
    EvenGonNonParallel,  // 2m vertices, some opposite pair not parallel
    OddGon,              // 2m+1 >= 5 vertices
    Simplex,             // n >= 3 cells
    NonSimplex,
};

struct PolygonClass {
    PolygonKind kind;
    int half_gon = 0;  // the m of ParallelEvenGon(m) / EvenGonNonParallel(m) / OddGon(m)

    bool operator==(const PolygonClass&) const = default;
    bool trivial_2d() const {
        return kind == PolygonKind::Triangle || kind == PolygonKind::Parallelogram;
    }
};

std::string to_string(const PolygonClass& c);

// Cyclic order of a strictly convex 2D point set, counterclockwise, starting
// from the lexicographically smallest point. Throws InvalidCellError if the
// points are not in strictly convex position (repeats and collinear vertices
// included).
std::vector<std::size_t> convex_cyclic_order_2d(const std::vector<Point>& points);

// pre: vertices cyclically ordered and strictly convex (see above).
PolygonClass classify_polygon_2d(const std::vector<Point>& cyclic_vertices);

// true iff exactly n+1 vertices spanning dimension n. A minimal vertex set of
// lower dimension raises DegenerateCellError.
bool is_simplex(const std::vector<Point>& vertices, int n);

struct GenericVector {
    QVec components;
};

// Deterministic generic direction for a cell configuration: powers of
// K = 1 + 2*max|coordinate|, bumped until no shared-facet normal and (in the
// plane) no cell edge is orthogonal to it.
GenericVector make_generic_vector(const std::vector<std::vector<Point>>& cells);

bool is_generic_for(const GenericVector& a, const std::vector<std::vector<Point>>& cells);

// Linear extension of the coorientation partial order: cell i precedes cell j
// whenever they share a facet whose normal, oriented out of i, has positive
// inner product with a. Throws GenericityError if a is not generic or the
// relation has a cycle. Ties resolved by smallest cell index.
std::vector<std::size_t> coorient_order(const std::vector<std::vector<Point>>& cells,
                                        const GenericVector& a);

// Pairs of cells whose common vertex set spans dimension n-1 and is a face
// of both, with the facet normal oriented out of cell i.
struct FacetSharing {
    std::size_t i, j;
    std::vector<Point> points;
    ZVec outward_from_i;
};
std::vector<FacetSharing> shared_facets(const std::vector<std::vector<Point>>& cells);

// ---- Convex hulls, facets, volumes (exact) ----

// Indices of hull vertices of a 2D point set, counterclockwise. Collinear
// input yields the 2 extreme points; a single point yields itself.
std::vector<std::size_t> convex_hull_2d(const std::vector<Point>& points);

struct HullFacet {
    ZVec normal;  // primitive integer outward normal
    Int offset;   // <normal, x> <= offset for all points, with equality on `on`
    std::vector<std::size_t> on;
};

// All facets of conv(points) in R^d, for points of affine dimension d.
// Brute force over d-subsets; exact; intended for desk-scale inputs.
std::vector<HullFacet> hull_facets(const std::vector<Point>& points, int d);

// Euclidean volume of conv(points) in R^d for d in {1, 2, 3}.
Rat volume(const std::vector<Point>& points, int d);

// ---- Integer lattices ----

// Basis of { x in Z^n : M x = 0 } for an integer matrix given by rows.
// The result is a basis of the (saturated) kernel lattice.
std::vector<ZVec> integer_kernel(const std::vector<ZVec>& rows, std::size_t n);

// Basis of span_Q(vectors) ∩ Z^n.
std::vector<ZVec> lattice_basis_of_span(const std::vector<ZVec>& vectors, std::size_t n);

// Primitive integer normal of an (n-1)-dimensional point set in R^n.
ZVec primitive_normal(const std::vector<Point>& facet_points);

// Normalized lattice volume of an (n-1)-dimensional facet: (n-1)! times the
// volume in coordinates of a lattice basis of its direction span. Integer.
Int normalized_facet_volume(const std::vector<Point>& facet_points);

// Coordinates of p - base in the given lattice basis; throws if not integral.
ZVec lattice_coordinates(const Point& p, const Point& base, const std::vector<ZVec>& basis);

// ---- Affine unimodular maps ----

struct AffineMap {
    std::vector<ZVec> linear;  // rows of U; must have det ±1 for unimodular maps
    ZVec shift;

    Point apply(const Point& p) const;
};

}  // namespace troprank

#endif
