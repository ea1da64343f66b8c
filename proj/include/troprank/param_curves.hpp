#ifndef TROPRANK_PARAM_CURVES_HPP
#define TROPRANK_PARAM_CURVES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "troprank/rank_core.hpp"
#include "troprank/subdivision.hpp"

namespace troprank {

struct InconsistentIdentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamEdge {
    std::size_t from, to;
    ZVec direction;  // primitive, oriented from -> to
    Int weight;
    Rat length;  // position(to) = position(from) + length * direction
};

struct ParamEnd {
    std::size_t node;
    ZVec direction;  // primitive, outward
    Int weight;
};

// A parameterized tropical curve: abstract graph with balanced integer
// directions, lengths, and node positions consistent with them.
struct ParamCurve {
    int n = 2;
    std::vector<QVec> positions;
    std::vector<ParamEdge> edges;
    std::vector<ParamEnd> ends;
    int genus = 0;
};

ValidationReport validate(const ParamCurve& c);

struct EndMarking {
    // (end index, marked point on that end's interior); at most one per end.
    std::vector<std::pair<std::size_t, QVec>> markers;
};

struct VertexVertexIdent {
    std::size_t a, b;
};
struct VertexEdgeIdent {
    std::size_t vertex, edge;
};
struct ImageIdentification {
    std::vector<VertexVertexIdent> vertex_vertex;
    std::vector<VertexEdgeIdent> vertex_edge;
};

// Deformation dimension with fixed edge directions: unknowns are the bounded
// edge lengths plus one ambient translation. Vertex-vertex identifications
// contribute n cycle equations; a vertex meeting an edge interior contributes
// the components normal to that edge (one equation in the plane).
// pre: the underlying graph is connected.
long long param_oracle_rank(const ParamCurve& curve, const ImageIdentification& idents);

// dim Def^ep restricted to m marked ends: rank - m, or rank - m + 1 when
// every end is marked.
long long end_marked_def_dim(const ParamCurve& curve, long long rank, std::size_t m);

// Sum over marked ends of < R_{pi/2}(weight * direction), marked point >,
// with the end directed outward. Zero for every fully marked curve.
Rat balancing_sum(const ParamCurve& curve, const EndMarking& marking);

// Same sum without the on-ray checks, for perturbation experiments.
Rat balancing_sum_raw(const ParamCurve& curve, const std::vector<QVec>& points);

struct PVertexReport {
    long long bound;             // expected rank + max{0, p-2}
    std::size_t p;               // overvalent image vertices after identification
    std::size_t constraint_rank; // rank of the identification constraint matrix
};

// pre: trivalent, rational (g = 0), connected, n = 2.
PVertexReport p_vertices_report(const ParamCurve& curve, const ImageIdentification& idents);
long long p_vertices_bound(const ParamCurve& curve, const ImageIdentification& idents);

// ---- Resolution of an embedded plane curve ----

// The parameterized curve obtained from the dual curve of a 2D subdivision by
// resolving every nodal (parallelogram-dual) vertex: edges run straight
// through nodes, graph vertices sit only at triangle-dual and higher
// (non-nodal) vertices.
struct ResolvedCurve {
    static constexpr std::size_t kOpen = static_cast<std::size_t>(-1);

    struct RVertex {
        std::size_t cell;  // non-parallelogram cell
        bool vnn;          // dual to a cell that is neither triangle nor parallelogram
        QVec position;
    };
    struct REdge {
        std::size_t a = kOpen, b = kOpen;  // vertex ids; kOpen = unbounded end
        ZVec dir_a_to_b;                   // primitive
        Int weight;
        Rat length;  // meaningful only when both endpoints are vertices
    };

    std::vector<RVertex> vertices;
    std::vector<REdge> edges;
    std::size_t closed_loops = 0;  // cycles passing only through nodes
};

ResolvedCurve resolve_curve(const Subdivision& s, const TropicalPolynomial& f);

struct BoundedComponentsReport {
    long long exact;
    long long coarse_upper;  // expected + max{0, components - 2}
    std::size_t components;  // bounded components after removing v^nn preimages
    std::size_t m_rank;
    RankReport report;
};

// rk = rk_exp + #bounded components - rank M, where M collects the
// coefficients of the non-nodal vertex coordinates in the balancing identity
// of each bounded component.
BoundedComponentsReport bounded_components_rank(const Subdivision& s, const ResolvedCurve& rc);

}  // namespace troprank

#endif
