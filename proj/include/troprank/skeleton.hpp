#ifndef TROPRANK_SKELETON_HPP
#define TROPRANK_SKELETON_HPP

#include <vector>

#include "troprank/subdivision.hpp"

namespace troprank {

struct SkeletonRay {
    std::size_t node;
    ZVec direction;  // primitive, outward
};

struct SkeletonCycle {
    std::vector<std::size_t> nodes;  // cyclic
    QVec plane;                      // a1 x + a2 y + a3 z = a4
};

// A geometric graph in R^3 with rays and declared planar minimal cycles.
// Every node has valence >= 4; no edge crosses a declared cycle's disk.
struct SkeletonCurve {
    std::vector<QVec> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<SkeletonRay> rays;
    std::vector<SkeletonCycle> cycles;
};

ValidationReport validate_skeleton(const SkeletonCurve& c, int base_valence = 4);

struct SkeletonMetrics {
    long long ends = 0;
    long long overvalence = 0;  // sum of (valence - base) over nodes
    long long genus = 0;        // first Betti number of the bounded graph
    long long closed_volumes = 0;
};

// closed_volumes is the rank of the second homology of the complex obtained
// by filling each declared cycle with a disk: the kernel dimension of the
// cycle boundary matrix over the rationals.
SkeletonMetrics skeleton_metrics(const SkeletonCurve& c, int base_valence = 4);

// #End/2 + 1 - ov/2 + N_cl (base valence 4).
Rat lower_bound_r3(const SkeletonMetrics& m);

// #End/3 - g/3 + 7/3 - ov/3 (overvalence against base valence 5).
Rat lower_bound_r4(const SkeletonMetrics& m);

// 1-skeleton of the tropical surface dual to s: nodes at the dual vertices,
// bounded edges dual to interior 2-faces, rays dual to boundary 2-faces, one
// planar minimal cycle around every interior edge of the subdivision.
SkeletonCurve skeleton_of_surface(const Subdivision& s, const TropicalPolynomial& f);

}  // namespace troprank

#endif
