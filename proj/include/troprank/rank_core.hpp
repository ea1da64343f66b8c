#ifndef TROPRANK_RANK_CORE_HPP
#define TROPRANK_RANK_CORE_HPP

#include <optional>
#include <string>

#include "troprank/subdivision.hpp"

namespace troprank {

struct ParamCurve;

// A computed rank or bound pair, tagged with the certificate that produced
// it. Exact results have lower == upper.
struct RankReport {
    bool exact = false;
    long long lower = 0;
    long long upper = 0;
    std::string certificate;
    std::optional<long long> oracle;
    std::optional<long long> defect;  // oracle - expected

    static RankReport make_exact(long long v, std::string cert) {
        return {true, v, v, std::move(cert), std::nullopt, std::nullopt};
    }
    static RankReport make_bounds(long long lo, long long hi, std::string cert) {
        return {false, lo, hi, std::move(cert), std::nullopt, std::nullopt};
    }
};

// #Vert(S) - 1 - sum over cells of (#Vert(cell) - (n+1)). For n = 2 the
// per-cell deduction is #Vert(cell) - 3.
long long expected_rank_embedded(const Subdivision& s);

// #End + (n-3)(1-g) - sum over nodes of (valence - 3).
long long expected_rank_param(const ParamCurve& curve);

// Ground truth: the dimension of the space of coefficient vectors inducing
// this subdivision, modulo the global additive constant. Computed as
// nullity(lift_condition_matrix) - 1 after certifying that the subdivision
// is regular. Throws NonRegularError / DegenerateCellError.
long long oracle_rank(const Subdivision& s);

// oracle_rank(s) - expected_rank_embedded(s).
long long defect(const Subdivision& s);

// One coplanarity row per parallelogram, columns indexed by vertex discovery
// order along `parallelogram_order` (cell indices, each a parallelogram).
// pre: n = 2 and every non-triangle cell of s is a parallelogram.
QMatrix parallelogram_condition_matrix(const Subdivision& s,
                                       const std::vector<std::size_t>& parallelogram_order);

// Convenience: coorientation order of the parallelogram cells of s.
std::vector<std::size_t> cooriented_parallelogram_order(const Subdivision& s);

}  // namespace troprank

#endif
