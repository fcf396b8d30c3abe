#pragma once

#include "supercover/atlas.hpp"

namespace supercover {

/// Degree-n graded chart covering a super chart: each even source
/// coordinate x_a grows a tower y_a__0, y_a__2, ... and each odd source
/// coordinate a tower eta_b__1, eta_b__3, ... with weights up to n.
/// Tower indices a, b are 1-based positions within their parity class.
struct CoveringChart {
    Chart chart;       // the graded chart
    GenSetPtr source;  // generators of the covered super chart
    /// source generator index -> covering generator indices, ascending weight
    std::vector<std::vector<size_t>> towers;
    /// covering generator index -> (source generator index, weight)
    std::vector<std::pair<size_t, int>> origin;
};

CoveringChart build_covering_chart(const Chart& super_chart, int degree);

/// The pullback sending x_a to the sum of its even tower and xi_b to the sum
/// of its odd tower, truncated mod I_degree.
Substitution lift_substitution(const CoveringChart& cc);

Superfunction lift_superfunction(const CoveringChart& cc, const Superfunction& f);

/// Lift of a morphism of super charts to the degree-n covering charts: the
/// image of the weight-t tower generator over target coordinate c is the
/// weight-t component of the lifted image of c.
TransitionMap lift_morphism(const CoveringChart& from_cc, const CoveringChart& to_cc,
                            const TransitionMap& psi);

/// Covering atlas at degree n; the input must pass the cocycle check and the
/// output is verified to pass it as well.
Atlas build_covering_atlas(const Atlas& a, int n);

struct InjectivityReport {
    struct ChartResult {
        std::string id;
        bool injective = true;
        /// odd monomials invisible mod I_k, canonical text
        std::vector<std::string> invisible;
    };
    int degree = 0;
    bool all_injective = true;
    std::vector<ChartResult> charts;
};

/// Lifts every odd basis monomial of each chart and reports which survive
/// mod I_k; the chart verdict is injectivity of the induced coefficient map.
InjectivityReport check_injectivity(const Atlas& a, int k);

/// Rebuilds the super atlas underlying a degree-2 graded atlas whose charts
/// have exactly two weight-1 generators and whose weight-2 transitions are
/// a Jacobian term plus a theta-theta term.
Atlas reconstruct_odd2(const Atlas& g);

} // namespace supercover
