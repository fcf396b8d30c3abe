#pragma once

#include "supercover/covering.hpp"

namespace supercover {

/// One overlap's worth of cocycle data: either a derivation in normal form
/// (coefficients of xi_i xi_j on the even coordinate directions of the
/// from-chart) or a block transition matrix with entries in the to-chart's
/// base coordinates.
struct CechEntry {
    std::string from;
    std::string to;
    std::optional<Derivation> der;  // normal form on the from-chart generators
    std::optional<std::vector<std::vector<BaseFunction>>> mat;
    GenSetPtr mat_coords;  // chart whose base variables the matrix entries use
};

struct CechCocycle {
    std::vector<CechEntry> entries;  // one per ordered overlap, input order
    bool identically_zero() const;
    const CechEntry* entry(const std::string& from, const std::string& to) const;
};

bool cech_equal(const CechCocycle& a, const CechCocycle& b);
nlohmann::json cech_to_json(const CechCocycle& c);

/// Green automorphism of chart i for the overlap (i,j): the full transition
/// composed with the retract of the reverse transition. Verified to deviate
/// from the identity only in odd-factor filtration degree >= 2.
Substitution green_cocycle(const Atlas& a, const std::string& i, const std::string& j);

/// First obstruction representative: per overlap, the odd-degree-2 component
/// of log of the Green automorphism, restricted to the even coordinate
/// directions.
CechCocycle omega2(const Atlas& a);

/// The same class computed through the degree-2 covering: transitions of the
/// covering are split into their Jacobian part and the remainder; composing
/// the full transition with the reverse Jacobian part isolates the
/// obstruction data, transported back to the super chart generators.
CechCocycle atiyah_cocycle_P2(const Atlas& a);

/// Differential-operator transition matrix for one overlap, acting on the
/// generators (reduced d/dx_b; reduced d/dxi_{b1} d/dxi_{b2} with b1 < b2).
/// Entries are functions of the to-chart base coordinates.
CechEntry donagi_witten_matrix(const Atlas& a, const std::string& i, const std::string& j);

/// Matrix cocycle over all declared overlaps.
CechCocycle donagi_witten_transitions(const Atlas& a);

/// Pair condition M_ij(to-coordinates of i) * M_ji = Id for every overlap,
/// and the triple condition on declared triples.
CocycleReport donagi_witten_check(const Atlas& a);

/// Extension-class data of the matrix cocycle: the odd-odd block inverse
/// times the mixed block, presented in the omega2 normal form on the
/// to-chart. Matches omega2 of the reversed overlap exactly (normalization
/// constant +1 in this implementation's conventions).
CechCocycle dw_extension_data(const Atlas& a);

} // namespace supercover
