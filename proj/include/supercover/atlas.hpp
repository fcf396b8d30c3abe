#pragma once

#include "supercover/subst.hpp"

#include <json.hpp>

namespace supercover {

/// Coordinate change from chart `from` to chart `to`, stored as its pullback:
/// images of the to-chart generators as functions of the from-chart
/// generators (sub.source = to-chart, sub.target = from-chart).
struct TransitionMap {
    std::string from;
    std::string to;
    Substitution sub;
};

struct Atlas {
    ChartKind kind = ChartKind::Super;
    int degree = 0;  // graded atlases only
    std::vector<Chart> charts;
    std::vector<TransitionMap> transitions;
    std::vector<std::array<std::string, 3>> triples;

    const Chart& chart(const std::string& id) const;
    const TransitionMap* transition(const std::string& from, const std::string& to) const;
    TransitionMap identity_transition(const std::string& id) const;

    /// Structural checks: unique ids, shared kind, both directions present
    /// for every declared overlap, images valid. Throws on violation.
    void validate() const;
};

/// Pullback composition of coordinate changes: requires t1.to == t2.from and
/// yields the transition t1.from -> t2.to. Graded atlases truncate mod I_k;
/// super atlases are exact (k ignored).
TransitionMap compose(const TransitionMap& t1, const TransitionMap& t2, ChartKind kind,
                      std::optional<int> k = std::nullopt);

struct CocycleReport {
    struct Entry {
        std::string where;      // "(i,j)" or "(i,j,k)"
        std::string generator;  // image that failed
        std::string residual;   // canonical text of image - generator
    };
    bool ok = true;
    std::vector<Entry> failures;
};

/// Verifies T_ij . T_ji = id for every overlap (both orders) and
/// T_ki . T_jk . T_ij = id for every declared triple, mod I_k for graded
/// atlases. Failures are reported, not thrown.
CocycleReport check_cocycle(const Atlas& a, std::optional<int> k = std::nullopt);

/// The split/retract atlas of a super atlas: even images keep their
/// zero-odd-factor part, odd images their linear-odd part.
Atlas gr_atlas(const Atlas& a);

Atlas atlas_from_json(const nlohmann::json& j);
nlohmann::json atlas_to_json(const Atlas& a);
Atlas load_atlas(const std::string& path);

} // namespace supercover
