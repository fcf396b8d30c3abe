#pragma once

#include "supercover/rational.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace supercover {

/// Finite-dimensional Lie superalgebra given by structure constants over
/// exact rationals. Basis elements may carry an integer Z-degree; when every
/// element has one, property checks can exclude bracket triples that leave a
/// truncation window.
struct LieSuperalgebra {
    struct Elem {
        std::string name;
        int parity = 0;  // 0 even, 1 odd
        std::optional<int> degree;
    };

    std::vector<Elem> basis;
    /// table[i][j] = sparse coefficients of [e_i, e_j]
    std::vector<std::vector<std::map<size_t, Rational>>> table;

    size_t dim() const { return basis.size(); }
    bool graded() const;

    /// Structure checks: graded antisymmetry, parity consistency, graded
    /// Jacobi. With a window (lo, hi), triples whose pairwise or total
    /// degree sums leave [lo, hi] are excluded (truncation-affected).
    void validate(std::optional<std::pair<int, int>> window = std::nullopt) const;

    std::map<size_t, Rational> bracket(const std::map<size_t, Rational>& x,
                                       const std::map<size_t, Rational>& y) const;
};

/// Truncated loop algebra: basis (e_i, d) named "<name>_t<d>" (or
/// "<name>_tm<|d|>" for negative d in the symmetric variant), degrees d with
/// d = parity(e_i) mod 2, support {0..n} or {-n..n}; brackets leaving the
/// support are zeroed.
struct LoopAlgebra {
    LieSuperalgebra base;
    LieSuperalgebra alg;
    int max_degree = 0;
    bool symmetric = false;
    /// loop basis index -> (base basis index, degree)
    std::vector<std::pair<size_t, int>> origin;
};

LoopAlgebra build_loop(const LieSuperalgebra& g, int n, bool symmetric = false);

/// gl(m|n) with basis e_<p>_<q> in row-major order, 1-based indices,
/// parity(p) = 0 for p <= m.
LieSuperalgebra glmn(int m, int n);

/// Block-lower-triangular matrix realization of the degree-<=depth loop of
/// gl(m|n_odd): depth+2 alternating block rows, repeating pattern along each
/// block subdiagonal, super-commutator bracket, quotient by subdiagonals
/// beyond depth. Basis names follow the loop convention so the structure
/// tables are directly comparable.
LieSuperalgebra gl_matrix_realization(int m, int n_odd, int depth);

struct LiftedHom {
    /// lifted images over the loop basis, indexed by source basis element
    std::vector<std::map<size_t, Rational>> images;
    bool unique = false;
};

/// Lift of a homomorphism psi: a -> base through the covering projection of
/// a truncated loop: X of degree s maps to (psi(X), s). Verifies psi and the
/// lift are bracket homomorphisms (window-aware) and that the lift is the
/// unique graded one, by explicit enumeration.
LiftedHom lift_homomorphism(const LieSuperalgebra& a,
                            const std::vector<std::map<size_t, Rational>>& psi,
                            const LoopAlgebra& p);

LieSuperalgebra algebra_from_json(const nlohmann::json& j);
nlohmann::json algebra_to_json(const LieSuperalgebra& g);
LieSuperalgebra load_algebra(const std::string& path);

} // namespace supercover
