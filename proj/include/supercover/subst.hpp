#pragma once

#include "supercover/superfn.hpp"

namespace supercover {

enum class SubstMode { Super, Graded };

/// Pullback of an algebra morphism: sends functions written in the source
/// generators to functions written in the target generators. Images are
/// indexed by source generator index and live on the target generator set.
struct Substitution {
    GenSetPtr source;
    GenSetPtr target;
    std::vector<Superfunction> images;
    SubstMode mode = SubstMode::Super;
    std::optional<int> cutoff;

    static Substitution identity(GenSetPtr gs, SubstMode mode = SubstMode::Super,
                                 std::optional<int> cutoff = std::nullopt);

    /// Parity match for every image; in graded mode additionally weight
    /// homogeneity at the generator's weight. Throws on violation.
    void validate() const;

    /// Taylor substitution. Base variables are replaced via the expansion
    ///   sum_alpha (d^alpha c)(g0) * n^alpha / alpha!
    /// where g0 is the base part and n the positive-filtration remainder of
    /// each base-variable image; monomial generators are replaced directly.
    Superfunction apply(const Superfunction& f) const;

    /// Composite pullback: first `inner`, then this. Requires inner.target
    /// to match this->source in shape; result maps inner.source to target.
    Substitution after(const Substitution& inner) const;

    bool operator==(const Substitution& o) const;
};

/// Derivation of the structure algebra of a single chart, determined by its
/// values on generators and extended by the graded Leibniz rule.
struct Derivation {
    GenSetPtr gs;
    std::vector<Superfunction> images;
    Parity parity = Parity::Even;

    static Derivation zero(GenSetPtr gs, Parity parity = Parity::Even);

    Superfunction apply(const Superfunction& f) const;
    bool is_zero() const;
    bool operator==(const Derivation& o) const;
};

/// True when a is an endomorphism fixing the retract to second order: for
/// every generator, a(g) - g raises the odd-factor filtration by at least 2.
bool is_aut2(const Substitution& a);

/// Logarithm of an automorphism in Aut_(2), as generator images of
///   log a = sum_{m>=1} (-1)^{m+1} (a - id)^m / m.
/// The series terminates because a - id raises the odd-factor filtration.
Derivation log_automorphism(const Substitution& a);

/// Exponential of a filtration-raising derivation, as a substitution.
Substitution exp_derivation(const Derivation& d, SubstMode mode,
                            std::optional<int> cutoff = std::nullopt);

} // namespace supercover
