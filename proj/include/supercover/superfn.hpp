#pragma once

#include "supercover/base_fn.hpp"
#include "supercover/chart.hpp"

#include <map>
#include <optional>

namespace supercover {

/// Power product of monomial generators, stored as (mono slot, exponent)
/// pairs in the canonical slot order. Odd generators carry exponent 1.
/// Reordering during construction is accounted for by a Koszul sign, which
/// the owning Superfunction folds into the coefficient.
struct SuperMonomial {
    std::vector<std::pair<size_t, unsigned>> factors;

    bool is_unit() const { return factors.empty(); }
    int weight(const GeneratorSet& gs) const;
    Parity parity(const GeneratorSet& gs) const;
    /// Number of odd generator factors (the J-filtration degree).
    int odd_count(const GeneratorSet& gs) const;
    unsigned exponent_of(size_t slot) const;

    bool operator==(const SuperMonomial& o) const { return factors == o.factors; }
};

/// Term order: the monomial that renders first compares smallest. Iterates
/// canonical slots; the higher exponent on the first differing slot wins, so
/// the unit monomial (constant term) sorts last.
struct SuperMonomialOrder {
    bool operator()(const SuperMonomial& a, const SuperMonomial& b) const;
};

/// Product of two monomials: merged factors plus the Koszul sign, or nothing
/// when an odd generator squares to zero.
struct MonomialProduct {
    SuperMonomial mono;
    int sign = 1;
    bool zero = false;
};
MonomialProduct mono_mul(const GeneratorSet& gs, const SuperMonomial& a, const SuperMonomial& b);

/// Element of the structure algebra of a chart: finite sum of monomials in
/// the monomial generators with BaseFunction coefficients in the base
/// variables. An optional cutoff marks a value taken mod I_k.
class Superfunction {
public:
    Superfunction() = default;
    explicit Superfunction(GenSetPtr gs, std::optional<int> cutoff = std::nullopt)
        : gs_(std::move(gs)), cutoff_(cutoff) {}

    static Superfunction constant(GenSetPtr gs, const Rational& c);
    static Superfunction base(GenSetPtr gs, const BaseFunction& f);
    static Superfunction generator(GenSetPtr gs, size_t gen_index);

    const GenSetPtr& genset() const { return gs_; }
    const std::map<SuperMonomial, BaseFunction, SuperMonomialOrder>& terms() const {
        return terms_;
    }
    std::optional<int> cutoff() const { return cutoff_; }
    Superfunction with_cutoff(std::optional<int> k) const;

    bool is_zero() const { return terms_.empty(); }
    /// True when the only monomial is the unit (a pure BaseFunction).
    bool is_base() const;
    /// Coefficient of the unit monomial (zero BaseFunction if absent).
    BaseFunction base_part() const;

    void add_term(const SuperMonomial& m, const BaseFunction& c, int sign = 1);

    Superfunction operator+(const Superfunction& o) const;
    Superfunction operator-(const Superfunction& o) const;
    Superfunction operator-() const;
    Superfunction operator*(const Superfunction& o) const;
    Superfunction operator*(const Rational& c) const;
    Superfunction operator*(const BaseFunction& c) const;
    /// Division by a pure nonzero BaseFunction value; throws otherwise.
    Superfunction operator/(const Superfunction& o) const;
    Superfunction pow(unsigned n) const;

    bool operator==(const Superfunction& o) const;
    bool operator!=(const Superfunction& o) const { return !(*this == o); }

    /// Weight-q homogeneous component (coefficients have weight 0).
    Superfunction pr(int q) const;
    /// Drops terms of weight > k and stamps cutoff = k.
    Superfunction truncated(int k) const;
    /// Terms whose odd factor count is exactly j.
    Superfunction j_component(int j) const;
    /// Terms with odd factor count >= j.
    Superfunction j_at_least(int j) const;

    Superfunction left_derivative(size_t gen_index) const;

    int max_weight() const;
    /// Smallest weight among terms; returns nullopt for zero.
    std::optional<int> min_weight() const;
    /// True when every term is homogeneous of the given parity.
    bool has_parity(Parity p) const;
    bool is_weight_homogeneous(int w) const;

private:
    void check_same(const Superfunction& o) const;

    GenSetPtr gs_;
    std::map<SuperMonomial, BaseFunction, SuperMonomialOrder> terms_;
    std::optional<int> cutoff_;
};

} // namespace supercover
