#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace supercover {

enum class Parity { Even, Odd };

inline Parity parity_add(Parity a, Parity b) {
    return a == b ? Parity::Even : Parity::Odd;
}
inline Parity weight_parity(int w) {
    return (w % 2 == 0) ? Parity::Even : Parity::Odd;
}

struct Generator {
    std::string name;
    int weight = 0;
    Parity parity = Parity::Even;
};

/// Immutable ordered set of generators for one chart. Weight-0 even
/// generators are the "base variables": they never appear in monomials, only
/// inside rational-function coefficients. Every other generator (odd, or of
/// positive weight) is a "monomial generator". Monomial generators carry a
/// canonical order (even ones first, then odd ones, each group sorted by
/// name) which fixes the sign normalization of monomials.
class GeneratorSet {
public:
    explicit GeneratorSet(std::vector<Generator> gens);

    size_t size() const { return gens_.size(); }
    const Generator& gen(size_t i) const { return gens_.at(i); }
    const std::vector<Generator>& all() const { return gens_; }

    std::optional<size_t> index_of(const std::string& name) const;

    /// Generator indices of base variables, in declaration order.
    const std::vector<size_t>& base_vars() const { return base_; }
    /// Generator indices of monomial generators, in canonical monomial order.
    const std::vector<size_t>& mono_gens() const { return mono_; }

    bool is_base_var(size_t gi) const { return base_slot_[gi] >= 0; }
    /// Position of generator gi within base_vars(); -1 if not a base var.
    int base_slot(size_t gi) const { return base_slot_[gi]; }
    /// Position of generator gi within mono_gens(); -1 if a base var.
    int mono_slot(size_t gi) const { return mono_slot_[gi]; }

    const Generator& mono_gen(size_t slot) const { return gens_[mono_[slot]]; }
    const Generator& base_var(size_t slot) const { return gens_[base_[slot]]; }

    bool same_shape(const GeneratorSet& o) const;

private:
    std::vector<Generator> gens_;
    std::vector<size_t> base_;
    std::vector<size_t> mono_;
    std::vector<int> base_slot_;
    std::vector<int> mono_slot_;
    std::unordered_map<std::string, size_t> by_name_;
};

using GenSetPtr = std::shared_ptr<const GeneratorSet>;

GenSetPtr make_genset(std::vector<Generator> gens);

enum class ChartKind { Super, Graded };

struct Chart {
    std::string id;
    ChartKind kind = ChartKind::Super;
    int degree = 0; // graded charts only
    GenSetPtr gens;

    /// Super charts: weights in {0,1} with parity == weight.
    /// Graded charts: weights in [0, degree].
    void validate() const;
};

} // namespace supercover
