#include "supercover/chart.hpp"

#include <algorithm>
#include <stdexcept>

namespace supercover {

GeneratorSet::GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens)) {
    base_slot_.assign(gens_.size(), -1);
    mono_slot_.assign(gens_.size(), -1);
    for (size_t i = 0; i < gens_.size(); ++i) {
        const Generator& g = gens_[i];
        if (g.name.empty())
            throw std::invalid_argument("generator with empty name");
        if (g.weight < 0)
            throw std::invalid_argument("negative weight for generator " + g.name);
        if (!by_name_.emplace(g.name, i).second)
            throw std::invalid_argument("duplicate generator name " + g.name);
        if (g.parity == Parity::Even && g.weight == 0)
            base_.push_back(i);
        else
            mono_.push_back(i);
    }
    std::stable_sort(mono_.begin(), mono_.end(), [this](size_t a, size_t b) {
        const Generator& ga = gens_[a];
        const Generator& gb = gens_[b];
        if (ga.parity != gb.parity)
            return ga.parity == Parity::Even;
        return ga.name < gb.name;
    });
    for (size_t s = 0; s < base_.size(); ++s)
        base_slot_[base_[s]] = static_cast<int>(s);
    for (size_t s = 0; s < mono_.size(); ++s)
        mono_slot_[mono_[s]] = static_cast<int>(s);
}

std::optional<size_t> GeneratorSet::index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end())
        return std::nullopt;
    return it->second;
}

bool GeneratorSet::same_shape(const GeneratorSet& o) const {
    if (gens_.size() != o.gens_.size())
        return false;
    for (size_t i = 0; i < gens_.size(); ++i) {
        const Generator& a = gens_[i];
        const Generator& b = o.gens_[i];
        if (a.name != b.name || a.weight != b.weight || a.parity != b.parity)
            return false;
    }
    return true;
}

GenSetPtr make_genset(std::vector<Generator> gens) {
    return std::make_shared<const GeneratorSet>(std::move(gens));
}

void Chart::validate() const {
    if (!gens)
        throw std::invalid_argument("chart " + id + " has no generators");
    for (const Generator& g : gens->all()) {
        if (kind == ChartKind::Super) {
            int expect = g.parity == Parity::Odd ? 1 : 0;
            if (g.weight != expect)
                throw std::invalid_argument("super chart " + id + ": generator " + g.name +
                                            " must have weight " + std::to_string(expect));
        } else {
            if (g.weight < 0 || g.weight > degree)
                throw std::invalid_argument("graded chart " + id + ": generator " + g.name +
                                            " exceeds degree");
            if (g.parity != weight_parity(g.weight))
                throw std::invalid_argument("graded chart " + id + ": generator " + g.name +
                                            " has parity disagreeing with its weight");
        }
    }
}

} // namespace supercover
