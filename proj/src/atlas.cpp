#include "supercover/atlas.hpp"

#include "supercover/expr.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace supercover {

const Chart& Atlas::chart(const std::string& id) const {
    for (const Chart& c : charts)
        if (c.id == id) return c;
    throw std::invalid_argument("unknown chart '" + id + "'");
}

const TransitionMap* Atlas::transition(const std::string& from, const std::string& to) const {
    for (const TransitionMap& t : transitions)
        if (t.from == from && t.to == to) return &t;
    return nullptr;
}

TransitionMap Atlas::identity_transition(const std::string& id) const {
    const Chart& c = chart(id);
    SubstMode mode = kind == ChartKind::Super ? SubstMode::Super : SubstMode::Graded;
    std::optional<int> cutoff;
    if (kind == ChartKind::Graded) cutoff = degree;
    return TransitionMap{id, id, Substitution::identity(c.gens, mode, cutoff)};
}

void Atlas::validate() const {
    std::set<std::string> ids;
    for (const Chart& c : charts) {
        if (!ids.insert(c.id).second)
            throw std::invalid_argument("duplicate chart id '" + c.id + "'");
        if (c.kind != kind) throw std::invalid_argument("charts of mixed kind");
        if (kind == ChartKind::Graded && c.degree != degree)
            throw std::invalid_argument("graded chart degree mismatch");
        c.validate();
    }
    std::set<std::pair<std::string, std::string>> pairs;
    for (const TransitionMap& t : transitions) {
        if (t.from == t.to)
            throw std::invalid_argument("transition from a chart to itself");
        const Chart& cf = chart(t.from);
        const Chart& ct = chart(t.to);
        if (!pairs.insert({t.from, t.to}).second)
            throw std::invalid_argument("duplicate transition " + t.from + " -> " + t.to);
        if (!t.sub.source->same_shape(*ct.gens) || !t.sub.target->same_shape(*cf.gens))
            throw std::invalid_argument("transition " + t.from + " -> " + t.to +
                                        " uses wrong generator sets");
        t.sub.validate();
    }
    for (const auto& [f, to] : pairs)
        if (!pairs.count({to, f}))
            throw std::invalid_argument("missing reverse transition " + to + " -> " + f);
    for (const auto& tr : triples)
        for (size_t i = 0; i < 3; ++i) {
            chart(tr[i]);
            if (!transition(tr[i], tr[(i + 1) % 3]))
                throw std::invalid_argument("triple (" + tr[0] + "," + tr[1] + "," + tr[2] +
                                            ") lacks transition " + tr[i] + " -> " +
                                            tr[(i + 1) % 3]);
        }
}

TransitionMap compose(const TransitionMap& t1, const TransitionMap& t2, ChartKind kind,
                      std::optional<int> k) {
    if (t1.to != t2.from)
        throw std::invalid_argument("cannot compose " + t1.from + "->" + t1.to + " with " +
                                    t2.from + "->" + t2.to);
    Substitution s1 = t1.sub;
    if (kind == ChartKind::Graded) {
        s1.cutoff = k ? k : s1.cutoff;
    } else {
        s1.cutoff = std::nullopt;
    }
    TransitionMap out;
    out.from = t1.from;
    out.to = t2.to;
    out.sub = s1.after(t2.sub);
    return out;
}

namespace {

void check_identity(const TransitionMap& t, const std::string& where, CocycleReport& rep) {
    const GeneratorSet& gs = *t.sub.source;
    for (size_t i = 0; i < gs.size(); ++i) {
        Superfunction residual = t.sub.images[i] - Superfunction::generator(t.sub.source, i);
        if (!residual.is_zero()) {
            rep.ok = false;
            rep.failures.push_back({where, gs.gen(i).name, render_expr(residual)});
        }
    }
}

} // namespace

CocycleReport check_cocycle(const Atlas& a, std::optional<int> k) {
    std::optional<int> cutoff = k;
    if (a.kind == ChartKind::Graded && !cutoff) cutoff = a.degree;
    CocycleReport rep;
    for (const TransitionMap& t : a.transitions) {
        const TransitionMap* back = a.transition(t.to, t.from);
        if (!back) {
            rep.ok = false;
            rep.failures.push_back({"(" + t.from + "," + t.to + ")", "", "missing reverse"});
            continue;
        }
        TransitionMap round = compose(t, *back, a.kind, cutoff);
        check_identity(round, "(" + t.from + "," + t.to + ")", rep);
    }
    for (const auto& tr : a.triples) {
        const TransitionMap* tij = a.transition(tr[0], tr[1]);
        const TransitionMap* tjk = a.transition(tr[1], tr[2]);
        const TransitionMap* tki = a.transition(tr[2], tr[0]);
        std::string where = "(" + tr[0] + "," + tr[1] + "," + tr[2] + ")";
        if (!tij || !tjk || !tki) {
            rep.ok = false;
            rep.failures.push_back({where, "", "missing transition"});
            continue;
        }
        TransitionMap round = compose(compose(*tij, *tjk, a.kind, cutoff), *tki, a.kind, cutoff);
        check_identity(round, where, rep);
    }
    return rep;
}

Atlas gr_atlas(const Atlas& a) {
    if (a.kind != ChartKind::Super)
        throw std::invalid_argument("the retract atlas is defined for super atlases");
    Atlas out = a;
    for (TransitionMap& t : out.transitions) {
        for (size_t i = 0; i < t.sub.images.size(); ++i) {
            const Generator& g = t.sub.source->gen(i);
            t.sub.images[i] = g.parity == Parity::Even ? t.sub.images[i].j_component(0)
                                                       : t.sub.images[i].j_component(1);
        }
    }
    return out;
}

namespace {

Parity parity_from_string(const std::string& s) {
    if (s == "even") return Parity::Even;
    if (s == "odd") return Parity::Odd;
    throw std::invalid_argument("parity must be \"even\" or \"odd\", got \"" + s + "\"");
}

std::string parity_to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

} // namespace

Atlas atlas_from_json(const nlohmann::json& j) {
    Atlas a;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "super") {
        a.kind = ChartKind::Super;
    } else if (kind == "graded") {
        a.kind = ChartKind::Graded;
        a.degree = j.at("degree").get<int>();
    } else {
        throw std::invalid_argument("atlas kind must be \"super\" or \"graded\"");
    }
    for (const auto& cj : j.at("charts")) {
        Chart c;
        c.id = cj.at("id").get<std::string>();
        c.kind = a.kind;
        c.degree = a.degree;
        std::vector<Generator> gens;
        for (const auto& gj : cj.at("generators")) {
            Generator g;
            g.name = gj.at("name").get<std::string>();
            g.weight = gj.at("weight").get<int>();
            g.parity = parity_from_string(gj.at("parity").get<std::string>());
            gens.push_back(std::move(g));
        }
        c.gens = make_genset(std::move(gens));
        a.charts.push_back(std::move(c));
    }
    SubstMode mode = a.kind == ChartKind::Super ? SubstMode::Super : SubstMode::Graded;
    std::optional<int> cutoff;
    if (a.kind == ChartKind::Graded) cutoff = a.degree;
    if (j.contains("transitions"))
        for (const auto& tj : j.at("transitions")) {
            TransitionMap t;
            t.from = tj.at("from").get<std::string>();
            t.to = tj.at("to").get<std::string>();
            const Chart& cf = a.chart(t.from);
            const Chart& ct = a.chart(t.to);
            t.sub.source = ct.gens;
            t.sub.target = cf.gens;
            t.sub.mode = mode;
            t.sub.cutoff = cutoff;
            const auto& imgs = tj.at("images");
            for (const Generator& g : ct.gens->all()) {
                if (!imgs.contains(g.name))
                    throw std::invalid_argument("transition " + t.from + " -> " + t.to +
                                                " lacks an image for '" + g.name + "'");
                t.sub.images.push_back(
                    parse_expr(imgs.at(g.name).get<std::string>(), cf.gens));
            }
            a.transitions.push_back(std::move(t));
        }
    if (j.contains("triples"))
        for (const auto& trj : j.at("triples")) {
            if (!trj.is_array() || trj.size() != 3)
                throw std::invalid_argument("triples must be three chart ids");
            a.triples.push_back({trj[0].get<std::string>(), trj[1].get<std::string>(),
                                 trj[2].get<std::string>()});
        }
    a.validate();
    return a;
}

nlohmann::json atlas_to_json(const Atlas& a) {
    nlohmann::json j;
    j["kind"] = a.kind == ChartKind::Super ? "super" : "graded";
    if (a.kind == ChartKind::Graded) j["degree"] = a.degree;
    j["charts"] = nlohmann::json::array();
    for (const Chart& c : a.charts) {
        nlohmann::json cj;
        cj["id"] = c.id;
        cj["generators"] = nlohmann::json::array();
        for (const Generator& g : c.gens->all())
            cj["generators"].push_back({{"name", g.name},
                                        {"weight", g.weight},
                                        {"parity", parity_to_string(g.parity)}});
        j["charts"].push_back(std::move(cj));
    }
    j["transitions"] = nlohmann::json::array();
    for (const TransitionMap& t : a.transitions) {
        nlohmann::json tj;
        tj["from"] = t.from;
        tj["to"] = t.to;
        nlohmann::json imgs = nlohmann::json::object();
        for (size_t i = 0; i < t.sub.images.size(); ++i)
            imgs[t.sub.source->gen(i).name] = render_expr(t.sub.images[i]);
        tj["images"] = std::move(imgs);
        j["transitions"].push_back(std::move(tj));
    }
    if (!a.triples.empty()) {
        j["triples"] = nlohmann::json::array();
        for (const auto& tr : a.triples) j["triples"].push_back({tr[0], tr[1], tr[2]});
    }
    return j;
}

Atlas load_atlas(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return atlas_from_json(j);
}

} // namespace supercover
