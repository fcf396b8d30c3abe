#include "supercover/expr.hpp"
#include "supercover/loop.hpp"
#include "supercover/obstruction.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace supercover;

namespace {

nlohmann::json report_to_json(const CocycleReport& rep) {
    nlohmann::json j;
    j["ok"] = rep.ok;
    j["failures"] = nlohmann::json::array();
    for (const auto& f : rep.failures)
        j["failures"].push_back(
            {{"where", f.where}, {"generator", f.generator}, {"residual", f.residual}});
    return j;
}

std::vector<std::map<size_t, Rational>> psi_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("psi must be an array of coefficient maps");
    std::vector<std::map<size_t, Rational>> psi;
    for (const auto& row : j) {
        std::map<size_t, Rational> img;
        for (auto it = row.begin(); it != row.end(); ++it)
            img[std::stoul(it.key())] = rational_from_string(it.value().get<std::string>());
        psi.push_back(std::move(img));
    }
    return psi;
}

nlohmann::json images_to_json(const std::vector<std::map<size_t, Rational>>& images) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& img : images) {
        nlohmann::json row = nlohmann::json::object();
        for (const auto& [k, c] : img) row[std::to_string(k)] = rational_to_string(c);
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact truncated nonnegatively graded coverings of supermanifolds";

    py::class_<Atlas>(m, "Atlas")
        .def_static("load", &load_atlas, py::arg("path"))
        .def_static(
            "from_json",
            [](const std::string& text) { return atlas_from_json(nlohmann::json::parse(text)); },
            py::arg("text"))
        .def("to_json", [](const Atlas& a) { return atlas_to_json(a).dump(2); })
        .def("validate", &Atlas::validate)
        .def_property_readonly("kind",
                               [](const Atlas& a) {
                                   return a.kind == ChartKind::Super ? "super" : "graded";
                               })
        .def_property_readonly("degree", [](const Atlas& a) { return a.degree; })
        .def_property_readonly("chart_ids", [](const Atlas& a) {
            std::vector<std::string> ids;
            for (const Chart& c : a.charts) ids.push_back(c.id);
            return ids;
        });

    py::class_<LieSuperalgebra>(m, "LieSuperalgebra")
        .def_static("load", &load_algebra, py::arg("path"))
        .def_static(
            "from_json",
            [](const std::string& text) {
                return algebra_from_json(nlohmann::json::parse(text));
            },
            py::arg("text"))
        .def("to_json", [](const LieSuperalgebra& g) { return algebra_to_json(g).dump(2); })
        .def("validate",
             [](const LieSuperalgebra& g, std::optional<std::pair<int, int>> window) {
                 g.validate(window);
             },
             py::arg("window") = std::nullopt)
        .def_property_readonly("dim", [](const LieSuperalgebra& g) { return g.dim(); })
        .def_property_readonly("graded", &LieSuperalgebra::graded)
        .def_property_readonly("basis_names", [](const LieSuperalgebra& g) {
            std::vector<std::string> names;
            for (const auto& e : g.basis) names.push_back(e.name);
            return names;
        });

    py::class_<LoopAlgebra>(m, "LoopAlgebra")
        .def_property_readonly("algebra", [](const LoopAlgebra& L) { return L.alg; })
        .def_property_readonly("max_degree", [](const LoopAlgebra& L) { return L.max_degree; })
        .def_property_readonly("symmetric", [](const LoopAlgebra& L) { return L.symmetric; });

    m.def("check_cocycle_json",
          [](const Atlas& a) { return report_to_json(check_cocycle(a)).dump(2); },
          py::arg("atlas"));
    m.def("build_covering_atlas", &build_covering_atlas, py::arg("atlas"), py::arg("degree"));
    m.def("gr_atlas", &gr_atlas, py::arg("atlas"));
    m.def("reconstruct_odd2", &reconstruct_odd2, py::arg("atlas"));
    m.def(
        "lift_function",
        [](const Atlas& a, const std::string& chart_id, const std::string& expr, int degree) {
            const Chart& c = a.chart(chart_id);
            CoveringChart cc = build_covering_chart(c, degree);
            return render_expr(lift_superfunction(cc, parse_expr(expr, c.gens)));
        },
        py::arg("atlas"), py::arg("chart"), py::arg("expr"), py::arg("degree"));
    m.def("omega2_json",
          [](const Atlas& a) {
              CechCocycle c = omega2(a);
              return nlohmann::json{{"vanishes", c.identically_zero()},
                                    {"cocycle", cech_to_json(c)}}
                  .dump(2);
          },
          py::arg("atlas"));
    m.def("atiyah_p2_json",
          [](const Atlas& a) {
              CechCocycle viaP2 = atiyah_cocycle_P2(a);
              return nlohmann::json{{"matches_log_form", cech_equal(viaP2, omega2(a))},
                                    {"cocycle", cech_to_json(viaP2)}}
                  .dump(2);
          },
          py::arg("atlas"));
    m.def("donagi_witten_json",
          [](const Atlas& a) {
              nlohmann::json doc = report_to_json(donagi_witten_check(a));
              doc["matrices"] = cech_to_json(donagi_witten_transitions(a));
              try {
                  doc["extension"] = cech_to_json(dw_extension_data(a));
              } catch (const std::invalid_argument&) {
                  // extension data only exists in odd dimension two
              }
              return doc.dump(2);
          },
          py::arg("atlas"));
    m.def("check_injectivity_json",
          [](const Atlas& a, int degree) {
              InjectivityReport r = check_injectivity(a, degree);
              nlohmann::json charts = nlohmann::json::array();
              for (const auto& c : r.charts)
                  charts.push_back({{"id", c.id},
                                    {"injective", c.injective},
                                    {"invisible", c.invisible}});
              return nlohmann::json{{"degree", r.degree},
                                    {"all_injective", r.all_injective},
                                    {"charts", charts}}
                  .dump(2);
          },
          py::arg("atlas"), py::arg("degree"));

    m.def("build_loop", &build_loop, py::arg("algebra"), py::arg("degree"),
          py::arg("symmetric") = false);
    m.def("glmn", &glmn, py::arg("m"), py::arg("n"));
    m.def("gl_matrix_realization", &gl_matrix_realization, py::arg("m"), py::arg("n_odd"),
          py::arg("depth"));
    m.def("lift_homomorphism_json",
          [](const LieSuperalgebra& source, const std::string& psi_text, const LoopAlgebra& L) {
              LiftedHom lift =
                  lift_homomorphism(source, psi_from_json(nlohmann::json::parse(psi_text)), L);
              return nlohmann::json{{"unique", lift.unique},
                                    {"images", images_to_json(lift.images)}}
                  .dump(2);
          },
          py::arg("source"), py::arg("psi"), py::arg("loop"));
}
