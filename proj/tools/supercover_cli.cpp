#include "supercover/expr.hpp"
#include "supercover/loop.hpp"
#include "supercover/obstruction.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace supercover;

namespace {

/// Writes the document to --output when given, otherwise to stdout.
void emit(const nlohmann::json& j, const std::string& output) {
    if (output.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write '" + output + "'");
    out << j.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write '" + output + "'");
    out << text << "\n";
}

nlohmann::json report_to_json(const CocycleReport& rep) {
    nlohmann::json j;
    j["ok"] = rep.ok;
    j["failures"] = nlohmann::json::array();
    for (const auto& f : rep.failures)
        j["failures"].push_back(
            {{"where", f.where}, {"generator", f.generator}, {"residual", f.residual}});
    return j;
}

void print_failures(const CocycleReport& rep) {
    for (const auto& f : rep.failures)
        std::cerr << "residual at " << f.where << " on " << f.generator << ": " << f.residual
                  << "\n";
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

int main(int argc, char** argv) {
    CLI::App app{"exact truncated nonnegatively graded coverings of supermanifolds"};
    app.require_subcommand(1);

    std::string path, output, chart_id, expr_text, psi_path, base_path;
    int degree = 2;
    bool symmetric = false, as_json = false;
    int glm = 1, gln = 1;

    auto* check = app.add_subcommand("check-cocycle",
                                     "verify the inverse and triple identities of an atlas");
    check->add_option("atlas", path, "atlas json file")->required();
    check->add_flag("--json", as_json, "emit a json report instead of text");
    check->add_option("--output", output, "write the report to a file");

    auto* gr = app.add_subcommand("gr", "split retract of a super atlas");
    gr->add_option("atlas", path, "atlas json file")->required();
    gr->add_option("--output", output, "write the atlas to a file");

    auto* cover = app.add_subcommand("cover", "truncated covering of a super atlas");
    cover->add_option("atlas", path, "atlas json file")->required();
    cover->add_option("--degree", degree, "truncation degree (default 2)");
    cover->add_option("--output", output, "write the covering atlas to a file");

    auto* liftfn = app.add_subcommand("lift-fn", "lift one superfunction to the covering");
    liftfn->add_option("atlas", path, "atlas json file")->required();
    liftfn->add_option("--chart", chart_id, "chart the expression lives on")->required();
    liftfn->add_option("--expr", expr_text, "expression in the chart generators")->required();
    liftfn->add_option("--degree", degree, "truncation degree (default 2)");
    liftfn->add_option("--output", output, "write the lifted expression to a file");

    auto* rec = app.add_subcommand("reconstruct-odd2",
                                   "rebuild the super atlas of a degree two covering");
    rec->add_option("atlas", path, "covering atlas json file")->required();
    rec->add_option("--output", output, "write the super atlas to a file");

    auto* om = app.add_subcommand("omega2", "first obstruction class of a super atlas");
    om->add_option("atlas", path, "atlas json file")->required();
    om->add_flag("--json", as_json, "emit the cocycle with its verdict as json");
    om->add_option("--output", output, "write the cocycle to a file");

    auto* at = app.add_subcommand("atiyah-p2",
                                  "obstruction through the degree two covering, compared "
                                  "against the log form");
    at->add_option("atlas", path, "atlas json file")->required();
    at->add_flag("--json", as_json, "emit the cocycle with the comparison as json");
    at->add_option("--output", output, "write the cocycle to a file");

    auto* dw = app.add_subcommand("dw", "differential operator transition matrices");
    dw->add_option("atlas", path, "atlas json file")->required();
    dw->add_flag("--json", as_json, "emit matrices and report as json");
    dw->add_option("--output", output, "write matrices and report to a file");

    auto* loop = app.add_subcommand("loop", "truncated loop algebra of a superalgebra");
    loop->add_option("algebra", path, "structure constant json file")->required();
    loop->add_option("--degree", degree, "top t-degree kept")->required();
    loop->add_flag("--symmetric", symmetric, "two sided support -n..n");
    loop->add_option("--output", output, "write the loop algebra to a file");

    auto* gl = app.add_subcommand("gl-loop",
                                  "matrix realization of the loop of gl(m|n), checked "
                                  "against the abstract loop");
    gl->add_option("--m", glm, "even block size")->required();
    gl->add_option("--n", gln, "odd block size")->required();
    gl->add_option("--degree", degree, "kept subdiagonal depth")->required();
    gl->add_option("--output", output, "write the realized algebra to a file");

    auto* lh = app.add_subcommand("lift-hom", "lift a homomorphism through a loop covering");
    lh->add_option("source", path, "source algebra json file")->required();
    lh->add_option("base", base_path, "base algebra json file")->required();
    lh->add_option("--psi", psi_path, "json array of images over the base basis")->required();
    lh->add_option("--degree", degree, "top t-degree of the loop")->required();
    lh->add_flag("--symmetric", symmetric, "two sided loop support");
    lh->add_option("--output", output, "write the lifted images to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) {
            Atlas a = load_atlas(path);
            a.validate();
            CocycleReport rep = check_cocycle(a);
            if (as_json || !output.empty())
                emit(report_to_json(rep), output);
            else if (rep.ok)
                std::cout << "cocycle check passed\n";
            print_failures(rep);
            return rep.ok ? 0 : 1;
        }
        if (gr->parsed()) {
            emit(atlas_to_json(gr_atlas(load_atlas(path))), output);
            return 0;
        }
        if (cover->parsed()) {
            emit(atlas_to_json(build_covering_atlas(load_atlas(path), degree)), output);
            return 0;
        }
        if (liftfn->parsed()) {
            Atlas a = load_atlas(path);
            CoveringChart cc = build_covering_chart(a.chart(chart_id), degree);
            Superfunction f = parse_expr(expr_text, a.chart(chart_id).gens);
            emit_text(render_expr(lift_superfunction(cc, f)), output);
            return 0;
        }
        if (rec->parsed()) {
            emit(atlas_to_json(reconstruct_odd2(load_atlas(path))), output);
            return 0;
        }
        if (om->parsed()) {
            CechCocycle c = omega2(load_atlas(path));
            bool zero = c.identically_zero();
            if (as_json) {
                emit({{"vanishes", zero}, {"cocycle", cech_to_json(c)}}, output);
            } else {
                std::cout << "omega2: " << (zero ? "ZERO" : "NONZERO") << "\n";
                if (!output.empty()) emit(cech_to_json(c), output);
            }
            return 0;
        }
        if (at->parsed()) {
            Atlas a = load_atlas(path);
            CechCocycle viaP2 = atiyah_cocycle_P2(a);
            bool match = cech_equal(viaP2, omega2(a));
            if (as_json) {
                emit({{"matches_log_form", match}, {"cocycle", cech_to_json(viaP2)}}, output);
            } else {
                std::cout << "atiyah P2: "
                          << (match ? "matches the log form" : "MISMATCH with the log form")
                          << "\n";
                if (!output.empty()) emit(cech_to_json(viaP2), output);
            }
            return match ? 0 : 1;
        }
        if (dw->parsed()) {
            Atlas a = load_atlas(path);
            CechCocycle mats = donagi_witten_transitions(a);
            CocycleReport rep = donagi_witten_check(a);
            nlohmann::json doc = report_to_json(rep);
            doc["matrices"] = cech_to_json(mats);
            try {
                doc["extension"] = cech_to_json(dw_extension_data(a));
            } catch (const std::invalid_argument&) {
                // extension data only exists in odd dimension two
            }
            if (as_json || !output.empty())
                emit(doc, output);
            else if (rep.ok)
                std::cout << "operator cocycle check passed\n";
            print_failures(rep);
            return rep.ok ? 0 : 1;
        }
        if (loop->parsed()) {
            emit(algebra_to_json(build_loop(load_algebra(path), degree, symmetric).alg),
                 output);
            return 0;
        }
        if (gl->parsed()) {
            LieSuperalgebra real = gl_matrix_realization(glm, gln, degree);
            nlohmann::json jr = algebra_to_json(real);
            if (jr != algebra_to_json(build_loop(glmn(glm, gln), degree).alg)) {
                std::cerr << "realization disagrees with the abstract loop tables\n";
                return 1;
            }
            emit(jr, output);
            return 0;
        }
        if (lh->parsed()) {
            LieSuperalgebra src = load_algebra(path);
            LoopAlgebra L = build_loop(load_algebra(base_path), degree, symmetric);
            std::ifstream in(psi_path);
            if (!in) throw std::runtime_error("cannot open '" + psi_path + "'");
            nlohmann::json jp;
            in >> jp;
            LiftedHom lift = lift_homomorphism(src, psi_from_json(jp), L);
            emit({{"unique", lift.unique}, {"images", images_to_json(lift.images)}}, output);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
