#include "supercover/loop.hpp"

#include <fstream>
#include <stdexcept>

namespace supercover {

namespace {

using Coeffs = std::map<size_t, Rational>;

void drop_zeros(Coeffs& c) {
    for (auto it = c.begin(); it != c.end();)
        it = it->second == 0 ? c.erase(it) : std::next(it);
}

/// acc += scale * v
void add_scaled(Coeffs& acc, const Coeffs& v, const Rational& scale) {
    for (const auto& [k, x] : v) acc[k] += scale * x;
}

} // namespace

bool LieSuperalgebra::graded() const {
    for (const Elem& e : basis)
        if (!e.degree) return false;
    return true;
}

Coeffs LieSuperalgebra::bracket(const Coeffs& x, const Coeffs& y) const {
    Coeffs out;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y) add_scaled(out, table[i][j], ci * cj);
    drop_zeros(out);
    return out;
}

void LieSuperalgebra::validate(std::optional<std::pair<int, int>> window) const {
    size_t n = dim();
    if (table.size() != n)
        throw std::invalid_argument("structure table has the wrong number of rows");
    for (const auto& row : table)
        if (row.size() != n)
            throw std::invalid_argument("structure table has the wrong number of columns");
    for (const Elem& e : basis)
        if (e.parity != 0 && e.parity != 1)
            throw std::invalid_argument("basis parity must be 0 or 1");
    if (window && !graded())
        throw std::invalid_argument("a truncation window requires a graded basis");

    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (const auto& [k, c] : table[i][j]) {
                if (k >= n) throw std::invalid_argument("bracket index out of range");
                if (c == 0) continue;
                if (basis[k].parity != (basis[i].parity + basis[j].parity) % 2)
                    throw std::invalid_argument("bracket of " + basis[i].name + ", " +
                                                basis[j].name + " violates parity");
                if (basis[i].degree && basis[j].degree && basis[k].degree &&
                    *basis[k].degree != *basis[i].degree + *basis[j].degree)
                    throw std::invalid_argument("bracket of " + basis[i].name + ", " +
                                                basis[j].name + " violates the grading");
            }

    // graded antisymmetry: [y,x] = -(-1)^{|x||y|} [x,y]
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Coeffs expect;
            Rational s = basis[i].parity && basis[j].parity ? 1 : -1;
            add_scaled(expect, table[i][j], s);
            drop_zeros(expect);
            Coeffs got = table[j][i];
            drop_zeros(got);
            if (got != expect)
                throw std::invalid_argument("graded antisymmetry fails on " + basis[i].name +
                                            ", " + basis[j].name);
        }

    // graded Jacobi: [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]],
    // skipping triples whose intermediate degrees leave the window
    auto in_window = [&](int d) { return d >= window->first && d <= window->second; };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                if (window) {
                    int di = *basis[i].degree, dj = *basis[j].degree, dk = *basis[k].degree;
                    if (!in_window(di + dj) || !in_window(di + dk) || !in_window(dj + dk) ||
                        !in_window(di + dj + dk))
                        continue;
                }
                Coeffs ei = {{i, 1}}, ej = {{j, 1}}, ek = {{k, 1}};
                Coeffs lhs = bracket(ei, bracket(ej, ek));
                Coeffs rhs = bracket(bracket(ei, ej), ek);
                Rational s = basis[i].parity && basis[j].parity ? -1 : 1;
                add_scaled(rhs, bracket(ej, bracket(ei, ek)), s);
                drop_zeros(rhs);
                if (lhs != rhs)
                    throw std::invalid_argument("Jacobi fails on " + basis[i].name + ", " +
                                                basis[j].name + ", " + basis[k].name);
            }
}

LoopAlgebra build_loop(const LieSuperalgebra& g, int n, bool symmetric) {
    if (n < 0) throw std::invalid_argument("loop truncation order must be nonnegative");
    g.validate();

    LoopAlgebra L;
    L.base = g;
    L.max_degree = n;
    L.symmetric = symmetric;
    int lo = symmetric ? -n : 0;

    std::map<std::pair<size_t, int>, size_t> slot;
    for (int d = lo; d <= n; ++d)
        for (size_t i = 0; i < g.dim(); ++i) {
            if (((d % 2) + 2) % 2 != g.basis[i].parity) continue;
            std::string suffix =
                d < 0 ? "_tm" + std::to_string(-d) : "_t" + std::to_string(d);
            slot[{i, d}] = L.alg.basis.size();
            L.alg.basis.push_back({g.basis[i].name + suffix, g.basis[i].parity, d});
            L.origin.emplace_back(i, d);
        }

    size_t N = L.alg.dim();
    L.alg.table.assign(N, std::vector<Coeffs>(N));
    for (size_t a = 0; a < N; ++a)
        for (size_t b = 0; b < N; ++b) {
            auto [i, d1] = L.origin[a];
            auto [j, d2] = L.origin[b];
            int d = d1 + d2;
            if (d < lo || d > n) continue;
            for (const auto& [k, c] : g.table[i][j]) L.alg.table[a][b][slot.at({k, d})] = c;
        }
    L.alg.validate(std::pair(lo, n));
    return L;
}

LieSuperalgebra glmn(int m, int n) {
    if (m < 0 || n < 0 || m + n == 0)
        throw std::invalid_argument("matrix dimensions must be nonnegative and not both zero");
    int s = m + n;
    auto par = [&](int p) { return p <= m ? 0 : 1; };
    auto idx = [&](int p, int q) { return size_t(p - 1) * s + size_t(q - 1); };

    LieSuperalgebra g;
    for (int p = 1; p <= s; ++p)
        for (int q = 1; q <= s; ++q)
            g.basis.push_back({"e_" + std::to_string(p) + "_" + std::to_string(q),
                               (par(p) + par(q)) % 2, std::nullopt});
    g.table.assign(g.dim(), std::vector<Coeffs>(g.dim()));
    for (int p = 1; p <= s; ++p)
        for (int q = 1; q <= s; ++q)
            for (int r = 1; r <= s; ++r)
                for (int t = 1; t <= s; ++t) {
                    Coeffs acc;
                    if (q == r) acc[idx(p, t)] += 1;
                    if (t == p)
                        acc[idx(r, q)] +=
                            g.basis[idx(p, q)].parity && g.basis[idx(r, t)].parity ? 1 : -1;
                    drop_zeros(acc);
                    g.table[idx(p, q)][idx(r, t)] = std::move(acc);
                }
    g.validate();
    return g;
}

LieSuperalgebra gl_matrix_realization(int m, int n_odd, int depth) {
    if (m < 1 || n_odd < 1)
        throw std::invalid_argument("both blocks of the realization must be nonempty");
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");

    // depth + 2 alternating block rows; one extra row so that every degree
    // up to depth has a placement in front of every column parity
    int rows = depth + 2;
    std::vector<int> offset(rows + 1, 0);
    for (int r = 0; r < rows; ++r) offset[r + 1] = offset[r] + (r % 2 == 0 ? m : n_odd);

    int s = m + n_odd;
    auto par = [&](int p) { return p <= m ? 0 : 1; };
    auto inner = [&](int p) { return p <= m ? p - 1 : p - 1 - m; };
    auto block_of = [&](int flat) {
        int r = 0;
        while (offset[r + 1] <= flat) ++r;
        return r;
    };

    struct Slot {
        int d, p, q;
    };
    std::vector<Slot> slots;
    for (int d = 0; d <= depth; ++d)
        for (int p = 1; p <= s; ++p)
            for (int q = 1; q <= s; ++q)
                if ((par(p) + par(q)) % 2 == d % 2) slots.push_back({d, p, q});

    // sparse matrix of one slot: the same entry repeated along the d-th block
    // subdiagonal, at every column block of the right parity
    using Mat = std::map<std::pair<int, int>, Rational>;
    auto realize = [&](const Slot& b) {
        Mat mat;
        for (int c = 0; c + b.d < rows; ++c) {
            int r = c + b.d;
            if (c % 2 != par(b.q) || r % 2 != par(b.p)) continue;
            mat[{offset[r] + inner(b.p), offset[c] + inner(b.q)}] = 1;
        }
        return mat;
    };
    auto matmul = [](const Mat& x, const Mat& y) {
        Mat out;
        for (const auto& [rc1, v1] : x)
            for (const auto& [rc2, v2] : y)
                if (rc1.second == rc2.first) out[{rc1.first, rc2.second}] += v1 * v2;
        for (auto it = out.begin(); it != out.end();)
            it = it->second == 0 ? out.erase(it) : std::next(it);
        return out;
    };

    LieSuperalgebra g;
    std::vector<Mat> realized;
    for (const Slot& b : slots) {
        g.basis.push_back({"e_" + std::to_string(b.p) + "_" + std::to_string(b.q) + "_t" +
                               std::to_string(b.d),
                           (par(b.p) + par(b.q)) % 2, b.d});
        realized.push_back(realize(b));
        if (realized.back().empty())
            throw std::logic_error("realization slot has no placement");
    }

    size_t N = slots.size();
    g.table.assign(N, std::vector<Coeffs>(N));
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) {
            Mat comm = matmul(realized[i], realized[j]);
            Rational s2 = g.basis[i].parity && g.basis[j].parity ? 1 : -1;
            for (const auto& [rc, v] : matmul(realized[j], realized[i])) comm[rc] += s2 * v;
            for (auto it = comm.begin(); it != comm.end();)
                it = it->second == 0 ? comm.erase(it) : std::next(it);

            int dsum = slots[i].d + slots[j].d;
            if (dsum > depth) {
                // quotient: whatever survives must sit beyond the kept depth
                for (const auto& [rc, v] : comm)
                    if (block_of(rc.first) - block_of(rc.second) <= depth)
                        throw std::logic_error("realization bracket leaks into the quotient");
                continue;
            }
            Coeffs out;
            for (size_t t = 0; t < N; ++t) {
                if (slots[t].d != dsum) continue;
                auto it = comm.find(realized[t].begin()->first);
                if (it == comm.end()) continue;
                Rational coef = it->second;
                out[t] = coef;
                for (const auto& [rc, one] : realized[t]) {
                    comm[rc] -= coef;
                    if (comm[rc] == 0) comm.erase(rc);
                }
            }
            // repeating-pattern consistency: the subtraction must be exact
            if (!comm.empty())
                throw std::logic_error("realization bracket breaks the subdiagonal pattern");
            g.table[i][j] = std::move(out);
        }
    g.validate(std::pair(0, depth));
    return g;
}

LiftedHom lift_homomorphism(const LieSuperalgebra& a, const std::vector<Coeffs>& psi,
                            const LoopAlgebra& p) {
    if (!a.graded())
        throw std::invalid_argument("the source of a lift must carry degrees");
    if (psi.size() != a.dim())
        throw std::invalid_argument("psi must give one image per source basis element");

    int wlo = *a.basis[0].degree, whi = wlo;
    for (const auto& e : a.basis) {
        wlo = std::min(wlo, *e.degree);
        whi = std::max(whi, *e.degree);
    }
    a.validate(std::pair(wlo, whi));

    int lo = p.symmetric ? -p.max_degree : 0;
    for (size_t i = 0; i < a.dim(); ++i) {
        int d = *a.basis[i].degree;
        if (((d % 2) + 2) % 2 != a.basis[i].parity)
            throw std::invalid_argument("degree of " + a.basis[i].name +
                                        " disagrees with its parity");
        if (d < lo || d > p.max_degree)
            throw std::invalid_argument("degree of " + a.basis[i].name +
                                        " lies outside the loop support");
        for (const auto& [k, c] : psi[i]) {
            if (k >= p.base.dim()) throw std::invalid_argument("psi image index out of range");
            if (p.base.basis[k].parity != a.basis[i].parity)
                throw std::invalid_argument("psi does not preserve parity on " +
                                            a.basis[i].name);
        }
    }

    // psi must be a bracket homomorphism wherever the source grading is not
    // truncation-affected
    auto in_window = [&](int d) { return d >= wlo && d <= whi; };
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j) {
            if (!in_window(*a.basis[i].degree + *a.basis[j].degree)) continue;
            Coeffs lhs;
            for (const auto& [k, c] : a.table[i][j]) add_scaled(lhs, psi[k], c);
            drop_zeros(lhs);
            if (lhs != p.base.bracket(psi[i], psi[j]))
                throw std::invalid_argument("psi is not a bracket homomorphism on " +
                                            a.basis[i].name + ", " + a.basis[j].name);
        }

    // place each image in its degree layer; uniqueness of the graded lift is
    // the degreewise bijectivity of the covering projection, checked here by
    // enumerating the loop basis
    LiftedHom out;
    out.unique = true;
    out.images.resize(a.dim());
    for (size_t i = 0; i < a.dim(); ++i) {
        int d = *a.basis[i].degree;
        for (const auto& [k, c] : psi[i]) {
            size_t found = 0, where = 0;
            for (size_t l = 0; l < p.origin.size(); ++l)
                if (p.origin[l] == std::pair(k, d)) {
                    ++found;
                    where = l;
                }
            if (found == 0) throw std::logic_error("loop basis misses a graded slot");
            if (found > 1) out.unique = false;
            out.images[i][where] = c;
        }
    }

    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j) {
            if (!in_window(*a.basis[i].degree + *a.basis[j].degree)) continue;
            Coeffs lhs;
            for (const auto& [k, c] : a.table[i][j]) add_scaled(lhs, out.images[k], c);
            drop_zeros(lhs);
            if (lhs != p.alg.bracket(out.images[i], out.images[j]))
                throw std::logic_error("the canonical lift fails to be a homomorphism");
        }
    return out;
}

LieSuperalgebra algebra_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("basis") || !j.contains("brackets"))
        throw std::invalid_argument("algebra json needs \"basis\" and \"brackets\"");
    LieSuperalgebra g;
    for (const auto& jb : j.at("basis")) {
        if (!jb.contains("name") || !jb.contains("parity"))
            throw std::invalid_argument("basis entries need \"name\" and \"parity\"");
        LieSuperalgebra::Elem e;
        e.name = jb.at("name").get<std::string>();
        e.parity = jb.at("parity").get<int>();
        if (jb.contains("degree")) e.degree = jb.at("degree").get<int>();
        g.basis.push_back(std::move(e));
    }
    g.table.assign(g.dim(), std::vector<Coeffs>(g.dim()));
    for (const auto& jb : j.at("brackets")) {
        if (!jb.contains("i") || !jb.contains("j") || !jb.contains("k") || !jb.contains("c"))
            throw std::invalid_argument("bracket entries need \"i\", \"j\", \"k\", \"c\"");
        size_t bi = jb.at("i").get<size_t>();
        size_t bj = jb.at("j").get<size_t>();
        size_t bk = jb.at("k").get<size_t>();
        if (bi >= g.dim() || bj >= g.dim() || bk >= g.dim())
            throw std::invalid_argument("bracket index out of range");
        Rational c = jb.at("c").is_string() ? rational_from_string(jb.at("c").get<std::string>())
                                            : Rational(jb.at("c").get<long long>());
        if (c != 0) g.table[bi][bj][bk] += c;
    }
    for (auto& row : g.table)
        for (auto& cell : row) drop_zeros(cell);
    g.validate();
    return g;
}

nlohmann::json algebra_to_json(const LieSuperalgebra& g) {
    nlohmann::json j;
    j["basis"] = nlohmann::json::array();
    for (const auto& e : g.basis) {
        nlohmann::json je = {{"name", e.name}, {"parity", e.parity}};
        if (e.degree) je["degree"] = *e.degree;
        j["basis"].push_back(std::move(je));
    }
    j["brackets"] = nlohmann::json::array();
    for (size_t i = 0; i < g.dim(); ++i)
        for (size_t k = 0; k < g.dim(); ++k)
            for (const auto& [t, c] : g.table[i][k])
                if (c != 0)
                    j["brackets"].push_back({{"i", i},
                                             {"j", k},
                                             {"k", t},
                                             {"c", rational_to_string(c)}});
    return j;
}

LieSuperalgebra load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return algebra_from_json(j);
}

} // namespace supercover
