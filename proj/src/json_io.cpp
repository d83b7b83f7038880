#include "resolvent/json_io.hpp"

#include "resolvent/error.hpp"

namespace resolvent {

namespace {

Modulus modulus_from(const Json& j) {
    if (!j.is_number_unsigned() && !j.is_number_integer()) throw InputError("modulus must be an integer");
    const auto v = j.get<std::int64_t>();
    if (v < 2) throw InputError("modulus must be at least 2");
    return Modulus(Residue(v));
}

std::vector<Residue> factors_from(const Json& j) {
    if (!j.is_array()) throw InputError("factors must be an array");
    std::vector<Residue> out;
    for (const auto& x : j) {
        if (!x.is_number_integer() || x.get<std::int64_t>() < 1) throw InputError("factors must be positive integers");
        out.push_back(Residue(x.get<std::int64_t>()));
    }
    return out;
}

ResidueMatrix matrix_from(const Json& j, Modulus m, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) throw InputError("matrix must have " + std::to_string(rows) + " rows");
    std::vector<std::vector<std::int64_t>> r;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) throw InputError("matrix rows must have " + std::to_string(cols) + " entries");
        std::vector<std::int64_t> v;
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw InputError("matrix entries must be integers");
            v.push_back(x.get<std::int64_t>());
        }
        r.push_back(std::move(v));
    }
    if (rows == 0) return ResidueMatrix(m, 0, cols);
    return ResidueMatrix::from_rows(m, r);
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json to_json(const FpModule& m) { return Json{{"modulus", m.modulus().value()}, {"factors", m.factors()}}; }

Json to_json(const ResidueMatrix& a) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const ModuleMap& f) {
    return Json{{"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"matrix", to_json(f.matrix())}};
}

Json to_json(const AugSimplicialObject& a) {
    Json levels = Json::array();
    for (int n = a.bottom(); n <= a.top(); ++n) {
        Json faces = Json::array(), degs = Json::array();
        if (n > a.bottom())
            for (const auto& d : a.faces(n)) faces.push_back(to_json(d.matrix()));
        if (a.has_degeneracies(n))
            for (int i = 0; i <= n; ++i) degs.push_back(to_json(a.degeneracy(n, i).matrix()));
        levels.push_back(Json{{"factors", a.object(n).factors()}, {"faces", faces}, {"degeneracies", degs}});
    }
    return Json{{"augmented", a.augmented()}, {"modulus", a.modulus().value()}, {"levels", levels}};
}

FpModule module_from_json(const Json& j) {
    const Modulus m = modulus_from(field(j, "modulus"));
    const auto f = factors_from(field(j, "factors"));
    for (auto d : f)
        if (m.value() % d != 0) throw InputError("factor " + std::to_string(d) + " does not divide the modulus");
    return canonical_module(m, f);
}

ModuleMap map_from_json(const Json& j) {
    const FpModule dom = module_from_json(field(j, "dom"));
    const FpModule cod = module_from_json(field(j, "cod"));
    if (dom.modulus() != cod.modulus()) throw ModulusMismatch("map between modules over different rings");
    for (const char* k : {"dom", "cod"}) {
        const auto& f = field(field(j, k), "factors");
        if (factors_from(f) != (std::string(k) == "dom" ? dom : cod).factors())
            throw InputError(std::string(k) + " must be given in invariant-factor form");
    }
    return ModuleMap(dom, cod, matrix_from(field(j, "matrix"), dom.modulus(), cod.rank(), dom.rank()));
}

AugSimplicialObject simplicial_from_json(const Json& j, Validation v) {
    const Modulus m = modulus_from(field(j, "modulus"));
    const Json& aug = field(j, "augmented");
    if (!aug.is_boolean()) throw InputError("augmented must be a boolean");
    const bool augmented = aug.get<bool>();
    const Json& lv = field(j, "levels");
    if (!lv.is_array() || lv.empty()) throw InputError("levels must be a non-empty array");
    std::vector<AugSimplicialObject::Level> levels;
    for (const auto& l : lv) levels.push_back({FpModule(m, factors_from(field(l, "factors"))), {}, {}});
    const int bottom = augmented ? -1 : 0;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const int n = int(k) + bottom;
        const Json& faces = field(lv[k], "faces");
        const Json& degs = field(lv[k], "degeneracies");
        if (!faces.is_array() || !degs.is_array()) throw InputError("faces and degeneracies must be arrays");
        if (k > 0) {
            if (faces.size() != std::size_t(n + 1)) throw InputError("level " + std::to_string(n) + " needs n+1 faces");
            for (const auto& f : faces) {
                const FpModule& dom = levels[k].object;
                const FpModule& cod = levels[k - 1].object;
                levels[k].faces.emplace_back(dom, cod, matrix_from(f, m, cod.rank(), dom.rank()));
            }
        }
        if (!degs.empty()) {
            if (k + 1 >= levels.size() || n < 0 || degs.size() != std::size_t(n + 1))
                throw InputError("level " + std::to_string(n) + " has the wrong number of degeneracies");
            for (const auto& s : degs) {
                const FpModule& dom = levels[k].object;
                const FpModule& cod = levels[k + 1].object;
                levels[k].degeneracies.emplace_back(dom, cod, matrix_from(s, m, cod.rank(), dom.rank()));
            }
        }
    }
    return AugSimplicialObject(augmented, std::move(levels), v);
}

Json value_json(const FpModule& m) { return Json{{"module", m.to_string()}, {"factors", m.factors()}}; }

Json coefficients_json(const Coefficients& e) {
    if (e.kind == Coefficients::Kind::Identity) return Json{{"kind", "identity"}};
    return Json{{"kind", "tensor"}, {"with", to_json(e.b)}};
}

Json report_json(const ComparisonReport& r, bool timing) {
    Json methods = Json::array();
    for (const auto& m : r.methods) methods.push_back(to_string(m));
    Json req{{"module", to_json(r.x)},
             {"coefficients", coefficients_json(r.e)},
             {"methods", methods},
             {"degrees", Json{{"from", 1}, {"to", r.n_max}}},
             {"oracle_index", "Tor_{n-1}"}};

    std::optional<FpModule> oracle_at[64];
    for (const auto& c : r.cells)
        if (c.method.kind == Method::Kind::Oracle && c.value && c.degree < 64) oracle_at[c.degree] = c.value;
    Json cells = Json::array();
    for (const auto& c : r.cells) {
        Json cell{{"method", to_string(c.method)}, {"degree", c.degree}};
        if (c.value) cell["value"] = value_json(*c.value);
        else cell["infeasible"] = c.infeasible;
        Json verdicts = Json::object();
        for (const auto& [n, iso] : r.isomorphic)
            if (n == c.degree) verdicts["isomorphic"] = iso;
        if (c.value && c.degree < 64 && oracle_at[c.degree]) verdicts["matches_oracle"] = *oracle_at[c.degree] == *c.value;
        cell["verdicts"] = verdicts;
        cell["millis"] = timing ? c.millis : 0.0;
        cells.push_back(std::move(cell));
    }
    Json pairs = Json::array();
    for (const auto& p : r.pairs) {
        Json pj{{"methods", Json::array({to_string(p.a), to_string(p.b)})}};
        if (p.depth < 0) {
            pj["infeasible"] = p.infeasible;
        } else {
            pj["depth"] = p.depth;
            pj["extensions"] = p.extensions_ok;
            pj["homotopies"] = p.homotopies_ok;
            Json inv = Json::array();
            for (const auto& [n, ok] : p.inverse_on_homology) inv.push_back(Json{{"degree", n}, {"inverse", ok}});
            pj["on_homology"] = inv;
        }
        pj["ok"] = p.ok();
        pairs.push_back(std::move(pj));
    }
    Json per_degree = Json::array();
    for (const auto& [n, iso] : r.isomorphic) per_degree.push_back(Json{{"degree", n}, {"isomorphic", iso}});
    return Json{{"request", req},
                {"cells", cells},
                {"isomorphic", per_degree},
                {"comparisons", pairs},
                {"verdict", r.ok() ? "isomorphic" : "not isomorphic"},
                {"suite_results", Json::array()}};
}

Json suites_json(const std::vector<SuiteResult>& s, bool timing) {
    Json out = Json::array();
    for (const auto& r : s)
        out.push_back(Json{{"name", r.name},
                           {"passed", r.passed},
                           {"total", r.total},
                           {"ok", r.ok()},
                           {"millis", timing ? r.millis : 0.0}});
    return out;
}

Json invariance_json(const InvarianceReport& r) {
    return Json{{"cocylinder_simplicial", r.cocylinder_simplicial},
                {"sections", r.sections},
                {"eps_iso", r.eps_iso},
                {"regular_pushout", r.regular_pushout},
                {"samples", r.samples},
                {"samples_ok", r.samples_ok},
                {"ok", r.ok()}};
}

}  // namespace resolvent
