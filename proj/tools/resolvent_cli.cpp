// resolvent: command-line front end.
//
// exit 0 ok, 1 verification failure, 2 guard infeasibility, 3 bad input

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <new>
#include <sstream>

#include "CLI11.hpp"
#include "resolvent/error.hpp"
#include "resolvent/json_io.hpp"

using namespace resolvent;

namespace {

enum Exit { kOk = 0, kFailed = 1, kInfeasible = 2, kBadInput = 3 };

struct Options {
    Residue modulus = 0;
    std::string module;
    std::string coeff = "id";
    std::vector<std::string> methods;
    int degree = 1;
    std::uint64_t max_enum = 0;
    std::string format = "text";
    bool timing = false;
    // subcommand specific
    std::string target, matrix, map_file, variable = "first";
    std::uint64_t seed = 42;
    int scale = 1;
    std::string input, output;
    bool no_maps = false, progress = false;
};

bool json_out(const Options& o) { return o.format == "json"; }

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

bool looks_like_file(const std::string& s) {
    return s.find(".json") != std::string::npos || s.find('/') != std::string::npos;
}

Modulus need_modulus(const Options& o) {
    if (o.modulus < 2) throw InputError("--modulus is required (at least 2)");
    return Modulus(o.modulus);
}

// "2,4", "2 4", "Z/2 + Z/4", "0" for the zero module, or a module JSON file.
FpModule parse_module(const std::string& spec, const Options& o) {
    if (looks_like_file(spec)) {
        FpModule m = module_from_json(read_json_file(spec));
        if (o.modulus && m.modulus().value() != o.modulus)
            throw ModulusMismatch(spec + " is over Z/" + std::to_string(m.modulus().value()) + ", not Z/" +
                                  std::to_string(o.modulus));
        return m;
    }
    const Modulus m = need_modulus(o);
    std::string s = spec;
    for (auto& c : s)
        if (c == ',' || c == '+' || c == '/' || c == 'Z') c = ' ';
    std::istringstream is(s);
    std::vector<Residue> orders;
    std::string tok;
    while (is >> tok) {
        std::size_t used = 0;
        long long v = -1;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
        }
        if (used != tok.size() || v < 0) throw InputError("bad factor \"" + tok + "\" in module " + spec);
        if (v == 0) continue;
        if (m.value() % Residue(v) != 0)
            throw InputError("factor " + tok + " does not divide the modulus " + std::to_string(m.value()));
        orders.push_back(Residue(v));
    }
    return canonical_module(m, orders);
}

Coefficients parse_coeff(const Options& o) {
    if (o.coeff == "id" || o.coeff == "identity") return Coefficients::identity();
    const std::string prefix = "tensor:";
    if (o.coeff.rfind(prefix, 0) == 0) return Coefficients::tensor_with(parse_module(o.coeff.substr(prefix.size()), o));
    throw InputError("--coeff must be id or tensor:<module>, got " + o.coeff);
}

std::vector<Method> parse_methods(const Options& o) {
    std::vector<Method> out;
    for (const auto& s : o.methods) {
        auto m = parse_method(s);
        if (!m) throw InputError("unknown method " + s);
        out.push_back(*m);
    }
    return out;
}

Method single_method(const Options& o) {
    const auto ms = parse_methods(o);
    if (ms.size() != 1) throw InputError("exactly one --method is needed");
    return ms[0];
}

// rows separated by ';' or '|', entries by ',' or spaces
ResidueMatrix parse_matrix(std::string spec, Modulus m, std::size_t rows, std::size_t cols) {
    std::replace(spec.begin(), spec.end(), '|', ';');
    std::vector<std::vector<std::int64_t>> r;
    std::istringstream rs(spec);
    std::string row;
    while (std::getline(rs, row, ';')) {
        for (auto& c : row)
            if (c == ',') c = ' ';
        std::istringstream es(row);
        std::vector<std::int64_t> v;
        std::string tok;
        while (es >> tok) {
            std::size_t used = 0;
            std::int64_t x = 0;
            try {
                x = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw InputError("bad matrix entry \"" + tok + "\"");
            v.push_back(x);
        }
        if (!v.empty()) r.push_back(std::move(v));
    }
    if (r.size() != rows) throw InputError("--matrix needs " + std::to_string(rows) + " rows");
    for (const auto& v : r)
        if (v.size() != cols) throw InputError("--matrix rows need " + std::to_string(cols) + " entries");
    if (rows == 0) return ResidueMatrix(m, 0, cols);
    return ResidueMatrix::from_rows(m, r);
}

ModuleMap parse_map(const Options& o, const FpModule& dom) {
    if (!o.map_file.empty()) {
        ModuleMap f = map_from_json(read_json_file(o.map_file));
        if (f.dom() != dom) throw InputError("--map domain is " + f.dom().to_string() + ", expected " + dom.to_string());
        return f;
    }
    if (o.target.empty()) throw InputError("--target or --map is required");
    const FpModule cod = parse_module(o.target, o);
    if (o.matrix.empty()) throw InputError("--matrix is required with --target");
    return ModuleMap(dom, cod, parse_matrix(o.matrix, dom.modulus(), cod.rank(), dom.rank()));
}

Json request_json(const Options& o, const FpModule& x) {
    Json methods = Json::array();
    for (const auto& m : o.methods) methods.push_back(m);
    return Json{{"module", to_json(x)}, {"coefficients", coefficients_json(parse_coeff(o))}, {"methods", methods},
                {"degree", o.degree}};
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

FpModule need_x(const Options& o) {
    if (o.module.empty()) throw InputError("--module is required");
    return parse_module(o.module, o);
}

// --------------------------------------------------------------- commands

int cmd_homology(const Options& o) {
    const FpModule x = need_x(o);
    const HomologyRequest req{x, parse_coeff(o), single_method(o), o.degree};
    const FpModule h = homology(req);
    if (json_out(o)) emit(Json{{"request", request_json(o, x)}, {"value", value_json(h)}});
    else std::cout << h.to_string() << '\n';
    return kOk;
}

int cmd_tor(const Options& o) {
    const FpModule x = need_x(o);
    const Coefficients e = parse_coeff(o);
    const FpModule b = e.kind == Coefficients::Kind::Identity ? FpModule::free(x.modulus(), 1) : e.b;
    const FpModule t = tor_oracle(b, x, o.degree);
    if (json_out(o)) emit(Json{{"request", request_json(o, x)}, {"tor_index", o.degree}, {"value", value_json(t)}});
    else std::cout << t.to_string() << '\n';
    return kOk;
}

void print_report(const ComparisonReport& r, bool timing) {
    std::cout << "module " << r.x.to_string() << " over Z/" << r.x.modulus().value() << ", coefficients "
              << (r.e.kind == Coefficients::Kind::Identity ? std::string("identity") : r.e.b.to_string() + " (x) -")
              << '\n';
    std::vector<std::size_t> width;
    for (const auto& m : r.methods) width.push_back(std::max<std::size_t>(to_string(m).size(), 3) + 2);
    for (const auto& c : r.cells) {
        const std::size_t k = std::size_t(std::find(r.methods.begin(), r.methods.end(), c.method) - r.methods.begin());
        const std::size_t w = (c.value ? c.value->to_string().size() : 10) + 2;
        if (k < width.size()) width[k] = std::max(width[k], w);
    }
    std::cout << std::left << std::setw(8) << "degree";
    for (std::size_t k = 0; k < r.methods.size(); ++k) std::cout << std::setw(int(width[k])) << to_string(r.methods[k]);
    std::cout << "iso\n";
    for (int n = 1; n <= r.n_max; ++n) {
        std::cout << std::setw(8) << n;
        for (std::size_t k = 0; k < r.methods.size(); ++k) {
            std::string v = "?";
            for (const auto& c : r.cells)
                if (c.degree == n && c.method == r.methods[k]) {
                    v = c.value ? c.value->to_string() : "infeasible";
                    if (timing) v += " (" + std::to_string(std::llround(c.millis)) + " ms)";
                }
            std::cout << std::setw(int(width[k])) << v;
        }
        for (const auto& [d, iso] : r.isomorphic)
            if (d == n) std::cout << (iso ? "yes" : "NO");
        std::cout << '\n';
    }
    for (const auto& c : r.cells)
        if (!c.value) std::cout << "  " << to_string(c.method) << " degree " << c.degree << ": " << c.infeasible << '\n';
    for (const auto& p : r.pairs) {
        std::cout << to_string(p.a) << " vs " << to_string(p.b) << ": ";
        if (p.depth < 0) {
            std::cout << "no explicit maps (" << p.infeasible << ")\n";
            continue;
        }
        std::cout << "maps " << (p.extensions_ok ? "ok" : "FAILED") << ", homotopies "
                  << (p.homotopies_ok ? "ok" : "FAILED") << " at depth " << p.depth;
        for (const auto& [n, ok] : p.inverse_on_homology) std::cout << ", H_" << n << (ok ? " inverse" : " NOT inverse");
        std::cout << '\n';
    }
    std::cout << "verdict: " << (r.ok() ? "isomorphic" : "not isomorphic") << '\n';
}

int cmd_compare(const Options& o) {
    const FpModule x = need_x(o);
    auto methods = parse_methods(o);
    if (methods.empty()) throw InputError("at least one --method is needed");
    if (o.degree < 1) throw DegreeOutOfRange("--degree must be at least 1");
    const auto r = compare_methods(x, parse_coeff(o), methods, o.degree, !o.no_maps);
    if (json_out(o)) emit(report_json(r, o.timing));
    else print_report(r, o.timing);
    if (!r.ok()) return kFailed;
    for (const auto& c : r.cells)
        if (!c.value) return kInfeasible;
    return kOk;
}

int cmd_naturality(const Options& o) {
    const FpModule x = need_x(o);
    const auto ms = parse_methods(o);
    if (ms.size() != 2) throw InputError("naturality needs exactly two --method");
    bool ok = false;
    Json detail;
    if (o.variable == "first") {
        const ModuleMap f = parse_map(o, x);
        ok = naturality_check(f, parse_coeff(o), ms[0], ms[1], o.degree);
        detail = to_json(f);
    } else {
        const Coefficients e = parse_coeff(o);
        if (e.kind != Coefficients::Kind::TensorWith)
            throw InputError("--variable second needs --coeff tensor:<B> as the source of alpha");
        const ModuleMap alpha = parse_map(o, e.b);
        ok = naturality_in_coefficients(alpha, x, ms[0], ms[1], o.degree);
        detail = to_json(alpha);
    }
    if (json_out(o))
        emit(Json{{"request", request_json(o, x)}, {"variable", o.variable}, {"map", detail}, {"natural", ok}});
    else
        std::cout << (ok ? "natural" : "NOT natural") << '\n';
    return ok ? kOk : kFailed;
}

int cmd_verify(const Options& o) {
    if (!o.input.empty()) {
        AugSimplicialObject a;
        try {
            a = simplicial_from_json(read_json_file(o.input), Validation::Full);
        } catch (const ConstraintViolation& e) {
            throw InputError(o.input + ": " + e.what());
        }
        if (a.augmented()) a = a.without_augmentation();
        const auto r = verify_homotopy_invariance(a, o.seed, o.degree);
        if (json_out(o)) {
            emit(Json{{"input", o.input}, {"seed", o.seed}, {"n_max", o.degree}, {"invariance", invariance_json(r)}});
        } else {
            std::cout << "cocylinder simplicial: " << (r.cocylinder_simplicial ? "yes" : "NO") << '\n'
                      << "sections: " << (r.sections ? "yes" : "NO") << '\n';
            for (std::size_t n = 0; n < r.eps_iso.size(); ++n)
                std::cout << "H_" << n << " eps0 = eps1 iso: " << (r.eps_iso[n] ? "yes" : "NO") << '\n';
            for (std::size_t n = 0; n < r.regular_pushout.size(); ++n)
                std::cout << "regular pushout at " << n << ": " << (r.regular_pushout[n] ? "yes" : "NO") << '\n';
            std::cout << "homotopy samples: " << r.samples_ok << "/" << r.samples << '\n';
        }
        return r.ok() ? kOk : kFailed;
    }
    if (o.scale < 1) throw InputError("--scale must be positive");
    Progress progress;
    if (o.progress)
        progress = [](const std::string& s, int done, int total) {
            std::cerr << "\r" << s << " " << done << "/" << total << std::flush;
            if (done == total) std::cerr << '\n';
        };
    const auto results = run_property_suites(o.seed, o.scale, progress);
    bool ok = true;
    for (const auto& r : results) ok &= r.ok();
    if (json_out(o)) {
        emit(Json{{"seed", o.seed}, {"scale", o.scale}, {"suite_results", suites_json(results, o.timing)}, {"ok", ok}});
    } else {
        for (const auto& r : results) {
            std::cout << std::left << std::setw(30) << r.name << r.passed << "/" << r.total;
            if (o.timing) std::cout << "  " << std::llround(r.millis) << " ms";
            std::cout << (r.ok() ? "" : "  FAILED") << '\n';
        }
        std::cout << (ok ? "all suites passed" : "some suites FAILED") << '\n';
    }
    return ok ? kOk : kFailed;
}

int cmd_resolve(const Options& o) {
    const FpModule x = need_x(o);
    const Method m = single_method(o);
    if (o.degree < 0) throw DegreeOutOfRange("--degree must be non-negative");
    const Resolution r = resolve(x, m, o.degree);
    const Json j{{"module", to_json(x)}, {"method", to_string(m)}, {"depth", o.degree}, {"resolution", to_json(r.object)}};
    if (!o.output.empty()) {
        std::ofstream out(o.output);
        if (!out) throw InputError("cannot write " + o.output);
        out << j["resolution"].dump(2) << '\n';
    }
    if (json_out(o) || o.output.empty()) {
        emit(j);
    } else {
        for (int n = r.object.bottom(); n <= r.object.top(); ++n)
            std::cout << "A_" << n << " = " << r.object.object(n).to_string() << '\n';
    }
    return kOk;
}

int report_error(const Options& o, const char* kind, const std::string& msg, int code, int level = -2) {
    if (json_out(o)) {
        Json err{{"kind", kind}, {"message", msg}};
        if (level != -2) err["level"] = level;
        emit(Json{{"error", err}, {"exit_code", code}});
    } else {
        std::cerr << "error: " << msg << '\n';
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Comonadic homology of modules over Z/m"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* s) {
        s->add_option("--modulus", o.modulus, "the ring Z/m");
        s->add_option("--module", o.module, "factor list like 2,4 or a module JSON file");
        s->add_option("--coeff", o.coeff, "id or tensor:<module>")->capture_default_str();
        s->add_option("--method", o.methods, "set-free|pointed-free|tv-min|tv-set|tv-pointed|oracle");
        s->add_option("--degree", o.degree, "homological degree (Tor index for tor, depth for resolve)")
            ->capture_default_str();
        s->add_option("--max-enumeration", o.max_enum, "element enumeration guard (RESOLVENT_MAX_ENUM)");
        s->add_option("--format", o.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        s->add_flag("--timing", o.timing, "include wall-clock timings");
    };

    std::vector<std::pair<CLI::App*, int (*)(const Options&)>> cmds;
    auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s);
        cmds.emplace_back(s, fn);
        return s;
    };
    add("homology", "H_n(X, E) by one method", cmd_homology);
    add("tor", "Tor_n(B, X) from a free resolution", cmd_tor);
    add("compare", "compare methods degree by degree", cmd_compare)
        ->add_flag("--no-maps", o.no_maps, "skip explicit comparison maps");
    auto* nat = add("naturality", "naturality square for a map", cmd_naturality);
    nat->add_option("--target", o.target, "codomain module (factor list or JSON)");
    nat->add_option("--matrix", o.matrix, "row-major matrix, rows separated by ';' or '|'");
    nat->add_option("--map", o.map_file, "map JSON file");
    nat->add_option("--variable", o.variable, "first (module) or second (coefficients)")
        ->check(CLI::IsMember({"first", "second"}))
        ->capture_default_str();
    auto* ver = add("verify", "property suites, or homotopy invariance of --input", cmd_verify);
    ver->add_option("--seed", o.seed, "suite seed")->capture_default_str();
    ver->add_option("--scale", o.scale, "multiply case counts")->capture_default_str();
    ver->add_option("--input", o.input, "simplicial object JSON file");
    ver->add_flag("--progress", o.progress, "progress on stderr");
    add("resolve", "emit a resolution as JSON", cmd_resolve)->add_option("--output", o.output, "also write the object here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        // --format may sit after the bad token
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--format") o.format = argv[i + 1];
        return report_error(o, "UsageError", e.what(), kBadInput);
    }

    if (o.max_enum) setenv("RESOLVENT_MAX_ENUM", std::to_string(o.max_enum).c_str(), 1);

    try {
        for (auto& [s, fn] : cmds)
            if (s->parsed()) return fn(o);
        return kBadInput;
    } catch (const EnumerationTooLarge& e) {
        return report_error(o, e.kind(), e.what(), kInfeasible, e.level());
    } catch (const std::bad_alloc&) {
        return report_error(o, "OutOfMemory", "out of memory", kInfeasible);
    } catch (const InputError& e) {
        return report_error(o, e.kind(), e.what(), kBadInput);
    } catch (const Error& e) {
        return report_error(o, e.kind(), e.what(), kFailed);
    } catch (const std::exception& e) {
        return report_error(o, "InternalError", e.what(), kFailed);
    }
}
