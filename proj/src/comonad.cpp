#include "resolvent/comonad.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "resolvent/error.hpp"

namespace resolvent {

std::string_view to_string(ComonadKind k) { return k == ComonadKind::SetFree ? "SetFree" : "PointedFree"; }

std::optional<ComonadKind> parse_comonad_kind(std::string_view s) {
    std::string t(s);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (t == "set" || t == "setfree" || t == "set-free") return ComonadKind::SetFree;
    if (t == "pointed" || t == "pointedfree" || t == "pointed-free") return ComonadKind::PointedFree;
    return std::nullopt;
}

// -------------------------------------------------------- FreeWithBasis

FreeWithBasis::FreeWithBasis(ComonadKind k, FpModule under, std::uint64_t guard) : kind_(k), under_(std::move(under)) {
    const auto size = under_.size();
    if (!size || *size > guard) {
        const std::string what = under_.rank() <= 6 ? under_.to_string()
                                                    : "a rank " + std::to_string(under_.rank()) + " module of 2^" +
                                                          std::to_string(std::llround(under_.log2_size())) + " elements";
        throw EnumerationTooLarge("G(" + what + ") needs more than " + std::to_string(guard) + " basis labels");
    }
    carrier_ = FpModule::free(under_.modulus(), k == ComonadKind::SetFree ? *size : *size - 1);
}

Vector FreeWithBasis::label(std::size_t j) const {
    if (j >= rank()) throw DegreeOutOfRange("basis label index out of range");
    return element_at(under_, kind_ == ComonadKind::SetFree ? j : j + 1);
}

std::optional<std::size_t> FreeWithBasis::index_of(const Vector& x) const {
    const std::uint64_t i = element_index(under_, x);
    if (kind_ == ComonadKind::SetFree) return i;
    if (i == 0) return std::nullopt;
    return i - 1;
}

Vector FreeWithBasis::unit_of(const Vector& x) const {
    Vector e(rank(), 0);
    if (const auto i = index_of(x)) e[*i] = 1;
    return e;
}

std::vector<Vector> FreeWithBasis::labels() const {
    std::vector<Vector> out;
    out.reserve(rank());
    for (std::size_t j = 0; j < rank(); ++j) out.push_back(label(j));
    return out;
}

// ------------------------------------------------------------ functor G

namespace {

Vector basis_vector(std::size_t rank, std::size_t j) {
    Vector e(rank, 0);
    e[j] = 1;
    return e;
}

// Matrix whose column j is the unit vector at index cols[j] (none: zero column).
ResidueMatrix label_matrix(Modulus m, std::size_t rows, const std::vector<std::optional<std::size_t>>& cols) {
    ResidueMatrix a(m, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        if (cols[j]) a.set(*cols[j], j, 1);
    return a;
}

// Matrix whose columns are the labels themselves.
ResidueMatrix evaluation_matrix(const FreeWithBasis& g) {
    ResidueMatrix a(g.underlying().modulus(), g.underlying().rank(), g.rank());
    for (std::size_t j = 0; j < g.rank(); ++j) {
        const Vector b = g.label(j);
        for (std::size_t r = 0; r < b.size(); ++r)
            if (b[r]) a.set(r, j, b[r]);
    }
    return a;
}

void check_same_kind(const FreeWithBasis& a, const FreeWithBasis& b) {
    if (a.kind() != b.kind()) throw InputError("bases come from different comonads");
}

}  // namespace

FreeWithBasis g_object(ComonadKind k, const FpModule& m) { return FreeWithBasis(k, m); }

ModuleMap g_morphism(const ModuleMap& f, const FreeWithBasis& dom, const FreeWithBasis& cod) {
    check_same_kind(dom, cod);
    if (!(f.dom() == dom.underlying()) || !(f.cod() == cod.underlying()))
        throw DimensionMismatch("g_morphism: bases do not match the map");
    std::vector<std::optional<std::size_t>> cols(dom.rank());
    for (std::size_t j = 0; j < dom.rank(); ++j) cols[j] = cod.index_of(f.apply(dom.label(j)));
    return ModuleMap(dom.carrier(), cod.carrier(), label_matrix(f.dom().modulus(), cod.rank(), cols));
}

ModuleMap g_morphism(ComonadKind k, const ModuleMap& f) {
    return g_morphism(f, FreeWithBasis(k, f.dom()), FreeWithBasis(k, f.cod()));
}

ModuleMap counit(ComonadKind k, const FpModule& m) {
    const FreeWithBasis g(k, m);
    return ModuleMap(g.carrier(), m, evaluation_matrix(g));
}

ModuleMap comult(ComonadKind k, const FpModule& m) {
    const FreeWithBasis g(k, m);
    const FreeWithBasis gg(k, g.carrier());
    std::vector<std::optional<std::size_t>> cols(g.rank());
    for (std::size_t j = 0; j < g.rank(); ++j) cols[j] = gg.index_of(basis_vector(g.rank(), j));
    return ModuleMap(g.carrier(), gg.carrier(), label_matrix(m.modulus(), gg.rank(), cols));
}

// --------------------------------------------------------- comonad stack

ComonadStack comonad_stack(ComonadKind k, const FpModule& x, int depth) {
    if (depth < 0) throw DegreeOutOfRange("comonad_stack: negative depth");
    ComonadStack s{k, x, {}, {}, {}};
    FpModule below = x;
    for (int n = 0; n <= depth; ++n) {
        s.levels.emplace_back(k, below);
        s.counits.push_back(counit(k, below));
        below = s.levels.back().carrier();
    }
    for (int n = 0; n < depth; ++n) {
        const FpModule& gn = n == 0 ? x : s.levels[n - 1].carrier();
        s.comults.push_back(comult(k, gn));
    }
    return s;
}

bool comonad_laws_hold(const ComonadStack& s) {
    const int depth = int(s.levels.size()) - 1;
    for (int n = 0; n < depth; ++n) {
        const ModuleMap id = ModuleMap::identity(s.levels[n].carrier());
        const ModuleMap& d = s.comults[n];
        // epsilon_G delta = 1
        if (!(s.counits[n + 1] * d == id)) return false;
        // G(epsilon) delta = 1
        const ModuleMap g_eps = g_morphism(s.counits[n], s.levels[n + 1], s.levels[n]);
        if (!(g_eps * d == id)) return false;
        if (n + 1 < depth) {
            // G(delta) delta = delta_G delta
            const ModuleMap g_delta = g_morphism(d, s.levels[n + 1], s.levels[n + 2]);
            if (!(g_delta * d == s.comults[n + 1] * d)) return false;
        }
    }
    return true;
}

// ------------------------------------------------------------ resolution

ComonadicResolution comonadic_resolution(ComonadKind k, const FpModule& x, int depth, Validation v) {
    if (depth < 0) throw DegreeOutOfRange("comonadic_resolution: negative depth");
    const Modulus m = x.modulus();
    const std::uint64_t guard = default_enumeration_guard();

    // bases[n] spans A_n and is labelled by A_{n-1}; building it only
    // sizes A_{n-1}, whose elements are later walked for the faces of A_n.
    std::vector<FreeWithBasis> bases;
    FpModule below = x;
    for (int n = 0; n <= depth; ++n) {
        try {
            bases.emplace_back(k, below, guard);
        } catch (const EnumerationTooLarge& e) {
            throw EnumerationTooLarge("resolution level " + std::to_string(n - 1) + ": " + e.what(), n - 1);
        }
        below = bases.back().carrier();
    }
    auto obj = [&](int n) -> const FpModule& { return n < 0 ? x : bases[n].carrier(); };

    std::vector<AugSimplicialObject::Level> levels(depth + 2);
    levels[0].object = x;
    for (int n = 0; n <= depth; ++n) {
        auto& lv = levels[n + 1];
        lv.object = obj(n);
        const FreeWithBasis& bn = bases[n];
        std::vector<Vector> labels = bn.labels();
        // d_0 = epsilon_{A_{n-1}}
        lv.faces.emplace_back(obj(n), obj(n - 1), evaluation_matrix(bn));
        // d_i = G(d_{i-1}) for i >= 1
        for (int i = 1; i <= n; ++i) {
            const ModuleMap& prev = levels[n].faces[i - 1];
            std::vector<std::optional<std::size_t>> cols(bn.rank());
            for (std::size_t j = 0; j < bn.rank(); ++j) cols[j] = bases[n - 1].index_of(prev.apply(labels[j]));
            lv.faces.emplace_back(obj(n), obj(n - 1), label_matrix(m, obj(n - 1).rank(), cols));
        }
    }
    for (int n = 0; n < depth; ++n) {
        auto& lv = levels[n + 1];
        const FreeWithBasis& bn = bases[n];
        const FreeWithBasis& up = bases[n + 1];
        // s_0 = delta_{A_{n-1}}
        std::vector<std::optional<std::size_t>> cols(bn.rank());
        for (std::size_t j = 0; j < bn.rank(); ++j) cols[j] = up.index_of(basis_vector(bn.rank(), j));
        lv.degeneracies.emplace_back(obj(n), obj(n + 1), label_matrix(m, up.rank(), cols));
        // s_i = G(s_{i-1}) for i >= 1
        if (n >= 1) {
            const std::vector<Vector> labels = bn.labels();
            for (int i = 1; i <= n; ++i) {
                const ModuleMap& prev = levels[n].degeneracies[i - 1];
                for (std::size_t j = 0; j < bn.rank(); ++j) cols[j] = up.index_of(prev.apply(labels[j]));
                lv.degeneracies.emplace_back(obj(n), obj(n + 1), label_matrix(m, up.rank(), cols));
            }
        }
    }
    return {k, AugSimplicialObject(true, std::move(levels), v), std::move(bases)};
}

ModuleMap canonical_splitting(ComonadKind k, const FpModule& p) {
    if (!p.is_free()) throw InputError("canonical_splitting needs a free module");
    const FreeWithBasis g(k, p);
    std::vector<std::optional<std::size_t>> cols(p.rank());
    for (std::size_t j = 0; j < p.rank(); ++j) cols[j] = g.index_of(basis_vector(p.rank(), j));
    return ModuleMap(p, g.carrier(), label_matrix(p.modulus(), g.rank(), cols));
}

HomContraction hom_contraction(const FpModule& p, const ComonadicResolution& res) {
    if (!p.is_free()) throw InputError("hom_contraction needs a free module");
    // G(f) s sends generator e_b to the label of f(e_b); P itself is never
    // enumerated.
    auto h = [p, res](int n, const ModuleMap& f) {
        if (n < -1 || n + 1 > res.depth()) throw DegreeOutOfRange("contraction level out of range");
        if (!(f.dom() == p) || !(f.cod() == res.object.object(n)))
            throw DimensionMismatch("contraction: map is not P -> A_n");
        const FreeWithBasis& up = res.bases[n + 1];
        std::vector<std::optional<std::size_t>> cols(p.rank());
        for (std::size_t b = 0; b < p.rank(); ++b) cols[b] = up.index_of(f.matrix().column(b));
        return ModuleMap(p, up.carrier(), label_matrix(p.modulus(), up.rank(), cols));
    };
    return {p, h};
}

bool is_p_epi(ComonadKind k, const ModuleMap& f) {
    // f is a P-epi iff the counit of its codomain lifts through it, i.e. U(f)
    // splits. For large codomains fall back to plain surjectivity, which is
    // the same class.
    const auto size = f.cod().size();
    if (!size || *size > kPEpiLiftLimit) return is_surjective(f);
    return lift_through(f, counit(k, f.cod())).has_value();
}

// ---------------------------------------------------------- coefficients

FpModule Coefficients::on_object(const FpModule& m) const {
    return kind == Kind::Identity ? m : tensor(b, m);
}

ModuleMap Coefficients::on_map(const ModuleMap& f) const {
    return kind == Kind::Identity ? f : tensor_map(b, f);
}

AugSimplicialObject apply_coefficients(const Coefficients& e, const AugSimplicialObject& a, Validation v) {
    if (e.kind == Coefficients::Kind::Identity) return a;
    return a.map_levels([&](const FpModule& m) { return e.on_object(m); },
                        [&](const ModuleMap& f) { return e.on_map(f); }, v);
}

}  // namespace resolvent
