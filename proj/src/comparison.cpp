#include "resolvent/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <string>

#include "resolvent/error.hpp"
#include "resolvent/random.hpp"

namespace resolvent {

ContractionProvider comonadic_contractions(const ComonadicResolution& res) {
    return [res](const FpModule& p) { return hom_contraction(p, res); };
}

// ------------------------------------------------------ lifting and maps

ModuleMap lift_through_faces(const AugSimplicialObject& a, const HomContraction& c, const std::vector<ModuleMap>& faces) {
    if (faces.empty()) throw InputError("lift_through_faces needs at least one map");
    const int n = int(faces.size()) - 1;
    if (!a.has_level(n - 1) || n - 1 < a.bottom()) throw DegreeOutOfRange("lift_through_faces: no level " + std::to_string(n - 1));
    if (!a.has_level(n + 1))
        throw TruncationTooShallow("lifting to level " + std::to_string(n) + " needs level " + std::to_string(n + 1));
    for (const auto& f : faces)
        if (!(f.dom() == c.p) || !(f.cod() == a.object(n - 1))) throw DimensionMismatch("lift_through_faces: map is not P -> A_{n-1}");
    for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
            if (!(a.face(n - 1, i) * faces[j] == a.face(n - 1, j - 1) * faces[i]))
                throw IncompatibleFamily("d_" + std::to_string(i) + " a_" + std::to_string(j) + " != d_" +
                                         std::to_string(j - 1) + " a_" + std::to_string(i));
    // b_{i+1} = h_{n-1}(a_i) is an (n+1, 0)-horn; a is d_0 of a filler.
    Horn horn{n + 1, 0, {std::nullopt}};
    for (const auto& f : faces) horn.faces.emplace_back(c.h(n - 1, f));
    const ModuleMap w = fill_horn(HomView(a, c.p), horn);
    return a.face(n + 1, 0) * w;
}

SemiSimplicialMap extend_map(const ResolutionPair& pair, const ModuleMap& f, int depth) {
    const auto& p = pair.p;
    const auto& a = pair.a;
    if (!p.augmented() || !a.augmented()) throw InputError("extend_map needs augmented objects");
    if (!(f.dom() == p.object(-1)) || !(f.cod() == a.object(-1))) throw DimensionMismatch("extend_map: f is not X -> Y");
    if (p.top() < depth) throw TruncationTooShallow("source stops below level " + std::to_string(depth));
    SemiSimplicialMap out{p, a, -1, {f}};
    for (int n = 0; n <= depth; ++n) {
        const HomContraction hc = pair.contraction(p.object(n));
        std::vector<ModuleMap> fam;
        for (int i = 0; i <= n; ++i) fam.push_back(out.at(n - 1) * p.face(n, i));
        out.components.push_back(lift_through_faces(a, hc, fam));
    }
    return out;
}

Homotopy build_homotopy(const ResolutionPair& pair, const SemiSimplicialMap& f, const SemiSimplicialMap& g, int depth) {
    const auto& p = pair.p;
    const auto& a = pair.a;
    if (f.lo <= -1 && g.lo <= -1 && !(f.at(-1) == g.at(-1))) throw InputError("build_homotopy: maps lie over different bases");
    if (f.top() < depth || g.top() < depth) throw TruncationTooShallow("build_homotopy: maps stop below the depth");
    if (a.top() < depth + 2) throw TruncationTooShallow("build_homotopy needs the target to level " + std::to_string(depth + 2));
    Homotopy out{f, g, {}};
    for (int n = 0; n <= depth; ++n) {
        const FpModule& pn = p.object(n);
        const HomContraction hc = pair.contraction(pn);
        const HomView hv(a, pn);
        if (n == 0) {
            out.h.push_back({lift_through_faces(a, hc, {f.at(0), g.at(0)})});
            continue;
        }
        const auto& prev = out.h[std::size_t(n - 1)];
        std::vector<ModuleMap> hn;
        // l = 0: an (n+1, 1)-horn with a^0_0 = f_n and a^0_i = h^{n-1}_0 d_{i-1}.
        Horn horn{n + 1, 1, {f.at(n), std::nullopt}};
        for (int i = 2; i <= n + 1; ++i) horn.faces.emplace_back(prev[0] * p.face(n, i - 1));
        hn.push_back(fill_horn(hv, horn));
        ModuleMap carry = a.face(n + 1, 1) * hn.back();
        for (int l = 1; l < n; ++l) {
            Horn hl{n + 1, l + 1, {}};
            for (int i = 0; i <= n + 1; ++i) {
                if (i < l)
                    hl.faces.emplace_back(prev[std::size_t(l - 1)] * p.face(n, i));
                else if (i == l)
                    hl.faces.emplace_back(carry);
                else if (i == l + 1)
                    hl.faces.emplace_back(std::nullopt);
                else
                    hl.faces.emplace_back(prev[std::size_t(l)] * p.face(n, i - 1));
            }
            hn.push_back(fill_horn(hv, hl));
            carry = a.face(n + 1, l + 1) * hn.back();
        }
        // l = n: every face is known, so the lemma applies again.
        std::vector<ModuleMap> fam;
        for (int i = 0; i < n; ++i) fam.push_back(prev[std::size_t(n - 1)] * p.face(n, i));
        fam.push_back(carry);
        fam.push_back(g.at(n));
        hn.push_back(lift_through_faces(a, hc, fam));
        out.h.push_back(std::move(hn));
    }
    return out;
}

Vector apply_g_power(const ComonadicResolution& res, const ModuleMap& phi, int l, int j, const Vector& x) {
    if (j == 0) return phi.apply(x);
    const FreeWithBasis& b = res.bases.at(std::size_t(l + j));
    const Modulus m = b.carrier().modulus();
    Vector out(b.rank(), 0);
    for (std::size_t c = 0; c < x.size(); ++c) {
        if (x[c] == 0) continue;
        if (const auto idx = b.index_of(apply_g_power(res, phi, l, j - 1, b.label(c)))) out[*idx] = m.add(out[*idx], x[c]);
    }
    return out;
}

Homotopy self_homotopy_fast(const ComonadicResolution& res, const SemiSimplicialMap& f) {
    const auto& a = res.object;
    if (f.lo <= -1 && !(f.at(-1) == ModuleMap::identity(a.object(-1))))
        throw InputError("self_homotopy_fast: map does not lie over the identity");
    const int depth = std::min(f.top(), a.top() - 1);
    Homotopy out{f, identity_map(a, depth), {}};
    for (int n = 0; n <= depth; ++n) {
        std::vector<ModuleMap> hn;
        for (int i = 0; i <= n; ++i) {
            const ResidueMatrix& sigma = a.degeneracy(n, i).matrix();
            std::vector<Vector> cols;
            for (std::size_t c = 0; c < sigma.cols(); ++c)
                cols.push_back(apply_g_power(res, f.at(n - i), n - i, i + 1, sigma.column(c)));
            hn.emplace_back(a.object(n), a.object(n + 1), ResidueMatrix::from_columns(a.modulus(), sigma.rows(), cols));
        }
        out.h.push_back(std::move(hn));
    }
    return out;
}

// ---------------------------------------------------------- Tierney-Vogel

std::string_view to_string(PresentationStrategy s) {
    switch (s) {
        case PresentationStrategy::SetBased: return "SetBased";
        case PresentationStrategy::PointedBased: return "PointedBased";
        case PresentationStrategy::Minimal: return "Minimal";
    }
    return "?";
}

std::optional<PresentationStrategy> parse_strategy(std::string_view s) {
    std::string t(s);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (t == "set" || t == "setbased") return PresentationStrategy::SetBased;
    if (t == "pointed" || t == "pointedbased") return PresentationStrategy::PointedBased;
    if (t == "minimal") return PresentationStrategy::Minimal;
    return std::nullopt;
}

Presentation present(const FpModule& m, PresentationStrategy s) {
    switch (s) {
        case PresentationStrategy::SetBased:
        case PresentationStrategy::PointedBased: {
            const ComonadKind k = s == PresentationStrategy::SetBased ? ComonadKind::SetFree : ComonadKind::PointedFree;
            const FreeWithBasis g(k, m);
            return {g.carrier(), counit(k, m), [g](const Vector& y) { return g.unit_of(y); }};
        }
        case PresentationStrategy::Minimal: {
            // The invariant-factor generators: no module needs fewer, and
            // nothing is enumerated.
            const FpModule free = FpModule::free(m.modulus(), m.rank());
            return {free, ModuleMap(free, m, ResidueMatrix::identity(m.modulus(), m.rank())),
                    [](const Vector& y) { return y; }};
        }
    }
    throw InputError("unknown presentation strategy");
}

namespace {

// Column-wise lift of g : P -> cod(cover) through cover.
ModuleMap lift_columns(const ModuleMap& cover, const ModuleMap& g, const std::function<std::optional<Vector>(const Vector&)>& lift) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < g.dom().rank(); ++j) {
        auto x = lift(g.matrix().column(j));
        if (!x) throw VerificationError("lift: comparison map is not onto");
        cols.push_back(cover.dom().reduce(*x));
    }
    return ModuleMap(g.dom(), cover.dom(), ResidueMatrix::from_columns(g.dom().modulus(), cover.dom().rank(), cols));
}

}  // namespace

TvResolution tv_resolution(const FpModule& x, PresentationStrategy s, int depth) {
    if (depth < 0) throw DegreeOutOfRange("tv_resolution: negative depth");
    TvResolution r;
    r.strategy = s;
    std::vector<AugSimplicialObject::Level> levels(std::size_t(depth + 2));
    levels[0].object = x;
    {
        Presentation p0 = present(x, s);
        levels[1].object = p0.free;
        levels[1].faces = {p0.cover};
        r.kernels.emplace_back();
        r.comparisons.push_back(p0.cover);
        r.sections.push_back(p0.section);
    }
    for (int n = 1; n <= depth; ++n) {
        // K_n receives A_{n-1} injectively (x to the faces of s_0 x), so an
        // element-based presentation of K_n is hopeless once A_{n-1} is past
        // the guard; stop before building the kernel.
        if (s != PresentationStrategy::Minimal) {
            const FpModule& below = levels[std::size_t(n)].object;
            const auto size = below.size();
            if (!size || *size > default_enumeration_guard())
                throw EnumerationTooLarge("TV level " + std::to_string(n) + ": the simplicial kernel has at least 2^" +
                                              std::to_string(std::llround(below.log2_size())) + " elements",
                                          n);
        }
        SimplicialKernel k = simplicial_kernel(levels[std::size_t(n)].faces);
        Presentation pn;
        try {
            pn = present(k.object, s);
        } catch (const EnumerationTooLarge& e) {
            throw EnumerationTooLarge("TV level " + std::to_string(n) + ": " + e.what(), n);
        }
        auto& lv = levels[std::size_t(n + 1)];
        lv.object = pn.free;
        for (const auto& pr : k.projections) lv.faces.push_back(pr * pn.cover);
        r.comparisons.push_back(pn.cover);
        r.sections.push_back(pn.section);
        r.kernels.push_back(std::move(k));
    }
    // s_i at level n: the legs d_j s_i forced by the identities, lifted
    // through the comparison map of level n+1.
    for (int n = 0; n < depth; ++n) {
        const auto& lv = levels[std::size_t(n + 1)];
        const ModuleMap id = ModuleMap::identity(lv.object);
        std::vector<ModuleMap> sig;
        for (int i = 0; i <= n; ++i) {
            std::vector<ModuleMap> legs;
            for (int j = 0; j <= n + 1; ++j) {
                if (j == i || j == i + 1)
                    legs.push_back(id);
                else if (j < i)
                    legs.push_back(levels[std::size_t(n)].degeneracies[std::size_t(i - 1)] * lv.faces[std::size_t(j)]);
                else
                    legs.push_back(levels[std::size_t(n)].degeneracies[std::size_t(i)] * lv.faces[std::size_t(j - 1)]);
            }
            const ModuleMap t = into_simplicial_kernel(r.kernels[std::size_t(n + 1)], legs);
            const Section& sec = r.sections[std::size_t(n + 1)];
            sig.push_back(lift_columns(r.comparisons[std::size_t(n + 1)], t, [&](const Vector& y) { return std::optional(sec(y)); }));
        }
        levels[std::size_t(n + 1)].degeneracies = std::move(sig);
    }
    r.object = AugSimplicialObject(true, std::move(levels), Validation::FacesOnly);
    return r;
}

namespace {

// Simplicial kernels of a P-exact object with solvers for its comparison
// maps, shared by every contraction handed out.
struct ExactnessData {
    AugSimplicialObject a;
    std::vector<SimplicialKernel> kernels;  // kernels[n] for n >= 1
    std::vector<ModuleMap> comparisons;     // A_n -> K_n, comparisons[0] = augmentation
    std::vector<std::function<std::optional<Vector>(const Vector&)>> lifts;
    bool twisted = false;
    std::vector<ModuleMap> twists;  // K_n -> A_n landing in ker(comparison)
};

// Without sections the comparison maps are inverted by a solver.
std::shared_ptr<ExactnessData> exactness_data(const AugSimplicialObject& a, std::vector<SimplicialKernel> kernels,
                                              std::vector<ModuleMap> comparisons, const std::vector<Section>* sections,
                                              std::uint64_t seed) {
    auto d = std::make_shared<ExactnessData>();
    d->a = a;
    d->kernels = std::move(kernels);
    d->comparisons = std::move(comparisons);
    d->twisted = seed != 0;
    Rng rng(seed);
    for (std::size_t n = 0; n < d->comparisons.size(); ++n) {
        const ModuleMap& c = d->comparisons[n];
        if (sections) {
            d->lifts.push_back([sec = (*sections)[n]](const Vector& y) { return std::optional(sec(y)); });
        } else {
            auto solver = std::make_shared<PreimageSolver>(c);
            d->lifts.push_back([solver](const Vector& y) { return (*solver)(y); });
        }
        if (d->twisted) {
            const Subobject k = kernel(c);
            d->twists.push_back(k.embedding * random_map(rng, c.cod(), k.object()));
        }
    }
    return d;
}

ContractionProvider provider(std::shared_ptr<const ExactnessData> d) {
    return [d](const FpModule& p) {
        if (!p.is_free()) throw InputError("contraction needs a free module");
        // Fixed lift of each generator's image, plus the optional twist.
        auto lift = [d](int level, const ModuleMap& g) {
            const auto& base = d->lifts[std::size_t(level)];
            if (!d->twisted) return lift_columns(d->comparisons[std::size_t(level)], g, base);
            const ModuleMap& tw = d->twists[std::size_t(level)];
            return lift_columns(d->comparisons[std::size_t(level)], g, [&](const Vector& y) -> std::optional<Vector> {
                auto x = base(y);
                if (!x) return x;
                const Vector t = tw.apply(y);
                for (std::size_t r = 0; r < x->size(); ++r) (*x)[r] += t[r];
                return x;
            });
        };
        using Fn = std::function<ModuleMap(int, const ModuleMap&)>;
        auto h = std::make_shared<Fn>();
        std::weak_ptr<Fn> self = h;
        *h = [d, lift, self](int n, const ModuleMap& f) -> ModuleMap {
            if (n < -1 || n + 1 > d->a.top()) throw DegreeOutOfRange("contraction level out of range");
            if (n == -1) return lift(0, f);
            const auto rec = self.lock();
            std::vector<ModuleMap> legs{f};
            for (int i = 0; i <= n; ++i) legs.push_back((*rec)(n - 1, d->a.face(n, i) * f));
            return lift(n + 1, into_simplicial_kernel(d->kernels[std::size_t(n + 1)], legs));
        };
        return HomContraction{p, [h](int n, const ModuleMap& f) { return (*h)(n, f); }};
    };
}

}  // namespace

ContractionProvider tv_contractions(const TvResolution& r, std::uint64_t seed) {
    return provider(exactness_data(r.object, r.kernels, r.comparisons, &r.sections, seed));
}

ContractionProvider solver_contractions(const AugSimplicialObject& a, std::uint64_t seed) {
    if (!a.augmented()) throw InputError("contractions need an augmented object");
    std::vector<SimplicialKernel> kernels{SimplicialKernel{}};
    std::vector<ModuleMap> comparisons{a.augmentation()};
    for (int n = 1; n <= a.top(); ++n) {
        kernels.push_back(simplicial_kernel(a.faces(n - 1)));
        comparisons.push_back(into_simplicial_kernel(kernels.back(), a.faces(n)));
    }
    return provider(exactness_data(a, std::move(kernels), std::move(comparisons), nullptr, seed));
}

// ------------------------------------------------------------ P-exactness

bool PExactness::all() const { return std::all_of(levels.begin(), levels.end(), [](bool b) { return b; }); }

PExactness p_exactness_report(const AugSimplicialObject& a) {
    if (!a.augmented()) throw InputError("P-exactness needs an augmented object");
    PExactness out;
    out.levels.push_back(is_p_epi(ComonadKind::SetFree, a.augmentation()));
    for (int n = 0; n < a.top(); ++n) {
        const SimplicialKernel k = simplicial_kernel(a.faces(n));
        out.levels.push_back(is_p_epi(ComonadKind::SetFree, into_simplicial_kernel(k, a.faces(n + 1))));
    }
    return out;
}

bool p_exactness_check(const AugSimplicialObject& a) { return p_exactness_report(a).all(); }

}  // namespace resolvent
