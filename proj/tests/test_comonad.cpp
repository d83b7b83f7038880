#include <cstdlib>

#include "doctest.h"
#include "oracle.hpp"
#include "resolvent/comonad.hpp"
#include "resolvent/error.hpp"
#include "resolvent/random.hpp"

using namespace resolvent;

namespace {

const Modulus m2(2), m4(4);
constexpr ComonadKind kSet = ComonadKind::SetFree, kPointed = ComonadKind::PointedFree;

FpModule mod(Modulus m, std::vector<Residue> f) { return FpModule(m, std::move(f)); }

// All canonical modules over Z/m with at most max_size elements.
std::vector<FpModule> small_modules(Modulus m, std::uint64_t max_size) {
    std::vector<Residue> divs;
    for (Residue d = 2; d <= m.value(); ++d)
        if (m.value() % d == 0) divs.push_back(d);
    std::vector<FpModule> out{FpModule::zero(m)};
    std::vector<std::vector<Residue>> frontier{{}};
    while (!frontier.empty()) {
        std::vector<std::vector<Residue>> next;
        for (const auto& f : frontier)
            for (Residue d : divs) {
                if (!f.empty() && d % f.back() != 0) continue;
                std::uint64_t size = d;
                for (Residue e : f) size *= e;
                if (size > max_size) continue;
                auto g = f;
                g.push_back(d);
                out.push_back(mod(m, g));
                next.push_back(g);
            }
        frontier = std::move(next);
    }
    return out;
}

// G^i(phi) by applying the functor i times on freshly built bases.
ModuleMap iterate_g(ComonadKind k, ModuleMap phi, int i) {
    for (int t = 0; t < i; ++t) phi = g_morphism(k, phi);
    return phi;
}

// Resolutions whose levels below the top stay inside the default guard.
struct Case {
    ComonadKind kind;
    FpModule x;
    int depth;
};

std::vector<Case> in_guard_cases() {
    const Modulus m3(3);
    return {
        {kSet, mod(m2, {2}), 3},
        {kSet, mod(m3, {3}), 1},
        {kSet, FpModule::zero(m4), 2},
        {kSet, mod(m4, {2}), 1},
        {kPointed, mod(m4, {2}), 2},
        {kPointed, mod(m2, {2, 2}), 2},
        {kPointed, mod(m3, {3}), 2},
        {kPointed, mod(m4, {4}), 1},
        {kPointed, mod(m2, {2}), 4},
    };
}

struct EnvGuard {
    explicit EnvGuard(const char* v) { setenv("RESOLVENT_MAX_ENUM", v, 1); }
    ~EnvGuard() { unsetenv("RESOLVENT_MAX_ENUM"); }
};

}  // namespace

TEST_CASE("kind names") {
    CHECK(parse_comonad_kind("Pointed") == kPointed);
    CHECK(parse_comonad_kind("setfree") == kSet);
    CHECK_FALSE(parse_comonad_kind("cofree"));
    CHECK(to_string(kPointed) == "PointedFree");
}

TEST_CASE("G on objects") {
    const auto g = g_object(kSet, mod(m2, {2}));
    CHECK(g.rank() == 2);
    CHECK(g.labels() == std::vector<Vector>{{0}, {1}});
    const auto p = g_object(kPointed, mod(m4, {2}));
    CHECK(p.carrier() == mod(m4, {4}));
    CHECK(p.label(0) == Vector{1});
    CHECK(g_object(kPointed, FpModule::zero(m4)).carrier().is_zero());
    CHECK(g_object(kSet, FpModule::zero(m4)).rank() == 1);
    const auto q = g_object(kSet, mod(m4, {2, 4}));
    for (std::size_t j = 0; j < q.rank(); ++j) CHECK(q.index_of(q.label(j)) == j);
    CHECK_FALSE(g_object(kPointed, mod(m4, {2, 4})).index_of({0, 0}));
    CHECK_THROWS_AS(g_object(kSet, FpModule::free(m4, 11)), EnumerationTooLarge);
}

TEST_CASE("G on maps: examples and functoriality") {
    const auto z2 = mod(m2, {2});
    CHECK(g_morphism(kSet, ModuleMap::identity(z2)).matrix() == ResidueMatrix::identity(m2, 2));
    CHECK(g_morphism(kPointed, ModuleMap::zero(z2, z2)).is_zero());
    Rng rng(11);
    for (ComonadKind k : {kSet, kPointed})
        for (int t = 0; t < 60; ++t) {
            const auto a = random_module(rng, m4, 2), b = random_module(rng, m4, 2), c = random_module(rng, m4, 2);
            const auto f = random_map(rng, a, b), g = random_map(rng, b, c);
            CHECK(g_morphism(k, ModuleMap::identity(a)) == ModuleMap::identity(g_object(k, a).carrier()));
            CHECK(g_morphism(k, g * f) == g_morphism(k, g) * g_morphism(k, f));
            // naturality of the counit
            CHECK(counit(k, b) * g_morphism(k, f) == f * counit(k, a));
        }
}

TEST_CASE("counit and comultiplication examples") {
    const auto z2 = mod(m2, {2});
    CHECK(counit(kSet, z2).matrix() == ResidueMatrix::from_rows(m2, {{0, 1}}));
    const auto e = counit(kPointed, mod(m4, {2}));
    CHECK(e.dom() == mod(m4, {4}));
    CHECK(e.apply({1}) == Vector{1});
    CHECK(e.apply({2}) == Vector{0});
    for (ComonadKind k : {kSet, kPointed}) {
        const auto x = mod(m2, {2, 2});
        CHECK(counit(k, g_object(k, x).carrier()) * comult(k, x) == ModuleMap::identity(g_object(k, x).carrier()));
    }
}

TEST_CASE("comonad laws on small modules") {
    for (ComonadKind k : {kSet, kPointed})
        for (Modulus m : {m2, Modulus(3), m4, Modulus(6), Modulus(8)})
            for (const auto& x : small_modules(m, 64)) {
                // G^2 X must be representable for the laws to be matrices.
                const auto gx = g_object(k, x).carrier();
                const auto gsize = gx.size();
                if (!gsize || *gsize > default_enumeration_guard()) continue;
                CHECK(comonad_laws_hold(comonad_stack(k, x, 1)));
            }
    CHECK(comonad_laws_hold(comonad_stack(kSet, mod(m2, {2}), 2)));
    CHECK(comonad_laws_hold(comonad_stack(kPointed, mod(m4, {2}), 2)));
    CHECK(comonad_laws_hold(comonad_stack(kPointed, mod(m2, {2, 2}), 2)));
    auto bad = comonad_stack(kSet, mod(m2, {2}), 2);
    bad.comults[0] = ModuleMap::zero(bad.comults[0].dom(), bad.comults[0].cod());
    CHECK_FALSE(comonad_laws_hold(bad));
}

TEST_CASE("resolution examples") {
    const auto z2 = mod(m2, {2});
    const auto p = comonadic_resolution(kPointed, z2, 3);
    for (int n = 0; n <= 3; ++n) {
        CHECK(p.object.object(n) == z2);
        for (int i = 0; i <= n; ++i) CHECK(p.object.face(n, i) == ModuleMap::identity(z2));
    }
    const auto s = comonadic_resolution(kSet, z2, 2);
    CHECK(s.object.object(0).rank() == 2);
    CHECK(s.object.object(1).rank() == 4);
    CHECK(s.object.object(2).rank() == 16);
    const auto q = comonadic_resolution(kPointed, mod(m4, {2}), 2);
    CHECK(q.object.object(0).rank() == 1);
    CHECK(q.object.object(1).rank() == 3);
    CHECK(q.object.object(2).rank() == 63);
    CHECK(is_surjective(q.object.augmentation()));
}

TEST_CASE("faces and degeneracies agree with iterated G") {
    for (const auto& [k, x, depth] : in_guard_cases()) {
        const auto r = comonadic_resolution(k, x, depth);
        CHECK(validate_simplicial(r.object));
        std::vector<FpModule> g{x};  // g[j] = G^j X
        for (int n = 0; n <= depth; ++n) g.push_back(r.object.object(n));
        for (int n = 0; n <= depth; ++n)
            for (int i = 0; i <= n; ++i) {
                CHECK(r.object.face(n, i) == iterate_g(k, counit(k, g[n - i]), i));
                if (n < depth) CHECK(r.object.degeneracy(n, i) == iterate_g(k, comult(k, g[n - i]), i));
            }
    }
}

TEST_CASE("resolutions are acyclic over X") {
    for (const auto& [k, x, depth] : in_guard_cases()) {
        const auto a = comonadic_resolution(k, x, depth).object;
        CHECK(is_surjective(a.augmentation()));
        const auto n1 = kernel(a.face(1, 0));
        CHECK(is_exact_at(a.face(1, 1) * n1.embedding, a.augmentation()));
        CHECK(homology_of_simplicial(a, 0) == x);
        for (int n = 1; n < depth; ++n) CHECK(homology_of_simplicial(a, n).is_zero());
    }
}

TEST_CASE("top level is never enumerated") {
    {
        EnvGuard g("64");
        // A_1 has 4^3 = 64 elements, A_2 has rank 63 and is not walked.
        CHECK_NOTHROW(comonadic_resolution(kPointed, mod(m4, {2}), 2));
        try {
            comonadic_resolution(kPointed, mod(m4, {2}), 3);
            CHECK(false);
        } catch (const EnumerationTooLarge& e) {
            CHECK(e.level() == 2);
        }
    }
    CHECK_THROWS_AS(comonadic_resolution(kSet, FpModule::free(m4, 2), 2), EnumerationTooLarge);
}

TEST_CASE("canonical splitting") {
    const auto z2 = mod(m2, {2});
    CHECK(canonical_splitting(kPointed, z2) == ModuleMap::identity(z2));
    const auto s = canonical_splitting(kSet, FpModule::free(m2, 1));
    CHECK(s.matrix() == ResidueMatrix::from_rows(m2, {{0}, {1}}));
    for (ComonadKind k : {kSet, kPointed})
        for (std::size_t r = 0; r <= 3; ++r) {
            const auto p = FpModule::free(m4, r);
            CHECK(counit(k, p) * canonical_splitting(k, p) == ModuleMap::identity(p));
        }
    CHECK_THROWS_AS(canonical_splitting(kSet, mod(m4, {2})), InputError);
}

TEST_CASE("contraction of Hom(P, GX)") {
    Rng rng(31);
    for (const auto& [k, x, depth] : in_guard_cases()) {
        const auto r = comonadic_resolution(k, x, depth);
        // P = GX, f = id: h_0(id) = delta_X
        const auto gx = r.object.object(0);
        if (gx.rank() <= 16) CHECK(hom_contraction(gx, r).h(0, ModuleMap::identity(gx)) == r.object.degeneracy(0, 0));
        for (std::size_t rank = 0; rank <= 4; ++rank) {
            const auto p = FpModule::free(x.modulus(), rank);
            const auto hc = hom_contraction(p, r);
            std::vector<std::pair<int, ModuleMap>> samples;
            for (int n = -1; n < depth; ++n)
                for (int t = 0; t < 6; ++t) samples.emplace_back(n, random_map(rng, p, r.object.object(n)));
            CHECK(verify_hom_contraction(r.object, hc, samples));
            if (k == kPointed) CHECK(hc.h(0, ModuleMap::zero(p, r.object.object(0))).is_zero());
        }
        const auto one = FpModule::free(x.modulus(), 1);
        CHECK_THROWS_AS(hom_contraction(one, r).h(depth, ModuleMap::zero(one, r.object.object(depth))),
                        DegreeOutOfRange);
    }
    // A broken contraction is caught.
    const auto r = comonadic_resolution(kSet, mod(m2, {2}), 2);
    const auto p = FpModule::free(m2, 2);
    HomContraction bad{p, [&](int n, const ModuleMap&) { return ModuleMap::zero(p, r.object.object(n + 1)); }};
    CHECK_FALSE(verify_hom_contraction(r.object, bad, {{0, random_map(rng, p, r.object.object(0))}}));
}

TEST_CASE("P-epis are the surjections for both comonads") {
    const auto z4 = mod(m4, {4}), z2 = mod(m4, {2});
    CHECK(is_p_epi(kSet, ModuleMap::identity(z4)));
    CHECK_FALSE(is_p_epi(kPointed, ModuleMap::zero(FpModule::zero(m4), z4)));
    CHECK(is_p_epi(kPointed, ModuleMap(z4, z2, ResidueMatrix::from_rows(m4, {{1}}))));
    Rng rng(1000);
    int agree = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto a = random_module(rng, m4, 3), b = random_module(rng, m4, 2);
        const auto f = random_map(rng, a, b);
        const bool s = is_surjective(f);
        agree += (is_p_epi(kSet, f) == s && is_p_epi(kPointed, f) == s);
    }
    CHECK(agree == 1000);
}

TEST_CASE("coefficients") {
    const auto r = comonadic_resolution(kPointed, mod(m4, {2}), 2);
    const auto same = apply_coefficients(Coefficients::identity(), r.object);
    CHECK(same.object(1) == r.object.object(1));
    const auto t = apply_coefficients(Coefficients::tensor_with(mod(m4, {2})), r.object);
    CHECK(validate_simplicial(t));
    for (int n = 0; n <= 2; ++n) CHECK(t.object(n) == mod(m4, std::vector<Residue>(r.object.object(n).rank(), 2)));
    const auto z = apply_coefficients(Coefficients::tensor_with(FpModule::zero(m4)), r.object);
    for (int n = -1; n <= 2; ++n) CHECK(z.object(n).is_zero());
}
