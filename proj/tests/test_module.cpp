#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "resolvent/error.hpp"
#include "resolvent/module.hpp"

using namespace resolvent;

namespace {

const Modulus m2(2), m4(4);

FpModule mod(Modulus m, std::vector<Residue> f) { return FpModule(m, std::move(f)); }

ModuleMap map(const FpModule& dom, const FpModule& cod, std::vector<std::vector<std::int64_t>> rows) {
    if (rows.empty()) return ModuleMap(dom, cod, ResidueMatrix(dom.modulus(), cod.rank(), dom.rank()));
    return ModuleMap(dom, cod, ResidueMatrix::from_rows(dom.modulus(), rows));
}

// Element set of a subobject, computed by pushing every element of the
// subobject through the embedding.
std::set<oracle::Vec> elements_of(const Subobject& s) {
    std::set<oracle::Vec> out;
    for (const auto& x : oracle::all_vectors(s.object().factors())) out.insert(s.embedding.apply(x));
    return out;
}

// A random well-defined map between two modules: entry (j,i) is a random
// multiple of e_j / gcd(d_i, e_j).
ModuleMap random_map(std::mt19937_64& rng, const FpModule& dom, const FpModule& cod) {
    ResidueMatrix a(dom.modulus(), cod.rank(), dom.rank());
    for (std::size_t j = 0; j < cod.rank(); ++j)
        for (std::size_t i = 0; i < dom.rank(); ++i) {
            const Residue e = cod.factors()[j], d = dom.factors()[i];
            const Residue step = e / zmod::gcd(d, e);
            a.set(j, i, (rng() % e) * step % e);
        }
    return ModuleMap(dom, cod, a);
}

FpModule random_module(std::mt19937_64& rng, Modulus m, std::size_t max_rank) {
    std::vector<Residue> divs;
    for (Residue d = 2; d <= m.value(); ++d)
        if (m.value() % d == 0) divs.push_back(d);
    std::vector<Residue> orders;
    const std::size_t r = rng() % (max_rank + 1);
    for (std::size_t i = 0; i < r; ++i) orders.push_back(divs[rng() % divs.size()]);
    return canonical_module(m, orders);
}

}  // namespace

TEST_CASE("module construction and validation") {
    CHECK(mod(m4, {2, 4}).rank() == 2);
    CHECK_THROWS_AS(mod(m4, {4, 2}), InputError);
    CHECK_THROWS_AS(mod(m4, {3}), InputError);
    CHECK(mod(m4, {2, 4}).size() == 8u);
    CHECK(FpModule::zero(m4).to_string() == "0");
    CHECK(mod(m4, {2, 4}).to_string() == "Z/2 + Z/4");
    CHECK(canonical_module(m4, {4, 2}) == mod(m4, {2, 4}));
    CHECK_FALSE(is_isomorphic(mod(m4, {4}), mod(m4, {2, 2})));
    CHECK(canonical_module(Modulus(6), {2, 3}) == mod(Modulus(6), {6}));
    CHECK_THROWS_AS(map(mod(m4, {2}), mod(m4, {4}), {{1}}), InputError);
    CHECK(map(mod(m4, {2}), mod(m4, {4}), {{2}}).matrix()(0, 0) == 2u);
    CHECK(map(mod(m4, {4}), mod(m4, {2}), {{3}}).matrix()(0, 0) == 1u);
}

TEST_CASE("canonical_decompose examples") {
    CHECK(canonical_decompose(2, ResidueMatrix(m4, 2, 0)).module == mod(m4, {4, 4}));
    CHECK(canonical_decompose(1, ResidueMatrix::from_rows(m4, {{2}})).module == mod(m4, {2}));
    CHECK(canonical_decompose(2, ResidueMatrix::from_rows(m4, {{1}, {1}})).module == mod(m4, {4}));
}

TEST_CASE("canonical_decompose agrees with quotient counting") {
    std::mt19937_64 rng(21);
    for (const Residue mv : {4u, 6u, 8u, 12u}) {
        const Modulus m(mv);
        for (int t = 0; t < 40; ++t) {
            const std::size_t g = 1 + rng() % 3, r = rng() % 4;
            const auto rel = oracle::random_matrix(rng, mv, g, r);
            ResidueMatrix rm(m, g, r);
            std::vector<oracle::Vec> cols(r, oracle::Vec(g));
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t c = 0; c < r; ++c) {
                    rm.set(i, c, rel[i][c]);
                    cols[c][i] = rel[i][c];
                }
            const auto dec = canonical_decompose(g, rm);
            const std::vector<Residue> orders(g, mv);
            CHECK(dec.module.factors() == oracle::factors_of_quotient(oracle::span(cols, orders), mv, orders));
            // projection kills relations and lift is a section.
            CHECK((dec.projection * ModuleMap(FpModule::free(m, r), FpModule::free(m, g), rm)).is_zero());
            const auto back = ModuleMap(dec.module, dec.module, dec.projection.matrix() * dec.lift);
            CHECK(back == ModuleMap::identity(dec.module));
        }
    }
}

TEST_CASE("kernel, cokernel, image examples") {
    const auto z4 = mod(m4, {4}), z2 = mod(m4, {2});
    CHECK(kernel(ModuleMap::identity(z4)).object().is_zero());
    const auto times2 = map(z4, z4, {{2}});
    const auto k = kernel(times2);
    CHECK(k.object() == z2);
    CHECK(elements_of(k) == std::set<oracle::Vec>{{0}, {2}});
    const auto red = map(z4, z2, {{1}});
    CHECK(elements_of(kernel(red)) == std::set<oracle::Vec>{{0}, {2}});
    CHECK(cokernel(ModuleMap::zero(FpModule::zero(m4), z4)).q == z4);
    CHECK(cokernel(times2).q == z2);
    CHECK(cokernel(red).q.is_zero());
    const auto im = image_factorization(times2);
    CHECK(im.image.object() == z2);
    CHECK(elements_of(im.image) == std::set<oracle::Vec>{{0}, {2}});
    CHECK(im.image.embedding * im.epi == times2);
    CHECK(image_factorization(ModuleMap::zero(z4, z2)).image.object().is_zero());
    CHECK(is_surjective(red));
    CHECK_FALSE(is_injective(red));
}

TEST_CASE("exactness examples") {
    const auto z4 = mod(m4, {4});
    const auto zero = FpModule::zero(m4);
    CHECK_FALSE(is_exact_at(ModuleMap::zero(zero, z4), ModuleMap::zero(z4, zero)));
    const auto times2 = map(z4, z4, {{2}});
    CHECK(is_exact_at(times2, times2));
    CHECK(is_exact_at(ModuleMap::zero(zero, z4), ModuleMap::identity(z4)));
    CHECK_THROWS_AS(is_exact_at(times2, map(mod(m4, {2}), z4, {{2}})), DimensionMismatch);
}

TEST_CASE("kernel and cokernel against brute force") {
    std::mt19937_64 rng(31);
    for (const Residue mv : {4u, 6u, 8u}) {
        const Modulus m(mv);
        for (int t = 0; t < 60; ++t) {
            const auto a = random_module(rng, m, 3), b = random_module(rng, m, 3);
            if (a.size() > 64 || b.size() > 64) continue;
            const auto f = random_map(rng, a, b);
            std::set<oracle::Vec> ker, img;
            for (const auto& x : oracle::all_vectors(a.factors())) {
                const auto y = f.apply(x);
                if (b.is_zero_element(y)) ker.insert(x);
                img.insert(y);
            }
            const auto k = kernel(f);
            CHECK(elements_of(k) == ker);
            CHECK(k.object().size() == ker.size());
            CHECK((f * k.embedding).is_zero());
            const auto c = cokernel(f);
            CHECK(c.q.factors() == oracle::factors_of_quotient(img, mv, b.factors()));
            CHECK((c.projection * f).is_zero());
            CHECK(is_surjective(c.projection));
            const auto im = image_factorization(f);
            CHECK(elements_of(im.image) == img);
            CHECK(is_surjective(im.epi));
            CHECK(is_injective(im.image.embedding));
            CHECK(im.image.embedding * im.epi == f);
            CHECK(is_exact_at(f, c.projection));
            CHECK(is_exact_at(k.embedding, f));
            CHECK(is_injective(f) == (ker.size() == 1));
            CHECK(is_surjective(f) == (img.size() == *b.size()));
        }
    }
}

TEST_CASE("kernel universality by brute force") {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 40; ++t) {
        const auto a = random_module(rng, m4, 2), b = random_module(rng, m4, 2), c = random_module(rng, m4, 2);
        const auto f = random_map(rng, a, b);
        const auto k = kernel(f);
        const auto g = random_map(rng, c, a);
        if (!(f * g).is_zero()) {
            CHECK_THROWS_AS(factor_through_mono(k.embedding, g), ConstraintViolation);
            continue;
        }
        const auto u = factor_through_mono(k.embedding, g);
        CHECK(k.embedding * u == g);
        // Uniqueness: count all maps c -> K with embedding * v = g.
        int count = 0;
        const auto& kf = k.object();
        const std::size_t entries = kf.rank() * c.rank();
        std::vector<Residue> orders;
        for (std::size_t j = 0; j < kf.rank(); ++j)
            for (std::size_t i = 0; i < c.rank(); ++i) orders.push_back(kf.factors()[j]);
        for (const auto& e : oracle::all_vectors(orders)) {
            ResidueMatrix v(m4, kf.rank(), c.rank());
            for (std::size_t q = 0; q < entries; ++q) v.set(q / c.rank(), q % c.rank(), e[q]);
            try {
                if (k.embedding * ModuleMap(c, kf, v) == g) ++count;
            } catch (const InputError&) {
            }
        }
        CHECK(count == 1);
    }
}

TEST_CASE("limits") {
    const auto z4 = mod(m4, {4}), z2 = mod(m4, {2});
    const auto zero = FpModule::zero(m4);
    const auto pb = pullback(ModuleMap::zero(z4, zero), ModuleMap::zero(z2, zero));
    CHECK(pb.apex == mod(m4, {2, 4}));
    const auto red = map(z4, z2, {{1}});
    const auto kp = kernel_pair(red);
    CHECK(kp.apex == mod(m4, {2, 4}));
    std::set<oracle::Vec> got, want;
    for (const auto& x : oracle::all_vectors(kp.apex.factors()))
        got.insert({kp.projections[0].apply(x)[0], kp.projections[1].apply(x)[0]});
    for (Residue a = 0; a < 4; ++a)
        for (Residue b = 0; b < 4; ++b)
            if (a % 2 == b % 2) want.insert({a, b});
    CHECK(got == want);
    const auto f = map(z4, z4, {{2}});
    CHECK(equalizer(f, f).apex == z4);
    const auto eq = equalizer(ModuleMap::identity(z4), f);
    CHECK(eq.apex.is_zero());
}

TEST_CASE("simplicial kernels") {
    const auto z4 = mod(m4, {4}), z2 = mod(m4, {2});
    const auto red = map(z4, z2, {{1}});
    const auto sk = simplicial_kernel({red});
    CHECK(sk.object == kernel_pair(red).apex);
    CHECK(sk.projections.size() == 2);
    CHECK(red * sk.projections[1] == red * sk.projections[0]);

    const auto zs = simplicial_kernel({ModuleMap::zero(z2, z4), ModuleMap::zero(z2, z4)});
    CHECK(zs.object == mod(m4, {2, 2, 2}));

    // (id, id) on Z/2 over F2: triples with f_i x_j = f_{j-1} x_i.
    const auto f2 = mod(m2, {2});
    const auto id = ModuleMap::identity(f2);
    const auto t = simplicial_kernel({id, id});
    std::set<oracle::Vec> brute;
    for (const auto& x : oracle::all_vectors(2, 3)) {
        bool ok = true;
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t i = 0; i < j; ++i) ok = ok && x[j] == x[i];
        if (ok) brute.insert(x);
    }
    std::set<oracle::Vec> got;
    for (const auto& x : oracle::all_vectors(t.object.factors()))
        got.insert({t.projections[0].apply(x)[0], t.projections[1].apply(x)[0], t.projections[2].apply(x)[0]});
    CHECK(got == brute);
    CHECK(elements_of(t.inside_power).size() == brute.size());
}

TEST_CASE("simplicial kernel relations hold on random families") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        const auto x = random_module(rng, m4, 2), y = random_module(rng, m4, 2);
        const std::size_t n = rng() % 3;
        std::vector<ModuleMap> fs;
        for (std::size_t i = 0; i <= n; ++i) fs.push_back(random_map(rng, x, y));
        const auto sk = simplicial_kernel(fs);
        for (std::size_t j = 0; j < n + 2; ++j)
            for (std::size_t i = 0; i < j; ++i) CHECK(fs[i] * sk.projections[j] == fs[j - 1] * sk.projections[i]);
        // Size against brute force on the product.
        std::vector<Residue> orders;
        for (std::size_t k = 0; k < n + 2; ++k) orders.insert(orders.end(), x.factors().begin(), x.factors().end());
        if (orders.size() > 8) continue;
        std::size_t count = 0;
        for (const auto& v : oracle::all_vectors(orders)) {
            std::vector<Vector> parts;
            for (std::size_t k = 0; k < n + 2; ++k)
                parts.emplace_back(v.begin() + k * x.rank(), v.begin() + (k + 1) * x.rank());
            bool ok = true;
            for (std::size_t j = 0; j < n + 2 && ok; ++j)
                for (std::size_t i = 0; i < j && ok; ++i) ok = fs[i].apply(parts[j]) == fs[j - 1].apply(parts[i]);
            count += ok;
        }
        CHECK(sk.object.size() == count);
    }
}

TEST_CASE("regular pushout examples") {
    const auto z4 = mod(m4, {4}), z2 = mod(m4, {2});
    const auto id4 = ModuleMap::identity(z4);
    CHECK(regular_pushout_check({id4, id4, id4, id4}));
    const auto red = map(z4, z2, {{1}});
    const auto kp = kernel_pair(red);
    // X' = pullback of (red, red) with its own projections.
    CHECK(regular_pushout_check({kp.projections[1], kp.projections[0], red, red}));
    // X' = Z/2 -> Y' = Z/2 by zero is not surjective.
    const auto incl = map(z2, z4, {{2}});
    CHECK_THROWS_AS(regular_pushout_check({ModuleMap::zero(z2, z2), incl, ModuleMap::identity(z2), red}), NotEpi);
    // Comparison fails: X' = Z/4 mapping onto Y' = Z/2 and into X = Z/4 by 2.
    CHECK_FALSE(regular_pushout_check({red, map(z4, z4, {{2}}), ModuleMap::zero(z2, z2), red}));
}

TEST_CASE("tensor products") {
    const auto z4 = mod(m4, {4}), z2 = mod(m4, {2});
    CHECK(tensor(z2, z4) == z2);
    CHECK(tensor(z2, z2) == z2);
    CHECK(tensor(z2, FpModule::zero(m4)).is_zero());
    CHECK(tensor(mod(m4, {2, 4}), mod(m4, {2, 4})) == mod(m4, {2, 2, 2, 4}));
    CHECK(tensor(mod(Modulus(6), {2}), mod(Modulus(6), {3})).is_zero());

    // Z/2 (x) Z/2 over Z/4 by brute force: free abelian group on the 4 symbols
    // a (x) b modulo bilinearity. With a single generator on each side the
    // relations reduce to 2(1(x)1) = 0 from both factors, so the result has 2
    // elements; cross-check the generic quotient counter on that presentation.
    std::set<oracle::Vec> rel = oracle::span({{2}}, {4});
    CHECK(oracle::factors_of_quotient(rel, 4, {4}) == std::vector<Residue>{2});

    std::mt19937_64 rng(51);
    for (int t = 0; t < 40; ++t) {
        const auto a = random_module(rng, m4, 2), b = random_module(rng, m4, 2), c = random_module(rng, m4, 2);
        const auto bb = random_module(rng, m4, 2);
        const auto f = random_map(rng, a, b), g = random_map(rng, b, c);
        CHECK(tensor_map(bb, g * f) == tensor_map(bb, g) * tensor_map(bb, f));
        CHECK(tensor_map(bb, ModuleMap::identity(a)) == ModuleMap::identity(tensor(bb, a)));
        if (is_surjective(f)) CHECK(is_surjective(tensor_map(bb, f)));
        // Right exactness: B (x) coker f = coker (B (x) f).
        CHECK(tensor(bb, cokernel(f).q) == cokernel(tensor_map(bb, f)).q);
        const auto alpha = random_map(rng, bb, c);
        CHECK(tensor_map(alpha, ModuleMap::identity(a)).cod() == tensor(c, a));
    }
}

TEST_CASE("element enumeration") {
    CHECK(enumerate_elements(FpModule::zero(m4)).size() == 1);
    CHECK(enumerate_elements(mod(m4, {2})) == std::vector<Vector>{{0}, {1}});
    const auto els = enumerate_elements(mod(m4, {2, 4}));
    REQUIRE(els.size() == 8);
    CHECK(els[0] == Vector{0, 0});
    CHECK(els[1] == Vector{0, 1});
    CHECK(els[4] == Vector{1, 0});
    for (std::size_t i = 0; i < els.size(); ++i) {
        CHECK(element_index(mod(m4, {2, 4}), els[i]) == i);
        CHECK(element_at(mod(m4, {2, 4}), i) == els[i]);
    }
    CHECK_THROWS_AS(enumerate_elements(FpModule::free(m4, 11), 1u << 20), EnumerationTooLarge);
}
