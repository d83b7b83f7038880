#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "resolvent/error.hpp"
#include "resolvent/zmod.hpp"

using namespace resolvent::zmod;

namespace {

oracle::Mat to_oracle(const ResidueMatrix& a) { return a.to_rows(); }

ResidueMatrix from_oracle(Modulus m, const oracle::Mat& rows, std::size_t cols) {
    ResidueMatrix a(m, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) a.set(r, c, rows[r][c]);
    return a;
}

std::vector<oracle::Vec> rows_of(const ResidueMatrix& a) { return a.to_rows(); }

std::vector<oracle::Vec> cols_of(const ResidueMatrix& a) {
    std::vector<oracle::Vec> out;
    for (std::size_t c = 0; c < a.cols(); ++c) out.push_back(a.column(c));
    return out;
}

}  // namespace

TEST_CASE("mat_mul small cases") {
    const Modulus m4(4), m2(2);
    const auto a = ResidueMatrix::from_rows(m2, {{1, 3}, {5, -1}});
    CHECK(ResidueMatrix::identity(m2, 2) * a == a);
    CHECK(ResidueMatrix::from_rows(m4, {{2}}) * ResidueMatrix::from_rows(m4, {{2}}) ==
          ResidueMatrix::from_rows(m4, {{0}}));
    CHECK(ResidueMatrix::from_rows(m2, {{1, 1}, {0, 1}}) * ResidueMatrix::from_rows(m2, {{1, 0}, {1, 1}}) ==
          ResidueMatrix::from_rows(m2, {{0, 1}, {1, 1}}));
    CHECK_THROWS_AS(ResidueMatrix(m2, 2, 3) * ResidueMatrix(m2, 2, 3), resolvent::DimensionMismatch);
    CHECK_THROWS_AS(ResidueMatrix(m2, 2, 2) * ResidueMatrix(m4, 2, 2), resolvent::ModulusMismatch);
}

TEST_CASE("mat_mul agrees with naive product, associativity") {
    std::mt19937_64 rng(7);
    for (const Residue mv : {2u, 4u, 6u, 9u, 12u}) {
        const Modulus m(mv);
        for (int t = 0; t < 30; ++t) {
            const std::size_t p = 1 + rng() % 5, q = 1 + rng() % 5, r = 1 + rng() % 5, s = 1 + rng() % 5;
            const auto ao = oracle::random_matrix(rng, mv, p, q);
            const auto bo = oracle::random_matrix(rng, mv, q, r);
            const auto co = oracle::random_matrix(rng, mv, r, s);
            const auto a = from_oracle(m, ao, q), b = from_oracle(m, bo, r), c = from_oracle(m, co, s);
            const auto ab = a * b;
            for (std::size_t j = 0; j < r; ++j) {
                oracle::Vec col(q);
                for (std::size_t i = 0; i < q; ++i) col[i] = bo[i][j];
                CHECK(ab.column(j) == oracle::apply(ao, col, mv));
            }
            CHECK((a * b) * c == a * (b * c));
        }
    }
}

TEST_CASE("packed F2 storage behaves like dense") {
    const Modulus m(2);
    std::mt19937_64 rng(11);
    ResidueMatrix big(m, 3, 5000), small(m, 5000, 2);
    CHECK(big.packed());
    for (int k = 0; k < 800; ++k) {
        big.set(rng() % 3, rng() % 5000, 1);
        small.set(rng() % 5000, rng() % 2, 1);
    }
    const auto prod = big * small;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            Residue s = 0;
            for (std::size_t k = 0; k < 5000; ++k) s ^= big(r, k) & small(k, c);
            CHECK(prod(r, c) == s);
        }
    CHECK(big.transpose().transpose() == big);
    CHECK((big + big).is_zero());
}

TEST_CASE("howell form examples") {
    const Modulus m4(4);
    CHECK(howell_form(ResidueMatrix(m4, 3, 2)).h.rows() == 0);
    CHECK(howell_form(ResidueMatrix::identity(m4, 3)).h == ResidueMatrix::identity(m4, 3));
    const auto a = ResidueMatrix::from_rows(m4, {{2, 0}, {0, 2}, {1, 1}});
    const auto hf = howell_form(a);
    CHECK(hf.h == ResidueMatrix::from_rows(m4, {{1, 1}, {0, 2}}));
    CHECK(hf.u * a == hf.h);
    // Oracle: both row spans enumerate to the same 8-element set.
    CHECK(oracle::span(rows_of(a), 4, 2) == oracle::span(rows_of(hf.h), 4, 2));
    CHECK(oracle::span(rows_of(a), 4, 2).size() == 8);
}

TEST_CASE("howell form: span equality iff equal forms, idempotence") {
    std::mt19937_64 rng(3);
    for (const Residue mv : {4u, 6u, 8u, 9u}) {
        const Modulus m(mv);
        for (int t = 0; t < 60; ++t) {
            const std::size_t n = 1 + rng() % 3;
            const auto a = from_oracle(m, oracle::random_matrix(rng, mv, 1 + rng() % 4, n), n);
            const auto b = from_oracle(m, oracle::random_matrix(rng, mv, 1 + rng() % 4, n), n);
            const auto ha = howell_form(a), hb = howell_form(b);
            CHECK(howell_form(ha.h).h == ha.h);
            CHECK(ha.u * a == ha.h);
            const bool same_span = oracle::span(rows_of(a), mv, n) == oracle::span(rows_of(b), mv, n);
            CHECK(same_span == (ha.h == hb.h));
        }
    }
}

TEST_CASE("kernel generators examples") {
    const Modulus m4(4), m2(2);
    CHECK(kernel_generators(ResidueMatrix::identity(m4, 3)).cols() == 0);
    const auto k = kernel_generators(ResidueMatrix::from_rows(m4, {{2}}));
    CHECK(oracle::span(cols_of(k), 4, 1) == std::set<oracle::Vec>{{0}, {2}});
    const auto k2 = kernel_generators(ResidueMatrix::from_rows(m2, {{1, 1}}));
    CHECK(oracle::span(cols_of(k2), 2, 2) == std::set<oracle::Vec>{{0, 0}, {1, 1}});
}

TEST_CASE("kernel generators match brute force") {
    std::mt19937_64 rng(5);
    for (const Residue mv : {2u, 4u, 6u, 8u, 12u}) {
        const Modulus m(mv);
        for (int t = 0; t < 50; ++t) {
            const std::size_t rows = rng() % 4, cols = 1 + rng() % 3;
            const auto ao = oracle::random_matrix(rng, mv, rows, cols);
            const auto a = from_oracle(m, ao, cols);
            const auto k = kernel_generators(a);
            std::set<oracle::Vec> brute;
            for (const auto& x : oracle::all_vectors(mv, cols))
                if (oracle::apply(ao, x, mv) == oracle::Vec(rows, 0)) brute.insert(x);
            CHECK(oracle::span(cols_of(k), mv, cols) == brute);
        }
    }
}

TEST_CASE("solve examples and brute force") {
    const Modulus m4(4);
    CHECK(solve(ResidueMatrix::identity(m4, 2), {3, 1}) == Vector{3, 1});
    CHECK_FALSE(solve(ResidueMatrix::from_rows(m4, {{2}}), {1}));
    const auto x = solve(ResidueMatrix::from_rows(m4, {{2}}), {2});
    REQUIRE(x);
    CHECK((2 * (*x)[0]) % 4 == 2);
    CHECK_THROWS_AS(solve(ResidueMatrix::identity(m4, 2), {1}), resolvent::DimensionMismatch);

    std::mt19937_64 rng(9);
    for (const Residue mv : {4u, 6u, 9u}) {
        const Modulus m(mv);
        for (int t = 0; t < 50; ++t) {
            const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
            const auto ao = oracle::random_matrix(rng, mv, rows, cols);
            const auto a = from_oracle(m, ao, cols);
            const Solver s(a);
            for (const auto& b : oracle::all_vectors(mv, rows)) {
                const auto sol = s(b);
                bool reachable = false;
                for (const auto& xx : oracle::all_vectors(mv, cols))
                    if (oracle::apply(ao, xx, mv) == b) {
                        reachable = true;
                        break;
                    }
                CHECK(bool(sol) == reachable);
                if (sol) CHECK(oracle::apply(ao, *sol, mv) == b);
            }
        }
    }
}

TEST_CASE("smith form diagonal chain and transforms") {
    std::mt19937_64 rng(13);
    for (const Residue mv : {4u, 12u, 8u}) {
        const Modulus m(mv);
        for (int t = 0; t < 40; ++t) {
            const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
            const auto a = from_oracle(m, oracle::random_matrix(rng, mv, r, c), c);
            const auto s = smith_form(a, {.u = true, .u_inv = true, .v = true});
            ResidueMatrix d(m, r, c);
            for (std::size_t i = 0; i < s.diag.size(); ++i) {
                CHECK(mv % s.diag[i] == 0);
                if (i) CHECK(s.diag[i] % s.diag[i - 1] == 0);
                d.set(i, i, s.diag[i] % mv);
            }
            CHECK(s.u * a * s.v == d);
            CHECK(s.u * s.u_inv == ResidueMatrix::identity(m, r));
        }
    }
}

TEST_CASE("column span generators on wide matrices") {
    const Modulus m(2);
    ResidueMatrix a(m, 4, 6000);
    std::mt19937_64 rng(17);
    for (std::size_t c = 0; c < 6000; ++c) a.set(rng() % 3, c, 1);
    const auto g = column_span_generators(a);
    CHECK(g.cols() <= 4);
    CHECK(oracle::span(cols_of(g), 2, 4).size() == 8);
}

TEST_CASE("modulus validation") {
    CHECK_THROWS(Modulus(1));
    CHECK_THROWS(Modulus((Residue(1) << 31) + 1));
    CHECK(Modulus(7).is_prime());
    CHECK_FALSE(Modulus(4).is_prime());
    CHECK(Modulus(12).inverse(5) == Residue(5));
    CHECK_FALSE(Modulus(12).inverse(4));
}
