#include "doctest.h"
#include "resolvent/error.hpp"
#include "resolvent/json_io.hpp"
#include "resolvent/random.hpp"

using namespace resolvent;

TEST_CASE("module and map round trip") {
    Rng rng(7);
    for (Residue m : {2, 4, 6, 12}) {
        for (int t = 0; t < 20; ++t) {
            const FpModule a = random_module(rng, Modulus(m), 3);
            const FpModule b = random_module(rng, Modulus(m), 3);
            CHECK(module_from_json(to_json(a)) == a);
            const ModuleMap f = random_map(rng, a, b);
            CHECK(map_from_json(to_json(f)) == f);
            CHECK(map_from_json(Json::parse(to_json(f).dump())) == f);
        }
    }
}

TEST_CASE("modules are read in any cyclic order") {
    const auto j = Json::parse(R"({"modulus": 4, "factors": [4, 2, 1]})");
    CHECK(module_from_json(j) == FpModule(Modulus(4), {2, 4}));
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(module_from_json(Json::parse(R"({"modulus": 4})")), InputError);
    CHECK_THROWS_AS(module_from_json(Json::parse(R"({"modulus": 1, "factors": []})")), InputError);
    CHECK_THROWS_AS(module_from_json(Json::parse(R"({"modulus": 4, "factors": [3]})")), InputError);
    CHECK_THROWS_AS(module_from_json(Json::parse(R"({"modulus": 4, "factors": "2"})")), InputError);
    const auto bad_shape = Json::parse(
        R"({"dom": {"modulus": 4, "factors": [4]}, "cod": {"modulus": 4, "factors": [4]}, "matrix": [[1, 2]]})");
    CHECK_THROWS_AS(map_from_json(bad_shape), InputError);
    // 1 -> Z/2 from Z/4 sending the generator to 1 is fine, the other way is not a map
    const auto ok = Json::parse(
        R"({"dom": {"modulus": 4, "factors": [4]}, "cod": {"modulus": 4, "factors": [2]}, "matrix": [[1]]})");
    CHECK(map_from_json(ok).matrix()(0, 0) == 1);
    const auto not_a_map = Json::parse(
        R"({"dom": {"modulus": 4, "factors": [2]}, "cod": {"modulus": 4, "factors": [4]}, "matrix": [[1]]})");
    CHECK_THROWS(map_from_json(not_a_map));
}

TEST_CASE("simplicial objects round trip") {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        const auto a = random_simplicial_module(rng, Modulus(4), 2, 3);
        const Json j = to_json(a);
        const auto b = simplicial_from_json(Json::parse(j.dump()), Validation::Full);
        CHECK(to_json(b) == j);
        CHECK(b.top() == a.top());
    }
    const auto r = resolve(FpModule(Modulus(2), {2}), Method::comonadic(ComonadKind::PointedFree), 2);
    const Json j = to_json(r.object);
    CHECK(j["augmented"] == true);
    CHECK(to_json(simplicial_from_json(j)) == j);
}

TEST_CASE("broken face identities are caught on load") {
    Rng rng(3);
    const auto a = random_simplicial_module(rng, Modulus(2), 2, 2);
    Json j = to_json(a);
    // swap in a zero face somewhere nonzero
    for (auto& lvl : j["levels"]) {
        if (lvl["faces"].size() < 2) continue;
        auto& f = lvl["faces"][0];
        bool nonzero = false;
        for (auto& row : f)
            for (auto& x : row) nonzero |= x != 0, x = 0;
        if (nonzero) {
            CHECK_THROWS_AS(simplicial_from_json(j, Validation::Full), ConstraintViolation);
            return;
        }
    }
}

TEST_CASE("reports are deterministic without timing") {
    const FpModule x(Modulus(4), {2});
    const std::vector<Method> ms{Method::tv(PresentationStrategy::Minimal), Method::oracle()};
    const auto r1 = compare_methods(x, Coefficients::identity(), ms, 2);
    const auto r2 = compare_methods(x, Coefficients::identity(), ms, 2);
    CHECK(report_json(r1, false).dump(2) == report_json(r2, false).dump(2));
    const Json j = report_json(r1, false);
    CHECK(j["cells"].size() == 4);
    CHECK(j["cells"][0]["value"]["module"] == "Z/2");
    CHECK(j["cells"][0]["verdicts"]["matches_oracle"] == true);
    CHECK(j["verdict"] == "isomorphic");
}
