// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Values are exact (canonical forms, matrix identities); only runtimes carry limits.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "resolvent/error.hpp"
#include "resolvent/random.hpp"
#include "resolvent/workbench.hpp"

using namespace resolvent;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

const Modulus kF2(2), kZ4(4);
const std::uint64_t kSeed = 20240601;

struct Outcome {
    bool ok = false;
    std::string detail;
};

int failures = 0;

// limit_ms <= 0: no runtime limit
void criterion(int id, const char* name, double limit_ms, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    const double ms = ms_since(t0);
    const bool in_time = limit_ms <= 0 || ms < limit_ms;
    const bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("[%s] %d %-28s %s; %.0f ms", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), ms);
    if (limit_ms > 0) std::printf(" (limit %.0f ms)", limit_ms);
    std::printf("\n");
    std::fflush(stdout);
}

std::string count(int ok, int total) { return std::to_string(ok) + "/" + std::to_string(total); }

const FpModule z2_over_z4 = FpModule::cyclic(kZ4, 2);

Outcome tor_ladder() {
    std::string got;
    bool ok = true;
    for (int n = 0; n <= 3; ++n) {
        const FpModule t = tor_oracle(z2_over_z4, z2_over_z4, n);
        ok = ok && t == z2_over_z4;
        got += (n ? ", " : "") + t.to_string();
    }
    return {ok, "Tor_0..3(Z/2, Z/2) over Z/4 = " + got};
}

Outcome pointed_free_values() {
    const Coefficients e = Coefficients::tensor_with(z2_over_z4);
    std::string got;
    bool ok = true;
    for (int n = 1; n <= 2; ++n) {
        const FpModule h = homology({z2_over_z4, e, Method::comonadic(ComonadKind::PointedFree), n});
        ok = ok && h == tor_oracle(z2_over_z4, z2_over_z4, n - 1) && h == z2_over_z4;
        got += (n > 1 ? ", " : "") + h.to_string();
    }
    return {ok, "pointed-free H_1, H_2 = " + got};
}

Outcome tv_vs_oracle() {
    const Coefficients e = Coefficients::tensor_with(z2_over_z4);
    int agree = 0;
    for (int n = 1; n <= 4; ++n)
        agree += homology({z2_over_z4, e, Method::tv(PresentationStrategy::Minimal), n}) ==
                 tor_oracle(z2_over_z4, z2_over_z4, n - 1);
    return {agree == 4, "tv-min = oracle at " + count(agree, 4) + " degrees"};
}

Outcome f2_main_theorem() {
    const FpModule x = FpModule::cyclic(kF2, 2);
    const Method set_free = Method::comonadic(ComonadKind::SetFree);
    const Method pointed = Method::comonadic(ComonadKind::PointedFree);
    const auto r = compare_methods(x, Coefficients::tensor_with(x), {set_free, pointed}, 3);
    bool values = true;
    for (const auto& c : r.cells) {
        const FpModule want = c.degree == 1 ? x : FpModule::zero(kF2);
        values = values && c.value && *c.value == want;
    }
    bool maps = r.pairs.size() == 1 && r.pairs[0].depth >= 2 && r.pairs[0].extensions_ok && r.pairs[0].homotopies_ok;
    std::string detail = "H_1..3 " + std::string(values ? "= Z/2, 0, 0" : "WRONG");
    if (!r.pairs.empty()) {
        detail += "; maps and homotopies at depth " + std::to_string(r.pairs[0].depth);
        for (const auto& [n, inv] : r.pairs[0].inverse_on_homology) maps = maps && inv;
    }
    return {values && maps && r.ok(), detail};
}

Outcome comparison_pairs() {
    Rng rng(kSeed + 5);
    int ok = 0, total = 0;
    while (total < 100) {
        const Modulus m = uniform(rng, 3) == 0 ? kF2 : kZ4;
        const auto x = random_module(rng, m, 2);
        const auto y = random_module(rng, m, 2);
        const int depth = 1 + int(uniform(rng, 2));
        const bool comonadic = uniform(rng, 2) == 0;
        const AugSimplicialObject p =
            comonadic ? comonadic_resolution(ComonadKind::PointedFree, m == kF2 ? x : FpModule::cyclic(m, 2), depth).object
                      : tv_resolution(x, PresentationStrategy::Minimal, depth).object;
        const auto tv = tv_resolution(y, PresentationStrategy::Minimal, depth + 2);
        const auto f = random_map(rng, p.object(-1), y);
        // two extensions from independently seeded contractions of the target
        const ResolutionPair one{p, tv.object, tv_contractions(tv)};
        const ResolutionPair two{p, tv.object, tv_contractions(tv, 1 + uniform(rng, 1000))};
        ++total;
        try {
            const auto e1 = extend_map(one, f, depth);
            const auto e2 = extend_map(two, f, depth);
            ok += is_semi_simplicial(e1) && is_semi_simplicial(e2) && verify_homotopy(build_homotopy(one, e1, e2, depth));
        } catch (const Error&) {
        }
    }
    return {ok == total, count(ok, total) + " pairs"};
}

// Shared corpus for criteria 6 and 7.
std::vector<AugSimplicialObject> z4_corpus() {
    Rng rng(kSeed + 6);
    std::vector<AugSimplicialObject> out;
    for (int t = 0; t < 100; ++t) out.push_back(random_simplicial_module(rng, kZ4, 4, 4));
    return out;
}

Outcome homotopy_invariance(const std::vector<AugSimplicialObject>& corpus) {
    int ok = 0, samples = 0;
    for (std::size_t t = 0; t < corpus.size(); ++t) {
        try {
            const auto r = verify_homotopy_invariance(corpus[t], kSeed + t, 2);
            ok += r.ok() && r.regular_pushout.size() == 3 && r.eps_iso.size() == 3;
            samples += r.samples;
        } catch (const Error&) {
        }
    }
    return {ok == int(corpus.size()), count(ok, int(corpus.size())) + " objects, " + std::to_string(samples) + " homotopy samples"};
}

Outcome normalized_vs_unnormalized(const std::vector<AugSimplicialObject>& corpus) {
    int ok = 0;
    for (const auto& a : corpus) {
        const ChainComplex c = unnormalized_complex(a, 4);
        bool same = true;
        for (int n = 0; n <= 3; ++n) same = same && homology_of_simplicial(a, n) == homology_of_complex(c, n);
        ok += same;
    }
    return {ok == int(corpus.size()), count(ok, int(corpus.size())) + " objects, n <= 3"};
}

Outcome horn_fillers() {
    Rng rng(kSeed + 8);
    std::vector<double> times;
    int ok = 0;
    const int total = 10000;
    while (int(times.size()) < total) {
        const Modulus m = uniform(rng, 2) == 0 ? kF2 : kZ4;
        const auto a = random_simplicial_module(rng, m, 2, 3);
        const int n = 1 + int(uniform(rng, 3));
        if (a.object(n).log2_size() > 12) continue;
        const int k = int(uniform(rng, std::uint64_t(n + 1)));
        const HomView v(a, FpModule::free(m, 1));
        const ModuleMap w = random_map(rng, v.p(), a.object(n));
        Horn h{n, k, {}};
        for (int i = 0; i <= n; ++i) h.faces.push_back(i == k ? std::nullopt : std::optional(v.face(n, i, w)));
        const auto t0 = Clock::now();
        bool good = true;
        try {
            const ModuleMap filler = fill_horn(v, h);
            times.push_back(ms_since(t0));
            for (int i = 0; i <= n; ++i)
                if (i != k && !(v.face(n, i, filler) == *h.faces[std::size_t(i)])) good = false;
        } catch (const Error&) {
            times.push_back(ms_since(t0));
            good = false;
        }
        ok += good;
    }
    std::nth_element(times.begin(), times.begin() + total / 2, times.end());
    const double median = times[std::size_t(total / 2)];
    char buf[64];
    std::snprintf(buf, sizeof buf, ", median fill %.3f ms (limit 1 ms)", median);
    return {ok == total && median < 1.0, count(ok, total) + " horns" + buf};
}

}  // namespace

int main() {
    std::printf("acceptance run, seed %llu\n", static_cast<unsigned long long>(kSeed));
    criterion(1, "tor-ladder", 1000, tor_ladder);
    criterion(2, "comonadic-equals-tor", 10000, pointed_free_values);
    criterion(3, "tv-equals-oracle", 10000, tv_vs_oracle);
    criterion(4, "main-theorem-f2", 60000, f2_main_theorem);
    criterion(5, "comparison-theorem", 0, comparison_pairs);
    const auto corpus = z4_corpus();
    criterion(6, "homotopy-invariance", 0, [&] { return homotopy_invariance(corpus); });
    criterion(7, "normalized-vs-unnormalized", 0, [&] { return normalized_vs_unnormalized(corpus); });
    criterion(8, "horn-fillers", 0, horn_fillers);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
