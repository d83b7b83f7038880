#pragma once

// Comonadic homology H_n(X, E) = H_{n-1} N E A for a resolution A of X,
// the chain-complex Tor oracle, and the cross-method checks built on them.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resolvent/comparison.hpp"

namespace resolvent {

struct Method {
    enum class Kind { Comonadic, TV, Oracle };
    Kind kind = Kind::Oracle;
    ComonadKind comonad = ComonadKind::PointedFree;
    PresentationStrategy strategy = PresentationStrategy::Minimal;

    static Method comonadic(ComonadKind k) { return {Kind::Comonadic, k, PresentationStrategy::Minimal}; }
    static Method tv(PresentationStrategy s) { return {Kind::TV, ComonadKind::PointedFree, s}; }
    static Method oracle() { return {}; }

    bool simplicial() const { return kind != Kind::Oracle; }
    bool operator==(const Method&) const = default;
};

// set-free | pointed-free | tv-min | tv-set | tv-pointed | oracle
std::string to_string(const Method& m);
std::optional<Method> parse_method(std::string_view s);

struct HomologyRequest {
    FpModule x;
    Coefficients e;
    Method method;
    int n = 1;
};

// A resolution of x to the given depth, non-augmented part not yet split
// off. Oracle is not simplicial and is refused.
struct Resolution {
    Method method;
    AugSimplicialObject object;
    ContractionProvider contraction;
    std::optional<ComonadicResolution> comonadic;
};
Resolution resolve(const FpModule& x, const Method& m, int depth);

// E applied levelwise to the non-augmented part.
AugSimplicialObject coefficient_object(const Coefficients& e, const AugSimplicialObject& a);

FpModule homology(const HomologyRequest& req);

// Tor_n over Z/m from a minimal free resolution of x by iterated kernels,
// tensored with b. Uses only kernels, images and cokernels of module maps.
FpModule tor_oracle(const FpModule& b, const FpModule& x, int n);

// ---------------------------------------------------------------- reports

struct Cell {
    Method method;
    int degree = 1;
    std::optional<FpModule> value;
    std::string infeasible;  // reason when !value
    double millis = 0;
};

// Explicit comparison of two simplicial methods: f : A -> B and g : B -> A
// over 1_X, homotopies gf ~ 1 and fg ~ 1, and H_n g H_n f = 1 = H_n f H_n g.
struct PairComparison {
    Method a, b;
    int depth = -1;  // truncation depth of the maps; -1 when infeasible
    std::string infeasible;
    bool extensions_ok = false;
    bool homotopies_ok = false;
    std::vector<std::pair<int, bool>> inverse_on_homology;  // (degree, verdict)
    bool ok() const;
};

struct ComparisonReport {
    FpModule x;
    Coefficients e;
    std::vector<Method> methods;
    int n_max = 1;
    std::vector<Cell> cells;
    std::vector<std::pair<int, bool>> isomorphic;  // per degree, over feasible cells
    std::vector<PairComparison> pairs;
    bool ok() const;
};

// Degrees 1..n_max for every method; infeasible cells are reported, not skipped.
ComparisonReport compare_methods(const FpModule& x, const Coefficients& e, const std::vector<Method>& methods,
                                 int n_max, bool explicit_maps = true);

PairComparison compare_pair(const FpModule& x, const Coefficients& e, const Method& a, const Method& b, int n_max);

// Square H_n(X)_A -> H_n(Y)_A -> H_n(Y)_B against H_n(X)_A -> H_n(X)_B -> H_n(Y)_B.
bool naturality_check(const ModuleMap& f, const Coefficients& e, const Method& a, const Method& b, int n);
// alpha : B -> B' induces a transformation - (x) B => - (x) B'; checked
// levelwise and then on the comparison square in degree n.
bool naturality_in_coefficients(const ModuleMap& alpha, const FpModule& x, const Method& a, const Method& b, int n);

struct InvarianceReport {
    bool cocylinder_simplicial = false;  // validate_simplicial(A^I)
    bool sections = false;               // eps0 s = 1 = eps1 s
    std::vector<bool> eps_iso;           // H_n eps0 iso and equal to H_n eps1
    std::vector<bool> regular_pushout;   // N_{n+1}/Z_n square, n <= min(2, n_max)
    int samples = 0, samples_ok = 0;     // H_n f = H_n g for f = eps0 H, g = eps1 H
    bool ok() const;
};

// a non-augmented with degeneracies to level n_max + 2.
InvarianceReport verify_homotopy_invariance(const AugSimplicialObject& a, std::uint64_t seed, int n_max);

// h : f ~ g into A; pushed into the cocylinder and compared on H_0 .. H_{depth-1}.
bool homotopic_maps_agree_on_homology(const Homotopy& h);

// -------------------------------------------------------------- suites

struct SuiteResult {
    std::string name;
    int passed = 0, total = 0;
    double millis = 0;
    bool ok() const { return passed == total; }
};

using Progress = std::function<void(const std::string& suite, int done, int total)>;

std::vector<SuiteResult> run_property_suites(std::uint64_t seed, int scale = 1, const Progress& progress = {});

}  // namespace resolvent
