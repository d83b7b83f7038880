#pragma once

// Comparison of resolutions: lifting compatible families through faces,
// extending maps to semi-simplicial maps, homotopies between extensions,
// Tierney-Vogel resolutions and P-exactness.

#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "resolvent/comonad.hpp"
#include "resolvent/simplicial.hpp"

namespace resolvent {

// Contraction of Hom(P, A) for a projective P; called once per level of the source.
using ContractionProvider = std::function<HomContraction(const FpModule& p)>;

struct ResolutionPair {
    AugSimplicialObject p;  // over X, free levels
    AugSimplicialObject a;  // over Y
    ContractionProvider contraction;
};

ContractionProvider comonadic_contractions(const ComonadicResolution& res);

// Some a : P -> A_n with d_i a = a_i, from a_0 .. a_n : P -> A_{n-1}.
// IncompatibleFamily when d_i a_j != d_{j-1} a_i for some i < j;
// TruncationTooShallow when A stops below level n+1.
ModuleMap lift_through_faces(const AugSimplicialObject& a, const HomContraction& c, const std::vector<ModuleMap>& faces);

// f_{-1} = f and f_0 .. f_depth commuting with the faces.
SemiSimplicialMap extend_map(const ResolutionPair& pair, const ModuleMap& f, int depth);

// Homotopy from f to g (both over the same map of bases) at levels 0..depth.
// Needs A to level depth+2.
Homotopy build_homotopy(const ResolutionPair& pair, const SemiSimplicialMap& f, const SemiSimplicialMap& g, int depth);

// G^j(phi) on an element of A_{l+j}, for phi : A_l -> A_l.
Vector apply_g_power(const ComonadicResolution& res, const ModuleMap& phi, int l, int j, const Vector& x);

// h^n_i = G^{i+1}(f_{n-i}) s_i, a homotopy from f to the identity for any
// semi-simplicial self-map f of a comonadic resolution over 1_X.
Homotopy self_homotopy_fast(const ComonadicResolution& res, const SemiSimplicialMap& f);

// ---------------------------------------------------------- Tierney-Vogel

enum class PresentationStrategy { SetBased, PointedBased, Minimal };

std::string_view to_string(PresentationStrategy s);
std::optional<PresentationStrategy> parse_strategy(std::string_view s);

// Free module onto m: on all elements, on the nonzero elements, or on the
// invariant-factor generators (a minimal generating set).
using Section = std::function<Vector(const Vector&)>;

struct Presentation {
    FpModule free;
    ModuleMap cover;  // free -> m, surjective
    Section section;  // element of m -> a preimage under cover, no solving
};
Presentation present(const FpModule& m, PresentationStrategy s);

struct TvResolution {
    PresentationStrategy strategy = PresentationStrategy::Minimal;
    AugSimplicialObject object;
    std::vector<SimplicialKernel> kernels;  // kernels[n] from the faces of level n-1, n >= 1
    std::vector<ModuleMap> comparisons;     // comparisons[n] : A_n -> K_n (comparisons[0] is the augmentation)
    std::vector<Section> sections;          // sections[n] splits comparisons[n] on elements

    int depth() const { return object.top(); }
};

// Levels 0..depth. Degeneracies are lifted through the comparison maps and
// satisfy the face/degeneracy identities only.
TvResolution tv_resolution(const FpModule& x, PresentationStrategy s, int depth);

// Contraction of Hom(P, A) for a P-exact A: the family (f, h(d_0 f), ..,
// h(d_n f)) is factored through the simplicial kernel and lifted through the
// comparison map with a fixed solver. A nonzero seed adds a fixed random
// map into the kernel of each comparison map, giving a different but
// equally valid contraction.
ContractionProvider tv_contractions(const TvResolution& r, std::uint64_t seed = 0);
ContractionProvider solver_contractions(const AugSimplicialObject& a, std::uint64_t seed = 0);

struct PExactness {
    std::vector<bool> levels;  // levels[0]: augmentation; levels[n]: A_n -> K_n
    bool all() const;
};
PExactness p_exactness_report(const AugSimplicialObject& a);
bool p_exactness_check(const AugSimplicialObject& a);

}  // namespace resolvent
