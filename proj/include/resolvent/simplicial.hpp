#pragma once

// Truncated augmented simplicial modules, semi-simplicial maps, chain
// complexes, the Moore complex and homology, horn filling on Hom views, and
// the cocylinder.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "resolvent/module.hpp"

namespace resolvent {

// Which identities are checked when a simplicial object is assembled.
enum class Validation {
    Full,       // faces, face/degeneracy and degeneracy/degeneracy identities
    FacesOnly,  // faces and face/degeneracy identities (degeneracies need not commute)
    None,
};

class AugSimplicialObject {
public:
    struct Level {
        FpModule object;
        std::vector<ModuleMap> faces;         // n+1 faces A_n -> A_{n-1}; empty at the bottom level
        std::vector<ModuleMap> degeneracies;  // n+1 maps A_n -> A_{n+1}; empty at the top level
    };

    AugSimplicialObject() = default;
    // levels.front() is A_{-1} when augmented, A_0 otherwise. Shapes are
    // always checked; identities per the validation mode (ConstraintViolation).
    AugSimplicialObject(bool augmented, std::vector<Level> levels, Validation v = Validation::Full);

    bool augmented() const { return data_ && data_->augmented; }
    int bottom() const { return augmented() ? -1 : 0; }
    int top() const { return data_ ? int(data_->levels.size()) + bottom() - 1 : -1; }
    bool has_level(int n) const { return data_ && n >= bottom() && n <= top(); }

    const FpModule& object(int n) const;
    const ModuleMap& face(int n, int i) const;
    const ModuleMap& degeneracy(int n, int i) const;
    const std::vector<ModuleMap>& faces(int n) const;
    bool has_degeneracies(int n) const;
    const ModuleMap& augmentation() const { return face(0, 0); }
    Modulus modulus() const { return object(bottom()).modulus(); }

    AugSimplicialObject truncated(int new_top) const;
    AugSimplicialObject without_augmentation() const;
    // Levelwise image under an additive functor given on objects and maps.
    AugSimplicialObject map_levels(const std::function<FpModule(const FpModule&)>& on_objects,
                                   const std::function<ModuleMap(const ModuleMap&)>& on_maps,
                                   Validation v = Validation::None) const;
    const std::vector<Level>& levels() const { return data_->levels; }

private:
    struct Data {
        bool augmented = false;
        std::vector<Level> levels;
    };
    const Level& level(int n) const;
    std::shared_ptr<const Data> data_;
};

// Every in-range simplicial identity, as exact matrix equality.
bool validate_simplicial(const AugSimplicialObject& a);
// Faces and face/degeneracy identities only.
bool validate_faces(const AugSimplicialObject& a);

// Constant simplicial object on m, every face and degeneracy the identity.
AugSimplicialObject constant_simplicial(const FpModule& m, int top, bool augmented = false);

struct SemiSimplicialMap {
    AugSimplicialObject source, target;
    int lo = 0;
    std::vector<ModuleMap> components;  // components[n - lo]

    int top() const { return lo + int(components.size()) - 1; }
    const ModuleMap& at(int n) const;
};

SemiSimplicialMap identity_map(const AugSimplicialObject& a);
// Components only up to level top (big top levels stay unbuilt).
SemiSimplicialMap identity_map(const AugSimplicialObject& a, int top);
SemiSimplicialMap compose(const SemiSimplicialMap& g, const SemiSimplicialMap& f);
// Faces commute at every level where both sides are defined.
bool is_semi_simplicial(const SemiSimplicialMap& f);
// Faces and degeneracies commute.
bool is_simplicial(const SemiSimplicialMap& f);

// Bounded chain complex C_lo .. C_hi, zero below lo. When truncated_above is
// set, nothing is known past C_hi and homology at hi is refused.
struct ChainComplex {
    int lo = 0;
    std::vector<FpModule> objects;
    std::vector<ModuleMap> boundaries;  // boundaries[k] : C_{lo+k+1} -> C_{lo+k}
    bool truncated_above = false;

    int hi() const { return lo + int(objects.size()) - 1; }
    const FpModule& at(int n) const;
    const ModuleMap& d(int n) const;  // d_n : C_n -> C_{n-1}, lo < n <= hi
    bool square_zero() const;
};

// Homology at one degree with the data needed to push maps through it.
struct HomologyData {
    FpModule module;
    Subobject cycles;         // Z_n inside C_n (or A_n)
    ModuleMap projection;     // cycles.object() -> module
    ResidueMatrix lift;       // generator representatives in cycles.object() coordinates
};

HomologyData homology_data(const ChainComplex& c, int n);
FpModule homology_of_complex(const ChainComplex& c, int n);
// Map on homology induced by f_n : ambient(src) -> ambient(dst) taking cycles
// to cycles and boundaries to boundaries.
ModuleMap induced_on_homology(const HomologyData& src, const HomologyData& dst, const ModuleMap& f_n);

struct MooreComplex {
    ChainComplex complex;
    std::vector<Subobject> normalized;  // N_n inside A_n
    std::vector<Subobject> cycles;      // Z_n inside A_n
};

// Moore complex of the non-augmented part, levels 0..up_to.
MooreComplex moore_complex(const AugSimplicialObject& a, int up_to);
// H_n of the Moore complex; uses levels n and n+1 (the latter only through
// its boundary image, so a huge top level is never decomposed).
HomologyData homology_data_simplicial(const AugSimplicialObject& a, int n);
FpModule homology_of_simplicial(const AugSimplicialObject& a, int n);
// Alternating-sum complex of the non-augmented part, levels 0..up_to.
ChainComplex unnormalized_complex(const AugSimplicialObject& a, int up_to);

// Simplicial module with N(A) = C, built from a chain complex C_0 .. C_k by
// the Dold-Kan construction; levels 0..top.
AugSimplicialObject dold_kan(const ChainComplex& c, int top);

// ---------------------------------------------------------------- horns

// Hom(P, A) as a simplicial abelian group: elements at level n are maps P -> A_n.
class HomView {
public:
    HomView(AugSimplicialObject a, FpModule p) : a_(std::move(a)), p_(std::move(p)) {}
    // Element view: Hom(Z/m, A) is A itself.
    static HomView elements(const AugSimplicialObject& a) { return HomView(a, FpModule::free(a.modulus(), 1)); }

    const AugSimplicialObject& host() const { return a_; }
    const FpModule& p() const { return p_; }
    ModuleMap zero(int n) const { return ModuleMap::zero(p_, a_.object(n)); }
    ModuleMap face(int n, int i, const ModuleMap& x) const { return a_.face(n, i) * x; }
    ModuleMap degeneracy(int n, int i, const ModuleMap& x) const { return a_.degeneracy(n, i) * x; }

private:
    AugSimplicialObject a_;
    FpModule p_;
};

// (n,k)-horn: faces[i] : P -> A_{n-1} for i != k; faces[k] is empty.
struct Horn {
    int n = 1;
    int k = 0;
    std::vector<std::optional<ModuleMap>> faces;
};

// Throws InvalidHorn unless d_i s_j = d_{j-1} s_i for i < j, both != k.
void check_horn(const HomView& v, const Horn& h);
// Filler w : P -> A_n with d_i w = s_i for i != k.
ModuleMap fill_horn(const HomView& v, const Horn& h, bool check = true);

// ---------------------------------------------------------- contractions

// Levelwise contraction h_n : A_n -> A_{n+1}, n >= -1.
struct Contraction {
    AugSimplicialObject host;
    std::vector<ModuleMap> h;  // h[n+1]
};
bool verify_contraction(const Contraction& c);

// Contraction of the Hom(P, A) view: h(n, f) for f : P -> A_n, n >= -1.
struct HomContraction {
    FpModule p;
    std::function<ModuleMap(int, const ModuleMap&)> h;
};
// Checks d_0 h(f) = f and d_i h(f) = h(d_{i-1} f) on the given (level, map) samples.
bool verify_hom_contraction(const AugSimplicialObject& a, const HomContraction& c,
                            const std::vector<std::pair<int, ModuleMap>>& samples);

// ------------------------------------------------------------- homotopies

// h[n][i] : B_n -> A_{n+1}, 0 <= i <= n <= depth.
struct Homotopy {
    SemiSimplicialMap f, g;
    std::vector<std::vector<ModuleMap>> h;
    int depth() const { return int(h.size()) - 1; }
};
bool verify_homotopy(const Homotopy& h);

struct Cocylinder {
    AugSimplicialObject base;     // non-augmented
    AugSimplicialObject object;   // A^I, levels 0..depth
    std::vector<std::vector<ModuleMap>> pr;  // pr[n][j-1] : A^I_n -> A_{n+1}
    SemiSimplicialMap eps0, eps1, s;

    // The map into A^I_n with the given projections; ConstraintViolation if
    // the legs miss the limit.
    ModuleMap tuple(int n, const std::vector<ModuleMap>& legs) const;

    std::vector<ModuleMap> power_embedding;         // A^I_n -> (A_{n+1})^{n+1}
    std::vector<std::vector<ModuleMap>> injections;  // into that power
};

Cocylinder cocylinder(const AugSimplicialObject& a, int depth);
bool verify_cocylinder(const Cocylinder& c);

// H_n = (h^n_0, ..., h^n_n) as a semi-simplicial map B -> A^I.
SemiSimplicialMap homotopy_to_cocylinder(const Homotopy& h, const Cocylinder& c);
Homotopy homotopy_from_cocylinder(const SemiSimplicialMap& big_h, const Cocylinder& c);

}  // namespace resolvent
