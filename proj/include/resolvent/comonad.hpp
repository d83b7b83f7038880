#pragma once

// Free-on-set and free-on-pointed-set comonads on Z/m-modules, the
// comonadic resolutions they generate, and levelwise coefficient functors.
//
// GM is free on the elements of M (SetFree) or on its nonzero elements
// (PointedFree, where 0 is the basepoint and labels hitting 0 go to 0).
// Labels follow the lexicographic enumeration of module.hpp, so basis
// index j of GM is element_at(M, j) or element_at(M, j + 1).

#include <optional>
#include <string_view>
#include <vector>

#include "resolvent/module.hpp"
#include "resolvent/simplicial.hpp"

namespace resolvent {

enum class ComonadKind { SetFree, PointedFree };

std::string_view to_string(ComonadKind k);
// "set" / "setfree" / "pointed" / "pointedfree", case-insensitive.
std::optional<ComonadKind> parse_comonad_kind(std::string_view s);

class FreeWithBasis {
public:
    FreeWithBasis() = default;
    // EnumerationTooLarge when |under| exceeds the guard.
    FreeWithBasis(ComonadKind k, FpModule under, std::uint64_t guard = default_enumeration_guard());

    ComonadKind kind() const { return kind_; }
    const FpModule& underlying() const { return under_; }
    const FpModule& carrier() const { return carrier_; }
    std::size_t rank() const { return carrier_.rank(); }

    Vector label(std::size_t j) const;
    // Basis index labelled by x; nullopt for the basepoint under PointedFree.
    std::optional<std::size_t> index_of(const Vector& x) const;
    // Unit vector of the label of x in the carrier (zero for the basepoint).
    Vector unit_of(const Vector& x) const;
    std::vector<Vector> labels() const;

private:
    ComonadKind kind_ = ComonadKind::SetFree;
    FpModule under_, carrier_;
};

FreeWithBasis g_object(ComonadKind k, const FpModule& m);
// G(f) : G(dom) -> G(cod), label b to label f(b).
ModuleMap g_morphism(const ModuleMap& f, const FreeWithBasis& dom, const FreeWithBasis& cod);
ModuleMap g_morphism(ComonadKind k, const ModuleMap& f);
// epsilon : GM -> M, label b to b.
ModuleMap counit(ComonadKind k, const FpModule& m);
// delta : GM -> GGM, label b to the label of the basis vector e_b.
ModuleMap comult(ComonadKind k, const FpModule& m);

// G^1 X .. G^{depth+1} X with counit and comultiplication components.
struct ComonadStack {
    ComonadKind kind = ComonadKind::SetFree;
    FpModule base;
    std::vector<FreeWithBasis> levels;  // levels[n] = G^{n+1} X
    std::vector<ModuleMap> counits;     // counits[n] = epsilon_{G^n X}
    std::vector<ModuleMap> comults;     // comults[n] = delta_{G^n X}, n < depth
};

ComonadStack comonad_stack(ComonadKind k, const FpModule& x, int depth);
// Counit laws on both sides and coassociativity wherever in range.
bool comonad_laws_hold(const ComonadStack& s);

struct ComonadicResolution {
    ComonadKind kind = ComonadKind::SetFree;
    AugSimplicialObject object;        // A_{-1} = X, A_n = G^{n+1} X
    std::vector<FreeWithBasis> bases;  // bases[n] : basis of A_n, labelled by A_{n-1}

    int depth() const { return object.top(); }
    const FpModule& base() const { return object.object(-1); }
};

// Faces d_i = G^i epsilon, degeneracies s_i = G^i delta. Only levels below
// the top are enumerated; the top level exists as a rank. An overflow
// reports the level whose elements were needed.
ComonadicResolution comonadic_resolution(ComonadKind k, const FpModule& x, int depth,
                                         Validation v = Validation::Full);

// s : P -> GP for free P, generator e_b to the label of e_b.
ModuleMap canonical_splitting(ComonadKind k, const FpModule& p);

// h_n(f) = G(f) s for f : P -> A_n, n >= -1 (P free).
HomContraction hom_contraction(const FpModule& p, const ComonadicResolution& res);

// Both comonads have the surjections as their class of P-epis. Up to this
// codomain size the splitting is checked by lifting the counit.
inline constexpr std::uint64_t kPEpiLiftLimit = 1 << 12;
bool is_p_epi(ComonadKind k, const ModuleMap& f);

struct Coefficients {
    enum class Kind { Identity, TensorWith };
    Kind kind = Kind::Identity;
    FpModule b;  // used by TensorWith

    static Coefficients identity() { return {}; }
    static Coefficients tensor_with(FpModule b) { return {Kind::TensorWith, std::move(b)}; }
    FpModule on_object(const FpModule& m) const;
    ModuleMap on_map(const ModuleMap& f) const;
};

AugSimplicialObject apply_coefficients(const Coefficients& e, const AugSimplicialObject& a,
                                       Validation v = Validation::Full);

}  // namespace resolvent
