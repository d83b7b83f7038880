#pragma once

// The category of finite modules over Z/m.
//
// Every object is kept in invariant-factor form Z/d1 + ... + Z/dk with
// d1 | d2 | ... | dk | m, so isomorphism is equality of factor lists. A
// morphism is a residue matrix acting on coordinate columns; row j is only
// meaningful modulo the j-th codomain factor and is stored reduced that way.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resolvent/zmod.hpp"

namespace resolvent {

using zmod::Modulus;
using zmod::Residue;
using zmod::ResidueMatrix;
using zmod::Vector;

// Default element-enumeration guard: RESOLVENT_MAX_ENUM if set, else 2^20.
std::uint64_t default_enumeration_guard();

class FpModule {
public:
    FpModule() = default;
    // Throws InputError unless factors already form a canonical chain.
    FpModule(Modulus m, std::vector<Residue> factors, std::string label = {});

    static FpModule zero(Modulus m) { return FpModule(m, {}); }
    static FpModule free(Modulus m, std::size_t rank);
    static FpModule cyclic(Modulus m, Residue order);

    const Modulus& modulus() const { return mod_; }
    const std::vector<Residue>& factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    bool is_zero() const { return factors_.empty(); }
    bool is_free() const;
    // Number of elements, or nullopt when it does not fit in 63 bits.
    std::optional<std::uint64_t> size() const;
    double log2_size() const;

    Vector reduce(Vector x) const;
    bool is_zero_element(const Vector& x) const;

    // "Z/2 + Z/4", "0".
    std::string to_string() const;

    friend bool operator==(const FpModule& a, const FpModule& b) {
        return a.mod_ == b.mod_ && a.factors_ == b.factors_;
    }

private:
    Modulus mod_;
    std::vector<Residue> factors_;
    std::string label_;
};

class ModuleMap {
public:
    ModuleMap() = default;
    // Throws InputError when the matrix is not well defined on the factors.
    ModuleMap(FpModule dom, FpModule cod, ResidueMatrix matrix);

    static ModuleMap identity(const FpModule& m);
    static ModuleMap zero(const FpModule& dom, const FpModule& cod);

    const FpModule& dom() const { return dom_; }
    const FpModule& cod() const { return cod_; }
    const ResidueMatrix& matrix() const { return matrix_; }

    Vector apply(const Vector& x) const;
    bool is_zero() const { return matrix_.is_zero(); }
    ModuleMap scaled(Residue s) const;

    friend bool operator==(const ModuleMap& a, const ModuleMap& b) {
        return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.matrix_ == b.matrix_;
    }

private:
    FpModule dom_, cod_;
    ResidueMatrix matrix_;
};

// g * f is the composite g after f.
ModuleMap operator*(const ModuleMap& g, const ModuleMap& f);
ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
ModuleMap operator-(const ModuleMap& a, const ModuleMap& b);

struct Subobject {
    FpModule ambient;
    ModuleMap embedding;  // injective, cod = ambient
    const FpModule& object() const { return embedding.dom(); }
};

// Same element set inside the same ambient module.
bool same_submodule(const Subobject& a, const Subobject& b);
bool is_contained(const Subobject& a, const Subobject& b);

// Canonical form of (Z/m)^g / <relations columns>. The projection sends the
// free generators onto the canonical module; lift sends each canonical
// generator to a representative in (Z/m)^g.
struct Decomposition {
    FpModule module;
    ModuleMap projection;
    ResidueMatrix lift;
};

Decomposition canonical_decompose(std::size_t generator_count, const ResidueMatrix& relations);

// Canonicalizes Z/o_1 + ... + Z/o_n (orders dividing m, any order). When the
// orders already sort into a divisibility chain the identification is a
// coordinate permutation and no matrices are built.
struct CyclicCanonical {
    FpModule module;
    std::vector<Residue> orders;
    bool permutation = true;
    std::vector<std::ptrdiff_t> position;  // original index -> canonical index, -1 if dropped
    std::vector<std::size_t> source;       // canonical index -> original index
    ResidueMatrix to;                      // only when !permutation
    ResidueMatrix from;                    // only when !permutation
};

CyclicCanonical canonicalize_cyclic(Modulus m, std::vector<Residue> orders);
// Canonical module isomorphic to the given (arbitrary order) cyclic sum.
FpModule canonical_module(Modulus m, std::vector<Residue> orders);

// Direct sums with explicit injections and projections.
struct DirectSum {
    FpModule object;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
};

DirectSum direct_sum(const std::vector<FpModule>& parts);

Subobject kernel(const ModuleMap& f);
// Intersection of the kernels of a family of maps out of one module.
Subobject joint_kernel(const FpModule& dom, const std::vector<ModuleMap>& fs);
Subobject intersect(const Subobject& a, const Subobject& b);

struct Cokernel {
    ModuleMap projection;  // cod(f) -> q
    FpModule q;
    ResidueMatrix lift;    // canonical generators of q -> representatives in cod(f)
};

Cokernel cokernel(const ModuleMap& f);

struct ImageFactorization {
    ModuleMap epi;    // dom(f) -> image
    Subobject image;  // image.embedding * epi = f
};

ImageFactorization image_factorization(const ModuleMap& f);
// Submodule of m generated by the given coordinate columns.
Subobject generated_submodule(const FpModule& m, const ResidueMatrix& generators);

bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
bool is_isomorphic(const FpModule& a, const FpModule& b);
bool is_exact_at(const ModuleMap& f, const ModuleMap& g);

// Some x with f(x) = y, or nullopt.
std::optional<Vector> preimage(const ModuleMap& f, const Vector& y);

// Solver for many preimage queries along the same map.
class PreimageSolver {
public:
    explicit PreimageSolver(const ModuleMap& f);
    std::optional<Vector> operator()(const Vector& y) const;

private:
    FpModule dom_, cod_;
    zmod::Solver solver_;
};

// The unique u with mono * u = g; ConstraintViolation if g leaves the image.
ModuleMap factor_through_mono(const ModuleMap& mono, const ModuleMap& g);
// Some u with epi * u = g for free dom(g); nullopt if some generator has no preimage.
std::optional<ModuleMap> lift_through(const ModuleMap& f, const ModuleMap& g);

// Finite diagrams and their limits.
struct Diagram {
    struct Arrow {
        std::size_t source, target;
        ModuleMap map;
    };
    std::vector<FpModule> objects;
    std::vector<Arrow> arrows;
};

struct Limit {
    FpModule apex;
    std::vector<ModuleMap> projections;  // one per diagram object
};

Limit finite_limit(const Diagram& d);
Limit pullback(const ModuleMap& f, const ModuleMap& g);
Limit kernel_pair(const ModuleMap& f);
Limit equalizer(const ModuleMap& f, const ModuleMap& g);

// Universal family (k_0 .. k_{n+1}) with f_i k_j = f_{j-1} k_i for i < j.
struct SimplicialKernel {
    FpModule object;
    std::vector<ModuleMap> projections;
    Subobject inside_power;  // embedding into dom^{n+2}
};

SimplicialKernel simplicial_kernel(const std::vector<ModuleMap>& fs);
// The map into the simplicial kernel with the given legs; ConstraintViolation
// when the legs are not a compatible family.
ModuleMap into_simplicial_kernel(const SimplicialKernel& k, const std::vector<ModuleMap>& legs);

// Square   top: X' -> Y'   left: X' -> X   right: Y' -> Y   bottom: X -> Y.
struct CospanSquare {
    ModuleMap top, left, right, bottom;
};

bool regular_pushout_check(const CospanSquare& sq);

// B (x) M over Z/m, computed on presentations and re-canonicalized.
FpModule tensor(const FpModule& b, const FpModule& m);
// alpha (x) phi : B (x) M -> B' (x) N.
ModuleMap tensor_map(const ModuleMap& alpha, const ModuleMap& phi);
inline ModuleMap tensor_map(const FpModule& b, const ModuleMap& phi) {
    return tensor_map(ModuleMap::identity(b), phi);
}

// Lexicographic enumeration (first coordinate most significant); the first
// element is 0. Throws EnumerationTooLarge beyond the guard.
std::vector<Vector> enumerate_elements(const FpModule& m, std::uint64_t guard = default_enumeration_guard());
// Position of x in that enumeration.
std::uint64_t element_index(const FpModule& m, const Vector& x);
Vector element_at(const FpModule& m, std::uint64_t index);

}  // namespace resolvent
