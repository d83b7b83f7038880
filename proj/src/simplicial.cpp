#include "resolvent/simplicial.hpp"

#include <algorithm>
#include <map>

#include "resolvent/error.hpp"

namespace resolvent {

namespace {

// Top levels wider than this get their boundary image through the
// alternating-sum complex instead of through a kernel computation.
constexpr std::size_t kWideLevel = 512;

ModuleMap sum_of(const std::vector<ModuleMap>& maps, const FpModule& dom, const FpModule& cod) {
    ResidueMatrix acc(dom.modulus(), cod.rank(), dom.rank());
    for (const auto& f : maps) acc = acc + f.matrix();
    return ModuleMap(dom, cod, acc);
}

}  // namespace

// ----------------------------------------------------- AugSimplicialObject

AugSimplicialObject::AugSimplicialObject(bool augmented, std::vector<Level> levels, Validation v) {
    if (levels.empty()) throw InputError("simplicial object needs at least one level");
    auto d = std::make_shared<Data>();
    d->augmented = augmented;
    d->levels = std::move(levels);
    const int bot = augmented ? -1 : 0;
    const int top = bot + int(d->levels.size()) - 1;
    for (int n = bot; n <= top; ++n) {
        const Level& l = d->levels[std::size_t(n - bot)];
        if (l.object.modulus() != d->levels.front().object.modulus())
            throw ModulusMismatch("simplicial object: levels over different moduli");
        if (n == bot) {
            if (!l.faces.empty()) throw DimensionMismatch("bottom level has no faces");
        } else {
            if (l.faces.size() != std::size_t(n + 1)) throw DimensionMismatch("level " + std::to_string(n) + " needs n+1 faces");
            const FpModule& below = d->levels[std::size_t(n - 1 - bot)].object;
            for (const auto& f : l.faces)
                if (!(f.dom() == l.object) || !(f.cod() == below))
                    throw DimensionMismatch("face at level " + std::to_string(n) + " has wrong ends");
        }
        if (l.degeneracies.empty()) continue;
        if (n < 0 || n == top) throw DimensionMismatch("degeneracies only between levels 0..top");
        if (l.degeneracies.size() != std::size_t(n + 1))
            throw DimensionMismatch("level " + std::to_string(n) + " needs n+1 degeneracies");
        const FpModule& above = d->levels[std::size_t(n + 1 - bot)].object;
        for (const auto& s : l.degeneracies)
            if (!(s.dom() == l.object) || !(s.cod() == above))
                throw DimensionMismatch("degeneracy at level " + std::to_string(n) + " has wrong ends");
    }
    data_ = std::move(d);
    if (v == Validation::Full && !validate_simplicial(*this))
        throw ConstraintViolation("simplicial identities fail");
    if (v == Validation::FacesOnly && !validate_faces(*this))
        throw ConstraintViolation("face identities fail");
}

const AugSimplicialObject::Level& AugSimplicialObject::level(int n) const {
    if (!has_level(n)) throw DegreeOutOfRange("level " + std::to_string(n) + " outside truncation");
    return data_->levels[std::size_t(n - bottom())];
}

const FpModule& AugSimplicialObject::object(int n) const { return level(n).object; }

const std::vector<ModuleMap>& AugSimplicialObject::faces(int n) const { return level(n).faces; }

const ModuleMap& AugSimplicialObject::face(int n, int i) const {
    const auto& f = level(n).faces;
    if (i < 0 || std::size_t(i) >= f.size())
        throw DegreeOutOfRange("face " + std::to_string(i) + " at level " + std::to_string(n));
    return f[std::size_t(i)];
}

const ModuleMap& AugSimplicialObject::degeneracy(int n, int i) const {
    const auto& s = level(n).degeneracies;
    if (i < 0 || std::size_t(i) >= s.size())
        throw DegreeOutOfRange("degeneracy " + std::to_string(i) + " at level " + std::to_string(n));
    return s[std::size_t(i)];
}

bool AugSimplicialObject::has_degeneracies(int n) const { return has_level(n) && !level(n).degeneracies.empty(); }

AugSimplicialObject AugSimplicialObject::truncated(int new_top) const {
    if (new_top > top()) throw TruncationTooShallow("cannot extend truncation to " + std::to_string(new_top));
    if (new_top < bottom()) throw DegreeOutOfRange("truncation below bottom level");
    std::vector<Level> ls(data_->levels.begin(), data_->levels.begin() + (new_top - bottom() + 1));
    ls.back().degeneracies.clear();
    return AugSimplicialObject(augmented(), std::move(ls), Validation::None);
}

AugSimplicialObject AugSimplicialObject::without_augmentation() const {
    if (!augmented()) return *this;
    if (top() < 0) throw TruncationTooShallow("no level 0");
    std::vector<Level> ls(data_->levels.begin() + 1, data_->levels.end());
    ls.front().faces.clear();
    return AugSimplicialObject(false, std::move(ls), Validation::None);
}

AugSimplicialObject AugSimplicialObject::map_levels(const std::function<FpModule(const FpModule&)>& on_objects,
                                                    const std::function<ModuleMap(const ModuleMap&)>& on_maps,
                                                    Validation v) const {
    std::vector<Level> ls;
    for (const auto& l : data_->levels) {
        Level out{on_objects(l.object), {}, {}};
        for (const auto& f : l.faces) out.faces.push_back(on_maps(f));
        for (const auto& s : l.degeneracies) out.degeneracies.push_back(on_maps(s));
        ls.push_back(std::move(out));
    }
    return AugSimplicialObject(augmented(), std::move(ls), v);
}

namespace {

bool check_identities(const AugSimplicialObject& a, bool with_degeneracy_pairs) {
    for (int n = a.bottom() + 2; n <= a.top(); ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                if (!(a.face(n - 1, i) * a.face(n, j) == a.face(n - 1, j - 1) * a.face(n, i))) return false;
    for (int n = 0; n < a.top(); ++n) {
        if (!a.has_degeneracies(n)) continue;
        const ModuleMap id = ModuleMap::identity(a.object(n));
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                const ModuleMap lhs = a.face(n + 1, i) * a.degeneracy(n, j);
                if (i == j || i == j + 1) {
                    if (!(lhs == id)) return false;
                } else if (i < j) {
                    if (n - 1 < 0 || !a.has_degeneracies(n - 1)) continue;
                    if (!(lhs == a.degeneracy(n - 1, j - 1) * a.face(n, i))) return false;
                } else {
                    if (n - 1 < 0 || !a.has_degeneracies(n - 1)) continue;
                    if (!(lhs == a.degeneracy(n - 1, j) * a.face(n, i - 1))) return false;
                }
            }
        if (!with_degeneracy_pairs || !a.has_degeneracies(n + 1)) continue;
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                if (!(a.degeneracy(n + 1, i) * a.degeneracy(n, j) == a.degeneracy(n + 1, j + 1) * a.degeneracy(n, i)))
                    return false;
    }
    return true;
}

}  // namespace

bool validate_simplicial(const AugSimplicialObject& a) { return check_identities(a, true); }
bool validate_faces(const AugSimplicialObject& a) { return check_identities(a, false); }

AugSimplicialObject constant_simplicial(const FpModule& m, int top, bool augmented) {
    std::vector<AugSimplicialObject::Level> ls;
    const ModuleMap id = ModuleMap::identity(m);
    const int bot = augmented ? -1 : 0;
    for (int n = bot; n <= top; ++n) {
        AugSimplicialObject::Level l{m, {}, {}};
        if (n > bot) l.faces.assign(std::size_t(n + 1), id);
        if (n >= 0 && n < top) l.degeneracies.assign(std::size_t(n + 1), id);
        ls.push_back(std::move(l));
    }
    return AugSimplicialObject(augmented, std::move(ls));
}

// ------------------------------------------------------ semi-simplicial maps

const ModuleMap& SemiSimplicialMap::at(int n) const {
    if (n < lo || n > top()) throw DegreeOutOfRange("map component " + std::to_string(n) + " not defined");
    return components[std::size_t(n - lo)];
}

SemiSimplicialMap identity_map(const AugSimplicialObject& a) { return identity_map(a, a.top()); }

SemiSimplicialMap identity_map(const AugSimplicialObject& a, int top) {
    SemiSimplicialMap f{a, a, a.bottom(), {}};
    for (int n = a.bottom(); n <= std::min(top, a.top()); ++n) f.components.push_back(ModuleMap::identity(a.object(n)));
    return f;
}

SemiSimplicialMap compose(const SemiSimplicialMap& g, const SemiSimplicialMap& f) {
    SemiSimplicialMap out{f.source, g.target, std::max(f.lo, g.lo), {}};
    for (int n = out.lo; n <= std::min(f.top(), g.top()); ++n) out.components.push_back(g.at(n) * f.at(n));
    return out;
}

bool is_semi_simplicial(const SemiSimplicialMap& f) {
    for (int n = f.lo + 1; n <= f.top(); ++n) {
        if (!f.source.has_level(n) || !f.target.has_level(n) || n <= f.source.bottom()) continue;
        for (int i = 0; i <= n; ++i)
            if (!(f.target.face(n, i) * f.at(n) == f.at(n - 1) * f.source.face(n, i))) return false;
    }
    return true;
}

bool is_simplicial(const SemiSimplicialMap& f) {
    if (!is_semi_simplicial(f)) return false;
    for (int n = std::max(f.lo, 0); n < f.top(); ++n) {
        if (!f.source.has_degeneracies(n) || !f.target.has_degeneracies(n)) continue;
        for (int i = 0; i <= n; ++i)
            if (!(f.target.degeneracy(n, i) * f.at(n) == f.at(n + 1) * f.source.degeneracy(n, i))) return false;
    }
    return true;
}

// ---------------------------------------------------------- chain complexes

const FpModule& ChainComplex::at(int n) const {
    if (n < lo || n > hi()) throw WindowTooSmall("C_" + std::to_string(n) + " outside the window");
    return objects[std::size_t(n - lo)];
}

const ModuleMap& ChainComplex::d(int n) const {
    if (n <= lo || n > hi()) throw WindowTooSmall("d_" + std::to_string(n) + " outside the window");
    return boundaries[std::size_t(n - lo - 1)];
}

bool ChainComplex::square_zero() const {
    for (int n = lo + 2; n <= hi(); ++n)
        if (!(d(n - 1) * d(n)).is_zero()) return false;
    return true;
}

namespace {

HomologyData finish_homology(const Subobject& cycles, const ModuleMap& boundary_gens) {
    // boundary_gens : F -> ambient, landing inside the cycles.
    const ModuleMap dprime = factor_through_mono(cycles.embedding, boundary_gens);
    Cokernel q = cokernel(dprime);
    return {q.q, cycles, q.projection, q.lift};
}

}  // namespace

HomologyData homology_data(const ChainComplex& c, int n) {
    if (n < c.lo || n > c.hi() || (c.truncated_above && n == c.hi()))
        throw WindowTooSmall("homology at " + std::to_string(n) + " needs degrees " + std::to_string(n - 1) + ".." +
                             std::to_string(n + 1));
    const FpModule& cn = c.at(n);
    const Subobject z = n == c.lo ? Subobject{cn, ModuleMap::identity(cn)} : kernel(c.d(n));
    const ModuleMap b = n < c.hi() ? c.d(n + 1) : ModuleMap::zero(FpModule::zero(cn.modulus()), cn);
    return finish_homology(z, b);
}

FpModule homology_of_complex(const ChainComplex& c, int n) { return homology_data(c, n).module; }

ModuleMap induced_on_homology(const HomologyData& src, const HomologyData& dst, const ModuleMap& f_n) {
    if (!(f_n.dom() == src.cycles.ambient) || !(f_n.cod() == dst.cycles.ambient))
        throw DimensionMismatch("induced_on_homology: map does not match the ambient modules");
    const Modulus m = f_n.dom().modulus();
    const FpModule gens = FpModule::free(m, src.module.rank());
    const ModuleMap reps(gens, f_n.dom(), src.cycles.embedding.matrix() * src.lift);
    const ModuleMap into = factor_through_mono(dst.cycles.embedding, f_n * reps);
    return ModuleMap(src.module, dst.module, (dst.projection * into).matrix());
}

// ------------------------------------------------------------ Moore complex

MooreComplex moore_complex(const AugSimplicialObject& a0, int up_to) {
    const AugSimplicialObject a = a0.without_augmentation();
    if (up_to > a.top()) throw TruncationTooShallow("Moore complex to " + std::to_string(up_to) + " needs that level");
    MooreComplex mc;
    mc.complex.lo = 0;
    mc.complex.truncated_above = true;
    for (int n = 0; n <= up_to; ++n) {
        const FpModule& an = a.object(n);
        Subobject nn = n == 0 ? Subobject{an, ModuleMap::identity(an)}
                              : joint_kernel(an, std::vector<ModuleMap>(a.faces(n).begin(), a.faces(n).end() - 1));
        mc.complex.objects.push_back(nn.object());
        if (n == 0) {
            mc.cycles.push_back(nn);
        } else {
            const ModuleMap dn = factor_through_mono(mc.normalized.back().embedding, a.face(n, n) * nn.embedding);
            mc.complex.boundaries.push_back(dn);
            const Subobject k = kernel(dn);
            mc.cycles.push_back({an, nn.embedding * k.embedding});
        }
        mc.normalized.push_back(std::move(nn));
    }
    return mc;
}

HomologyData homology_data_simplicial(const AugSimplicialObject& a0, int n) {
    const AugSimplicialObject a = a0.without_augmentation();
    if (n < 0) throw DegreeOutOfRange("homology degree must be non-negative");
    if (n + 1 > a.top()) throw TruncationTooShallow("H_" + std::to_string(n) + " needs level " + std::to_string(n + 1));
    const FpModule& an = a.object(n);
    const Subobject z = n == 0 ? Subobject{an, ModuleMap::identity(an)} : joint_kernel(an, a.faces(n));
    const FpModule& above = a.object(n + 1);
    const auto& faces = a.faces(n + 1);
    if (above.rank() <= kWideLevel) {
        const Subobject nn1 = joint_kernel(above, std::vector<ModuleMap>(faces.begin(), faces.end() - 1));
        return finish_homology(z, faces.back() * nn1.embedding);
    }
    // N_n meets the image of the alternating sum exactly in d(N_{n+1}),
    // because the degenerate part is a complementary subcomplex.
    std::vector<ModuleMap> signed_faces;
    for (std::size_t i = 0; i < faces.size(); ++i) signed_faces.push_back(i % 2 ? faces[i].scaled(an.modulus().neg(1)) : faces[i]);
    const ModuleMap alt = sum_of(signed_faces, above, an);
    const Subobject img = generated_submodule(an, zmod::column_span_generators(alt.matrix()));
    const Subobject nn = n == 0 ? Subobject{an, ModuleMap::identity(an)}
                                : joint_kernel(an, std::vector<ModuleMap>(a.faces(n).begin(), a.faces(n).end() - 1));
    return finish_homology(z, intersect(nn, img).embedding);
}

FpModule homology_of_simplicial(const AugSimplicialObject& a, int n) { return homology_data_simplicial(a, n).module; }

ChainComplex unnormalized_complex(const AugSimplicialObject& a0, int up_to) {
    const AugSimplicialObject a = a0.without_augmentation();
    if (up_to > a.top()) throw TruncationTooShallow("unnormalized complex to " + std::to_string(up_to));
    ChainComplex c;
    c.lo = 0;
    c.truncated_above = true;
    for (int n = 0; n <= up_to; ++n) {
        c.objects.push_back(a.object(n));
        if (n == 0) continue;
        std::vector<ModuleMap> signed_faces;
        for (int i = 0; i <= n; ++i)
            signed_faces.push_back(i % 2 ? a.face(n, i).scaled(a.modulus().neg(1)) : a.face(n, i));
        c.boundaries.push_back(sum_of(signed_faces, a.object(n), a.object(n - 1)));
    }
    return c;
}

// ---------------------------------------------------------------- Dold-Kan

namespace {

using Surjection = std::vector<int>;  // values of a monotone surjection [n] -> [k]

std::vector<Surjection> surjections(int n, int k) {
    // Choose the k jump positions among 1..n.
    std::vector<Surjection> out;
    std::vector<int> jumps;
    std::function<void(int)> rec = [&](int from) {
        if (int(jumps.size()) == k) {
            Surjection s(std::size_t(n + 1), 0);
            int v = 0;
            std::size_t q = 0;
            for (int x = 1; x <= n; ++x) {
                if (q < jumps.size() && jumps[q] == x) {
                    ++v;
                    ++q;
                }
                s[std::size_t(x)] = v;
            }
            out.push_back(std::move(s));
            return;
        }
        for (int p = from; p <= n; ++p) {
            jumps.push_back(p);
            rec(p + 1);
            jumps.pop_back();
        }
    };
    rec(1);
    return out;
}

struct GammaLevel {
    std::vector<std::pair<int, Surjection>> summands;
    std::map<Surjection, std::size_t> index;
    DirectSum sum;
};

}  // namespace

AugSimplicialObject dold_kan(const ChainComplex& c, int top) {
    if (c.lo != 0) throw InputError("dold_kan expects a complex starting in degree 0");
    if (top < 0) throw DegreeOutOfRange("dold_kan: negative top level");
    const Modulus m = c.at(0).modulus();
    std::vector<GammaLevel> lv;
    for (int n = 0; n <= top; ++n) {
        GammaLevel g;
        std::vector<FpModule> parts;
        for (int k = 0; k <= std::min(n, c.hi()); ++k)
            for (auto& s : surjections(n, k)) {
                g.index[s] = g.summands.size();
                g.summands.emplace_back(k, s);
                parts.push_back(c.at(k));
            }
        g.sum = direct_sum(parts);
        lv.push_back(std::move(g));
    }
    // theta* : Gamma_n -> Gamma_mm for a monotone theta : [mm] -> [n].
    auto pull = [&](int n, int mm, const std::vector<int>& theta) {
        const GammaLevel& src = lv[std::size_t(n)];
        const GammaLevel& dst = lv[std::size_t(mm)];
        std::vector<ModuleMap> terms;
        for (std::size_t q = 0; q < src.summands.size(); ++q) {
            const auto& [k, sigma] = src.summands[q];
            std::vector<int> comp(std::size_t(mm + 1));
            for (int x = 0; x <= mm; ++x) comp[std::size_t(x)] = sigma[std::size_t(theta[std::size_t(x)])];
            std::vector<int> image(comp);
            image.erase(std::unique(image.begin(), image.end()), image.end());
            const int j = int(image.size()) - 1;
            Surjection tau(static_cast<std::size_t>(mm + 1));
            for (int x = 0; x <= mm; ++x)
                tau[std::size_t(x)] = int(std::lower_bound(image.begin(), image.end(), comp[std::size_t(x)]) - image.begin());
            const bool is_identity = j == k;
            const bool is_last_coface = j == k - 1 && image.back() == k - 1;
            if (!is_identity && !is_last_coface) continue;
            const std::size_t t = dst.index.at(tau);
            const ModuleMap core = is_identity ? ModuleMap::identity(c.at(k)) : c.d(k);
            terms.push_back(dst.sum.injections[t] * core * src.sum.projections[q]);
        }
        return sum_of(terms, src.sum.object, dst.sum.object);
    };
    std::vector<AugSimplicialObject::Level> levels;
    for (int n = 0; n <= top; ++n) {
        AugSimplicialObject::Level l{lv[std::size_t(n)].sum.object, {}, {}};
        if (n > 0)
            for (int i = 0; i <= n; ++i) {
                std::vector<int> delta(static_cast<std::size_t>(n));
                for (int x = 0; x < n; ++x) delta[std::size_t(x)] = x < i ? x : x + 1;
                l.faces.push_back(pull(n, n - 1, delta));
            }
        if (n < top)
            for (int i = 0; i <= n; ++i) {
                std::vector<int> s(static_cast<std::size_t>(n + 2));
                for (int x = 0; x <= n + 1; ++x) s[std::size_t(x)] = x <= i ? x : x - 1;
                l.degeneracies.push_back(pull(n, n + 1, s));
            }
        levels.push_back(std::move(l));
    }
    (void)m;
    return AugSimplicialObject(false, std::move(levels));
}

// ------------------------------------------------------------------ horns

void check_horn(const HomView& v, const Horn& h) {
    const auto& a = v.host();
    if (h.n < 1 || h.k < 0 || h.k > h.n) throw InvalidHorn("horn index out of range");
    if (h.faces.size() != std::size_t(h.n + 1)) throw InvalidHorn("horn needs n+1 face slots");
    if (!a.has_level(h.n) || !a.has_degeneracies(h.n - 1))
        throw TruncationTooShallow("horn filler needs level " + std::to_string(h.n) + " with degeneracies below");
    for (int i = 0; i <= h.n; ++i) {
        const auto& s = h.faces[std::size_t(i)];
        if (i == h.k) {
            if (s) throw InvalidHorn("missing face must be left empty");
            continue;
        }
        if (!s) throw InvalidHorn("face " + std::to_string(i) + " missing");
        if (!(s->dom() == v.p()) || !(s->cod() == a.object(h.n - 1))) throw InvalidHorn("face has wrong ends");
    }
    if (h.n < 2) return;
    for (int j = 0; j <= h.n; ++j)
        for (int i = 0; i < j; ++i) {
            if (i == h.k || j == h.k) continue;
            if (!(v.face(h.n - 1, i, *h.faces[std::size_t(j)]) == v.face(h.n - 1, j - 1, *h.faces[std::size_t(i)])))
                throw InvalidHorn("faces " + std::to_string(i) + " and " + std::to_string(j) + " are incompatible");
        }
}

ModuleMap fill_horn(const HomView& v, const Horn& h, bool check) {
    if (check) check_horn(v, h);
    ModuleMap w = v.zero(h.n);
    for (int i = 0; i < h.k; ++i)
        w = w + v.degeneracy(h.n - 1, i, *h.faces[std::size_t(i)] - v.face(h.n, i, w));
    for (int i = h.n; i > h.k; --i)
        w = w + v.degeneracy(h.n - 1, i - 1, *h.faces[std::size_t(i)] - v.face(h.n, i, w));
    return w;
}

// ----------------------------------------------------------- contractions

bool verify_contraction(const Contraction& c) {
    const auto& a = c.host;
    if (!a.augmented()) return false;
    for (std::size_t k = 0; k < c.h.size(); ++k) {
        const int n = int(k) - 1;
        if (!a.has_level(n + 1)) return false;
        const ModuleMap& hn = c.h[k];
        if (!(hn.dom() == a.object(n)) || !(hn.cod() == a.object(n + 1))) return false;
        if (!(a.face(n + 1, 0) * hn == ModuleMap::identity(a.object(n)))) return false;
        for (int i = 1; i <= n + 1; ++i)
            if (!(a.face(n + 1, i) * hn == c.h[k - 1] * a.face(n, i - 1))) return false;
    }
    return true;
}

bool verify_hom_contraction(const AugSimplicialObject& a, const HomContraction& c,
                            const std::vector<std::pair<int, ModuleMap>>& samples) {
    for (const auto& [n, f] : samples) {
        if (!a.has_level(n + 1)) return false;
        const ModuleMap hf = c.h(n, f);
        if (!(hf.dom() == c.p) || !(hf.cod() == a.object(n + 1))) return false;
        if (!(a.face(n + 1, 0) * hf == f)) return false;
        for (int i = 1; i <= n + 1; ++i)
            if (!(a.face(n + 1, i) * hf == c.h(n - 1, a.face(n, i - 1) * f))) return false;
    }
    return true;
}

// -------------------------------------------------------------- homotopies

bool verify_homotopy(const Homotopy& hh) {
    const auto& b = hh.f.source;
    const auto& a = hh.f.target;
    try {
        for (int n = 0; n <= hh.depth(); ++n) {
            const auto& hn = hh.h[std::size_t(n)];
            if (hn.size() != std::size_t(n + 1)) return false;
            for (const auto& x : hn)
                if (!(x.dom() == b.object(n)) || !(x.cod() == a.object(n + 1))) return false;
            if (!(a.face(n + 1, 0) * hn[0] == hh.f.at(n))) return false;
            if (!(a.face(n + 1, n + 1) * hn[std::size_t(n)] == hh.g.at(n))) return false;
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= n + 1; ++i) {
                    const ModuleMap lhs = a.face(n + 1, i) * hn[std::size_t(j)];
                    if (i < j) {
                        if (!(lhs == hh.h[std::size_t(n - 1)][std::size_t(j - 1)] * b.face(n, i))) return false;
                    } else if (i == j && i != 0) {
                        if (!(lhs == a.face(n + 1, i) * hn[std::size_t(i - 1)])) return false;
                    } else if (i > j + 1) {
                        if (!(lhs == hh.h[std::size_t(n - 1)][std::size_t(j)] * b.face(n, i - 1))) return false;
                    }
                }
        }
    } catch (const Error&) {
        return false;
    }
    return true;
}

// --------------------------------------------------------------- cocylinder

ModuleMap Cocylinder::tuple(int n, const std::vector<ModuleMap>& legs) const {
    const auto& inj = injections.at(std::size_t(n));
    if (legs.size() != inj.size()) throw DimensionMismatch("cocylinder tuple needs n+1 legs");
    const FpModule& dom = legs.front().dom();
    std::vector<ModuleMap> parts;
    for (std::size_t j = 0; j < legs.size(); ++j) parts.push_back(inj[j] * legs[j]);
    return factor_through_mono(power_embedding[std::size_t(n)], sum_of(parts, dom, inj.front().cod()));
}

Cocylinder cocylinder(const AugSimplicialObject& a0, int depth) {
    const AugSimplicialObject a = a0.without_augmentation();
    if (depth < 0) throw DegreeOutOfRange("cocylinder depth must be non-negative");
    if (a.top() < depth + 1) throw TruncationTooShallow("cocylinder to level " + std::to_string(depth) + " needs level " +
                                                        std::to_string(depth + 1));
    for (int n = 1; n <= depth; ++n)
        if (!a.has_degeneracies(n)) throw TruncationTooShallow("cocylinder needs degeneracies up to level " + std::to_string(depth));
    Cocylinder c;
    c.base = a.truncated(depth);
    for (int n = 0; n <= depth; ++n) {
        const FpModule& up = a.object(n + 1);
        const DirectSum power = direct_sum(std::vector<FpModule>(std::size_t(n + 1), up));
        std::vector<ModuleMap> constraints;
        for (int j = 1; j <= n; ++j)
            constraints.push_back(a.face(n + 1, j) * power.projections[std::size_t(j - 1)] -
                                  a.face(n + 1, j) * power.projections[std::size_t(j)]);
        const Subobject sub = joint_kernel(power.object, constraints);
        std::vector<ModuleMap> prs;
        for (int j = 0; j <= n; ++j) prs.push_back(power.projections[std::size_t(j)] * sub.embedding);
        c.pr.push_back(std::move(prs));
        c.power_embedding.push_back(sub.embedding);
        c.injections.push_back(power.injections);
    }
    std::vector<AugSimplicialObject::Level> levels;
    for (int n = 0; n <= depth; ++n) {
        const auto& pr = c.pr[std::size_t(n)];
        AugSimplicialObject::Level l{pr.front().dom(), {}, {}};
        for (int i = 0; n > 0 && i <= n; ++i) {
            std::vector<ModuleMap> legs;
            for (int j = 1; j <= n; ++j)
                legs.push_back(j <= i ? a.face(n + 1, i + 1) * pr[std::size_t(j - 1)] : a.face(n + 1, i) * pr[std::size_t(j)]);
            l.faces.push_back(c.tuple(n - 1, legs));
        }
        for (int i = 0; n < depth && i <= n; ++i) {
            std::vector<ModuleMap> legs;
            for (int k = 1; k <= n + 2; ++k)
                legs.push_back(k <= i + 1 ? a.degeneracy(n + 1, i + 1) * pr[std::size_t(k - 1)]
                                          : a.degeneracy(n + 1, i) * pr[std::size_t(k - 2)]);
            l.degeneracies.push_back(c.tuple(n + 1, legs));
        }
        levels.push_back(std::move(l));
    }
    c.object = AugSimplicialObject(false, std::move(levels), Validation::None);
    c.eps0 = {c.object, c.base, 0, {}};
    c.eps1 = {c.object, c.base, 0, {}};
    c.s = {c.base, c.object, 0, {}};
    for (int n = 0; n <= depth; ++n) {
        const auto& pr = c.pr[std::size_t(n)];
        c.eps0.components.push_back(a.face(n + 1, 0) * pr.front());
        c.eps1.components.push_back(a.face(n + 1, n + 1) * pr.back());
        std::vector<ModuleMap> legs;
        for (int i = 0; i <= n; ++i) legs.push_back(a.degeneracy(n, i));
        c.s.components.push_back(c.tuple(n, legs));
    }
    if (!verify_cocylinder(c)) throw ConstraintViolation("cocylinder identities fail");
    return c;
}

bool verify_cocylinder(const Cocylinder& c) {
    if (!validate_simplicial(c.object)) return false;
    if (!is_simplicial(c.eps0) || !is_simplicial(c.eps1) || !is_simplicial(c.s)) return false;
    for (int n = 0; n <= c.object.top(); ++n) {
        const ModuleMap id = ModuleMap::identity(c.base.object(n));
        if (!(c.eps0.at(n) * c.s.at(n) == id) || !(c.eps1.at(n) * c.s.at(n) == id)) return false;
    }
    return true;
}

SemiSimplicialMap homotopy_to_cocylinder(const Homotopy& h, const Cocylinder& c) {
    if (h.depth() > c.object.top()) throw TruncationTooShallow("cocylinder shallower than the homotopy");
    const AugSimplicialObject src = h.f.source.without_augmentation().truncated(h.depth());
    SemiSimplicialMap out{src, c.object.truncated(h.depth()), 0, {}};
    for (int n = 0; n <= h.depth(); ++n) out.components.push_back(c.tuple(n, h.h[std::size_t(n)]));
    return out;
}

Homotopy homotopy_from_cocylinder(const SemiSimplicialMap& big_h, const Cocylinder& c) {
    Homotopy out;
    out.f = {big_h.source, c.base, big_h.lo, {}};
    out.g = out.f;
    for (int n = big_h.lo; n <= big_h.top(); ++n) {
        out.f.components.push_back(c.eps0.at(n) * big_h.at(n));
        out.g.components.push_back(c.eps1.at(n) * big_h.at(n));
        std::vector<ModuleMap> hn;
        for (const auto& p : c.pr[std::size_t(n)]) hn.push_back(p * big_h.at(n));
        out.h.push_back(std::move(hn));
    }
    return out;
}

}  // namespace resolvent
