#include "resolvent/workbench.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <new>

#include "resolvent/error.hpp"
#include "resolvent/random.hpp"

namespace resolvent {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

FpModule coefficient_module(const Coefficients& e, Modulus m) {
    return e.kind == Coefficients::Kind::Identity ? FpModule::free(m, 1) : e.b;
}

// H_j of E A with the data needed to push maps through it.
HomologyData hdata(const AugSimplicialObject& ea, int j) { return homology_data_simplicial(ea, j); }

ModuleMap on_homology(const AugSimplicialObject& src, const AugSimplicialObject& dst, const ModuleMap& f, int j) {
    return induced_on_homology(hdata(src, j), hdata(dst, j), f);
}

}  // namespace

std::string to_string(const Method& m) {
    switch (m.kind) {
        case Method::Kind::Comonadic:
            return m.comonad == ComonadKind::SetFree ? "set-free" : "pointed-free";
        case Method::Kind::TV:
            switch (m.strategy) {
                case PresentationStrategy::SetBased: return "tv-set";
                case PresentationStrategy::PointedBased: return "tv-pointed";
                case PresentationStrategy::Minimal: return "tv-min";
            }
            break;
        case Method::Kind::Oracle:
            return "oracle";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view s) {
    std::string t(s);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (t == "oracle" || t == "tor") return Method::oracle();
    if (t.rfind("tv-", 0) == 0) {
        const std::string rest = t.substr(3);
        if (rest == "min" || rest == "minimal") return Method::tv(PresentationStrategy::Minimal);
        if (rest == "set") return Method::tv(PresentationStrategy::SetBased);
        if (rest == "pointed") return Method::tv(PresentationStrategy::PointedBased);
        return std::nullopt;
    }
    if (const auto k = parse_comonad_kind(t)) return Method::comonadic(*k);
    return std::nullopt;
}

Resolution resolve(const FpModule& x, const Method& m, int depth) {
    switch (m.kind) {
        case Method::Kind::Comonadic: {
            auto r = comonadic_resolution(m.comonad, x, depth);
            Resolution out{m, r.object, comonadic_contractions(r), {}};
            out.comonadic = std::move(r);
            return out;
        }
        case Method::Kind::TV: {
            const auto r = tv_resolution(x, m.strategy, depth);
            return {m, r.object, tv_contractions(r), {}};
        }
        case Method::Kind::Oracle:
            break;
    }
    throw InputError("the oracle method has no simplicial resolution");
}

AugSimplicialObject coefficient_object(const Coefficients& e, const AugSimplicialObject& a) {
    return apply_coefficients(e, a.without_augmentation(), Validation::None);
}

FpModule homology(const HomologyRequest& req) {
    if (req.n < 1) throw DegreeOutOfRange("comonadic homology starts at degree 1");
    if (req.method.kind == Method::Kind::Oracle)
        return tor_oracle(coefficient_module(req.e, req.x.modulus()), req.x, req.n - 1);
    const Resolution r = resolve(req.x, req.method, req.n);
    return homology_of_simplicial(coefficient_object(req.e, r.object), req.n - 1);
}

FpModule tor_oracle(const FpModule& b, const FpModule& x, int n) {
    if (n < 0) throw DegreeOutOfRange("Tor degree must be non-negative");
    if (b.modulus() != x.modulus()) throw ModulusMismatch("tor_oracle: moduli differ");
    const Modulus m = x.modulus();
    // F_0 -> x on the invariant-factor generators, then F_{k+1} onto ker(d_k).
    std::vector<FpModule> f{FpModule::free(m, x.rank())};
    ModuleMap cover(f[0], x, ResidueMatrix::identity(m, x.rank()));
    std::vector<ModuleMap> d;  // d[k] : F_{k+1} -> F_k
    ModuleMap last = cover;
    for (int k = 0; k <= n; ++k) {
        const Subobject ker = kernel(last);
        f.push_back(FpModule::free(m, ker.object().rank()));
        d.emplace_back(f.back(), f[std::size_t(k)], ker.embedding.matrix());
        last = d.back();
    }
    // b (x) F_{n+1} -> b (x) F_n -> b (x) F_{n-1}
    const ModuleMap in = tensor_map(b, d[std::size_t(n)]);
    const FpModule cn = in.cod();
    const Subobject z = n == 0 ? Subobject{cn, ModuleMap::identity(cn)} : kernel(tensor_map(b, d[std::size_t(n - 1)]));
    return cokernel(factor_through_mono(z.embedding, in)).q;
}

// ----------------------------------------------------------- comparisons

bool PairComparison::ok() const {
    if (depth < 0) return true;
    return extensions_ok && homotopies_ok &&
           std::all_of(inverse_on_homology.begin(), inverse_on_homology.end(), [](const auto& p) { return p.second; });
}

bool ComparisonReport::ok() const {
    return std::all_of(isomorphic.begin(), isomorphic.end(), [](const auto& p) { return p.second; }) &&
           std::all_of(pairs.begin(), pairs.end(), [](const PairComparison& p) { return p.ok(); });
}

namespace {

// Levels a resolution by m must reach for maps to depth d and a homotopy
// at depth d on it: the comonadic self-homotopy needs one level more, a
// homotopy built from horns two.
int needed_depth(const Method& m, int d) { return d + (m.kind == Method::Kind::Comonadic ? 1 : 2); }

Homotopy homotopy_to_identity(const Resolution& r, const SemiSimplicialMap& f, int d) {
    if (r.comonadic) return self_homotopy_fast(*r.comonadic, f);
    return build_homotopy({r.object, r.object, r.contraction}, f, identity_map(r.object, d), d);
}

}  // namespace

PairComparison compare_pair(const FpModule& x, const Coefficients& e, const Method& a, const Method& b, int n_max) {
    PairComparison out;
    out.a = a;
    out.b = b;
    if (!a.simplicial() || !b.simplicial()) {
        out.infeasible = "explicit maps need two simplicial methods";
        return out;
    }
    std::optional<Resolution> ra, rb;
    int d = n_max - 1;
    for (; d >= 0; --d) {
        try {
            ra = resolve(x, a, needed_depth(a, d));
            rb = resolve(x, b, needed_depth(b, d));
            break;
        } catch (const EnumerationTooLarge& err) {
            out.infeasible = err.what();
        }
    }
    if (d < 0) return out;
    out.infeasible.clear();
    out.depth = d;

    const ModuleMap id = ModuleMap::identity(x);
    const SemiSimplicialMap f = extend_map({ra->object, rb->object, rb->contraction}, id, d);
    const SemiSimplicialMap g = extend_map({rb->object, ra->object, ra->contraction}, id, d);
    out.extensions_ok = is_semi_simplicial(f) && is_semi_simplicial(g);

    const SemiSimplicialMap gf = compose(g, f), fg = compose(f, g);
    out.homotopies_ok = verify_homotopy(homotopy_to_identity(*ra, gf, d)) &&
                        verify_homotopy(homotopy_to_identity(*rb, fg, d));

    const AugSimplicialObject ea = coefficient_object(e, ra->object), eb = coefficient_object(e, rb->object);
    for (int j = 0; j <= d && j + 1 <= n_max; ++j) {
        const HomologyData ha = hdata(ea, j), hb = hdata(eb, j);
        const ModuleMap hf = induced_on_homology(ha, hb, e.on_map(f.at(j)));
        const ModuleMap hg = induced_on_homology(hb, ha, e.on_map(g.at(j)));
        out.inverse_on_homology.emplace_back(
            j + 1, hg * hf == ModuleMap::identity(ha.module) && hf * hg == ModuleMap::identity(hb.module));
    }
    return out;
}

ComparisonReport compare_methods(const FpModule& x, const Coefficients& e, const std::vector<Method>& methods,
                                 int n_max, bool explicit_maps) {
    if (n_max < 1) throw DegreeOutOfRange("comparison degrees start at 1");
    ComparisonReport rep{x, e, methods, n_max, {}, {}, {}};
    for (const Method& m : methods) {
        for (int n = 1; n <= n_max; ++n) {
            Cell c{m, n, std::nullopt, {}, 0};
            const auto t0 = Clock::now();
            try {
                c.value = homology({x, e, m, n});
            } catch (const EnumerationTooLarge& err) {
                c.infeasible = err.what();
            } catch (const std::bad_alloc&) {
                c.infeasible = "out of memory";
            }
            c.millis = millis_since(t0);
            rep.cells.push_back(std::move(c));
        }
    }
    for (int n = 1; n <= n_max; ++n) {
        std::optional<FpModule> first;
        bool same = true;
        for (const Cell& c : rep.cells) {
            if (c.degree != n || !c.value) continue;
            if (!first) first = c.value;
            else same = same && *first == *c.value;
        }
        rep.isomorphic.emplace_back(n, same);
    }
    if (explicit_maps) {
        for (std::size_t i = 0; i < methods.size(); ++i)
            for (std::size_t j = i + 1; j < methods.size(); ++j) {
                if (!methods[i].simplicial() || !methods[j].simplicial() || methods[i] == methods[j]) continue;
                try {
                    rep.pairs.push_back(compare_pair(x, e, methods[i], methods[j], n_max));
                } catch (const std::bad_alloc&) {
                    PairComparison p;
                    p.a = methods[i];
                    p.b = methods[j];
                    p.infeasible = "out of memory";
                    rep.pairs.push_back(std::move(p));
                }
            }
    }
    return rep;
}

// ------------------------------------------------------------ naturality

bool naturality_check(const ModuleMap& f, const Coefficients& e, const Method& a, const Method& b, int n) {
    if (n < 1) throw DegreeOutOfRange("naturality degrees start at 1");
    const int j = n - 1;
    const Resolution ax = resolve(f.dom(), a, n), ay = resolve(f.cod(), a, n);
    const Resolution bx = resolve(f.dom(), b, n), by = resolve(f.cod(), b, n);
    const SemiSimplicialMap fa = extend_map({ax.object, ay.object, ay.contraction}, f, j);
    const SemiSimplicialMap fb = extend_map({bx.object, by.object, by.contraction}, f, j);
    const SemiSimplicialMap cx = extend_map({ax.object, bx.object, bx.contraction}, ModuleMap::identity(f.dom()), j);
    const SemiSimplicialMap cy = extend_map({ay.object, by.object, by.contraction}, ModuleMap::identity(f.cod()), j);
    // Both composites are extensions of f from A X to B Y.
    const SemiSimplicialMap top = compose(cy, fa), bottom = compose(fb, cx);
    if (!is_semi_simplicial(top) || !is_semi_simplicial(bottom)) return false;
    if (!(top.at(-1) == f) || !(bottom.at(-1) == f)) return false;

    const auto eax = coefficient_object(e, ax.object), eay = coefficient_object(e, ay.object);
    const auto ebx = coefficient_object(e, bx.object), eby = coefficient_object(e, by.object);
    const ModuleMap h_fa = on_homology(eax, eay, e.on_map(fa.at(j)), j);
    const ModuleMap h_fb = on_homology(ebx, eby, e.on_map(fb.at(j)), j);
    const ModuleMap h_cx = on_homology(eax, ebx, e.on_map(cx.at(j)), j);
    const ModuleMap h_cy = on_homology(eay, eby, e.on_map(cy.at(j)), j);
    return h_cy * h_fa == h_fb * h_cx;
}

bool naturality_in_coefficients(const ModuleMap& alpha, const FpModule& x, const Method& a, const Method& b, int n) {
    if (n < 1) throw DegreeOutOfRange("naturality degrees start at 1");
    if (alpha.dom().modulus() != x.modulus()) throw ModulusMismatch("naturality_in_coefficients: moduli differ");
    const int j = n - 1;
    const Coefficients e = Coefficients::tensor_with(alpha.dom()), e2 = Coefficients::tensor_with(alpha.cod());
    const Resolution ra = resolve(x, a, n), rb = resolve(x, b, n);
    const SemiSimplicialMap c = extend_map({ra.object, rb.object, rb.contraction}, ModuleMap::identity(x), j);

    auto alpha_at = [&](const FpModule& m) { return tensor_map(alpha, ModuleMap::identity(m)); };
    // alpha (x) 1 commutes with every E(face) and with E(c) levelwise.
    for (const Resolution* r : {&ra, &rb})
        for (int k = 1; k <= n; ++k)
            for (const ModuleMap& dk : r->object.faces(k))
                if (!(e2.on_map(dk) * alpha_at(dk.dom()) == alpha_at(dk.cod()) * e.on_map(dk))) return false;
    for (int k = 0; k <= j; ++k)
        if (!(e2.on_map(c.at(k)) * alpha_at(c.at(k).dom()) == alpha_at(c.at(k).cod()) * e.on_map(c.at(k))))
            return false;

    const auto ea = coefficient_object(e, ra.object), eb = coefficient_object(e, rb.object);
    const auto ea2 = coefficient_object(e2, ra.object), eb2 = coefficient_object(e2, rb.object);
    const ModuleMap h_c = on_homology(ea, eb, e.on_map(c.at(j)), j);
    const ModuleMap h_c2 = on_homology(ea2, eb2, e2.on_map(c.at(j)), j);
    const ModuleMap h_alpha_a = on_homology(ea, ea2, alpha_at(ra.object.object(j)), j);
    const ModuleMap h_alpha_b = on_homology(eb, eb2, alpha_at(rb.object.object(j)), j);
    return h_c2 * h_alpha_a == h_alpha_b * h_c;
}

// -------------------------------------------------- homotopy invariance

bool InvarianceReport::ok() const {
    auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
    return cocylinder_simplicial && sections && all(eps_iso) && all(regular_pushout) && samples_ok == samples;
}

InvarianceReport verify_homotopy_invariance(const AugSimplicialObject& a0, std::uint64_t seed, int n_max) {
    if (n_max < 0) throw DegreeOutOfRange("verify_homotopy_invariance: negative degree");
    const AugSimplicialObject a = a0.without_augmentation();
    const Cocylinder cy = cocylinder(a, n_max + 1);
    const AugSimplicialObject& ai = cy.object;
    InvarianceReport rep;
    rep.cocylinder_simplicial = validate_simplicial(ai);
    rep.sections = true;
    for (int n = 0; n <= ai.top(); ++n) {
        const ModuleMap id = ModuleMap::identity(a.object(n));
        rep.sections = rep.sections && cy.eps0.at(n) * cy.s.at(n) == id && cy.eps1.at(n) * cy.s.at(n) == id;
    }
    for (int n = 0; n <= n_max; ++n) {
        const HomologyData hi = hdata(ai, n), ha = hdata(a, n);
        const ModuleMap e0 = induced_on_homology(hi, ha, cy.eps0.at(n));
        const ModuleMap e1 = induced_on_homology(hi, ha, cy.eps1.at(n));
        rep.eps_iso.push_back(is_injective(e0) && is_surjective(e0) && e0 == e1);
    }
    // N_{n+1} A^I -> N_{n+1} A over Z_n A^I -> Z_n A, vertical maps d'_{n+1}.
    const int sq_max = std::min(2, n_max);
    const MooreComplex mi = moore_complex(ai, sq_max + 1), ma = moore_complex(a, sq_max + 1);
    for (int n = 0; n <= sq_max; ++n) {
        auto restrict_to = [](const Subobject& into, const ModuleMap& g) { return factor_through_mono(into.embedding, g); };
        CospanSquare sq;
        sq.top = restrict_to(ma.normalized[n + 1], cy.eps0.at(n + 1) * mi.normalized[n + 1].embedding);
        sq.bottom = restrict_to(ma.cycles[n], cy.eps0.at(n) * mi.cycles[n].embedding);
        sq.left = restrict_to(mi.cycles[n], ai.face(n + 1, n + 1) * mi.normalized[n + 1].embedding);
        sq.right = restrict_to(ma.cycles[n], a.face(n + 1, n + 1) * ma.normalized[n + 1].embedding);
        bool ok = false;
        try {
            ok = regular_pushout_check(sq);
        } catch (const NotEpi&) {
        }
        rep.regular_pushout.push_back(ok);
    }
    // H = u 1 + v s eps0 + w s eps1 : A^I -> A^I, so f = eps0 H and g = eps1 H
    // are homotopic through H.
    Rng rng(seed);
    const Residue m = a.modulus().value();
    for (int t = 0; t < 4; ++t) {
        const Residue u = uniform(rng, m), v = uniform(rng, m), w = uniform(rng, m);
        SemiSimplicialMap big{ai, ai, 0, {}};
        for (int n = 0; n <= ai.top(); ++n) {
            const ModuleMap s0 = cy.s.at(n) * cy.eps0.at(n), s1 = cy.s.at(n) * cy.eps1.at(n);
            big.components.push_back(ModuleMap::identity(ai.object(n)).scaled(u) + s0.scaled(v) + s1.scaled(w));
        }
        bool ok = is_semi_simplicial(big);
        for (int n = 0; ok && n <= n_max; ++n) {
            const HomologyData hi = hdata(ai, n), ha = hdata(a, n);
            ok = induced_on_homology(hi, ha, cy.eps0.at(n) * big.at(n)) ==
                 induced_on_homology(hi, ha, cy.eps1.at(n) * big.at(n));
        }
        ++rep.samples;
        rep.samples_ok += ok;
    }
    return rep;
}

bool homotopic_maps_agree_on_homology(const Homotopy& h) {
    const AugSimplicialObject target = h.f.target.without_augmentation();
    const AugSimplicialObject source = h.f.source.without_augmentation();
    const int depth = h.depth();
    const Cocylinder cy = cocylinder(target, depth);
    const SemiSimplicialMap big = homotopy_to_cocylinder(h, cy);
    for (int n = 0; n <= depth; ++n)
        if (!(cy.eps0.at(n) * big.at(n) == h.f.at(n)) || !(cy.eps1.at(n) * big.at(n) == h.g.at(n))) return false;
    for (int n = 0; n < depth; ++n) {
        const HomologyData hs = hdata(source, n), ht = hdata(target, n);
        if (!(induced_on_homology(hs, ht, h.f.at(n)) == induced_on_homology(hs, ht, h.g.at(n)))) return false;
    }
    return true;
}

}  // namespace resolvent
