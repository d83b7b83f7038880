#include "resolvent/module.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "resolvent/error.hpp"

namespace resolvent {

namespace {

using Orders = std::vector<Residue>;

ResidueMatrix relation_diagonal(Modulus m, const Orders& orders) {
    // Columns o_i e_i; an order equal to m contributes a zero column, dropped.
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == m.value()) continue;
        Vector v(orders.size(), 0);
        v[i] = orders[i] % m.value();
        cols.push_back(std::move(v));
    }
    return ResidueMatrix::from_columns(m, orders.size(), cols);
}

ResidueMatrix with_relations(const ResidueMatrix& a, const Orders& cod_orders) {
    const ResidueMatrix d = relation_diagonal(a.modulus(), cod_orders);
    if (d.cols() == 0) return a;
    if (a.cols() == 0) return d;
    return zmod::hstack({a, d});
}

void reduce_rows(ResidueMatrix& a, const Orders& orders) {
    const Residue m = a.modulus().value();
    if (std::all_of(orders.begin(), orders.end(), [m](Residue o) { return o == m; })) return;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (orders[r] == m) continue;
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (const auto v = a(r, c); v % orders[r] != v) a.set(r, c, v % orders[r]);
    }
}

// Submodule of the cyclic sum with the given orders generated by the columns
// of gens; returns the canonical object and its embedding in raw coordinates.
struct RawSub {
    FpModule object;
    ResidueMatrix embedding;
};

RawSub raw_submodule(Modulus m, const Orders& orders, const ResidueMatrix& gens) {
    zmod::HowellBasis basis(m, orders.size());
    for (std::size_t c = 0; c < gens.cols(); ++c) {
        Vector v = gens.column(c);
        if (std::any_of(v.begin(), v.end(), [](Residue x) { return x; })) basis.insert(std::move(v));
    }
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == m.value()) continue;
        Vector v(orders.size(), 0);
        v[i] = orders[i];
        basis.insert(std::move(v));
    }
    const ResidueMatrix s = basis.canonical_rows().transpose();
    const ResidueMatrix rel_full = zmod::kernel_generators(with_relations(s, orders));
    const ResidueMatrix relations = rel_full.block(0, 0, s.cols(), rel_full.cols());
    Decomposition dec = canonical_decompose(s.cols(), relations);
    ResidueMatrix emb = s * dec.lift;
    if (emb.cols() == 0) emb = ResidueMatrix(m, orders.size(), 0);
    reduce_rows(emb, orders);
    return {dec.module, emb};
}

// Generators (raw, in dom coordinates) of {x : a x = 0 in the cod cyclic sum}.
ResidueMatrix raw_kernel(const ResidueMatrix& a, const Orders& cod_orders) {
    const ResidueMatrix k = zmod::kernel_generators(with_relations(a, cod_orders));
    return k.block(0, 0, a.cols(), k.cols());
}

Orders orders_of(const FpModule& m) { return m.factors(); }

zmod::HowellBasis span_basis(const ResidueMatrix& gens, const Orders& orders) {
    const Modulus m = gens.modulus();
    zmod::HowellBasis basis(m, orders.size());
    for (std::size_t c = 0; c < gens.cols(); ++c) basis.insert(gens.column(c));
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == m.value()) continue;
        Vector v(orders.size(), 0);
        v[i] = orders[i];
        basis.insert(std::move(v));
    }
    return basis;
}

bool raw_span_contains(const zmod::HowellBasis& basis, const ResidueMatrix& gens) {
    for (std::size_t c = 0; c < gens.cols(); ++c)
        if (!basis.contains(gens.column(c))) return false;
    return true;
}

ResidueMatrix to_matrix(const CyclicCanonical& cc) {
    if (!cc.permutation) return cc.to;
    const Modulus m = cc.module.modulus();
    ResidueMatrix t(m, cc.module.rank(), cc.orders.size());
    for (std::size_t i = 0; i < cc.orders.size(); ++i)
        if (cc.position[i] >= 0) t.set(std::size_t(cc.position[i]), i, 1);
    return t;
}

ResidueMatrix from_matrix(const CyclicCanonical& cc) {
    if (!cc.permutation) return cc.from;
    const Modulus m = cc.module.modulus();
    ResidueMatrix f(m, cc.orders.size(), cc.module.rank());
    for (std::size_t k = 0; k < cc.source.size(); ++k) f.set(cc.source[k], k, 1);
    return f;
}

Orders tensor_orders(const FpModule& b, const FpModule& m) {
    Orders out;
    out.reserve(b.rank() * m.rank());
    for (const Residue d : m.factors())
        for (const Residue e : b.factors()) out.push_back(zmod::gcd(d, e));
    return out;
}

}  // namespace

std::uint64_t default_enumeration_guard() {
    if (const char* env = std::getenv("RESOLVENT_MAX_ENUM")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return std::uint64_t(1) << 20;
}

// ------------------------------------------------------------- FpModule

FpModule::FpModule(Modulus m, std::vector<Residue> factors, std::string label)
    : mod_(m), factors_(std::move(factors)), label_(std::move(label)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Residue d = factors_[i];
        if (d < 2 || m.value() % d != 0)
            throw InputError("invariant factor " + std::to_string(d) + " must be >= 2 and divide the modulus");
        if (i > 0 && d % factors_[i - 1] != 0) throw InputError("invariant factors must form a divisibility chain");
    }
}

FpModule FpModule::free(Modulus m, std::size_t rank) { return FpModule(m, std::vector<Residue>(rank, m.value())); }

FpModule FpModule::cyclic(Modulus m, Residue order) {
    if (order == 1) return zero(m);
    return FpModule(m, {order});
}

bool FpModule::is_free() const {
    return std::all_of(factors_.begin(), factors_.end(), [&](Residue d) { return d == mod_.value(); });
}

std::optional<std::uint64_t> FpModule::size() const {
    std::uint64_t s = 1;
    for (const Residue d : factors_) {
        if (s > (std::uint64_t(1) << 63) / d) return std::nullopt;
        s *= d;
    }
    return s;
}

double FpModule::log2_size() const {
    double s = 0;
    for (const Residue d : factors_) s += std::log2(double(d));
    return s;
}

Vector FpModule::reduce(Vector x) const {
    if (x.size() != factors_.size()) throw DimensionMismatch("element length differs from module rank");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] %= factors_[i];
    return x;
}

bool FpModule::is_zero_element(const Vector& x) const {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] % factors_[i]) return false;
    return true;
}

std::string FpModule::to_string() const {
    if (factors_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " + " : "") << "Z/" << factors_[i];
    return os.str();
}

// ------------------------------------------------------------- ModuleMap

ModuleMap::ModuleMap(FpModule dom, FpModule cod, ResidueMatrix matrix)
    : dom_(std::move(dom)), cod_(std::move(cod)), matrix_(std::move(matrix)) {
    if (dom_.modulus() != cod_.modulus() || matrix_.modulus() != dom_.modulus())
        throw ModulusMismatch("module map: moduli differ");
    if (matrix_.rows() != cod_.rank() || matrix_.cols() != dom_.rank())
        throw DimensionMismatch("module map: matrix is " + std::to_string(matrix_.rows()) + "x" +
                                std::to_string(matrix_.cols()) + ", expected " + std::to_string(cod_.rank()) +
                                "x" + std::to_string(dom_.rank()));
    const Modulus md = dom_.modulus();
    const bool dom_free = dom_.is_free(), cod_free = cod_.is_free();
    if (dom_free && cod_free) return;
    for (std::size_t j = 0; j < matrix_.rows(); ++j) {
        const Residue e = cod_.factors()[j];
        for (std::size_t i = 0; i < matrix_.cols(); ++i) {
            Residue a = matrix_(j, i);
            if (a == 0) continue;
            if (e != md.value() && a % e != a) {
                a %= e;
                matrix_.set(j, i, a);
            }
            if (!dom_free && (a * dom_.factors()[i]) % e != 0)
                throw InputError("module map not well defined: entry (" + std::to_string(j) + "," +
                                 std::to_string(i) + ") times " + std::to_string(dom_.factors()[i]) +
                                 " is nonzero mod " + std::to_string(e));
        }
    }
}

ModuleMap ModuleMap::identity(const FpModule& m) {
    return ModuleMap(m, m, ResidueMatrix::identity(m.modulus(), m.rank()));
}

ModuleMap ModuleMap::zero(const FpModule& dom, const FpModule& cod) {
    return ModuleMap(dom, cod, ResidueMatrix(dom.modulus(), cod.rank(), dom.rank()));
}

Vector ModuleMap::apply(const Vector& x) const { return cod_.reduce(matrix_.apply(x)); }

ModuleMap ModuleMap::scaled(Residue s) const { return ModuleMap(dom_, cod_, matrix_.scaled(s)); }

ModuleMap operator*(const ModuleMap& g, const ModuleMap& f) {
    if (!(g.dom() == f.cod())) throw DimensionMismatch("composite: " + f.cod().to_string() + " vs " + g.dom().to_string());
    return ModuleMap(f.dom(), g.cod(), g.matrix() * f.matrix());
}

ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
    if (!(a.dom() == b.dom()) || !(a.cod() == b.cod())) throw DimensionMismatch("sum of maps with different ends");
    return ModuleMap(a.dom(), a.cod(), a.matrix() + b.matrix());
}

ModuleMap operator-(const ModuleMap& a, const ModuleMap& b) {
    if (!(a.dom() == b.dom()) || !(a.cod() == b.cod())) throw DimensionMismatch("difference of maps with different ends");
    return ModuleMap(a.dom(), a.cod(), a.matrix() - b.matrix());
}

// ------------------------------------------------------ decompositions

Decomposition canonical_decompose(std::size_t g, const ResidueMatrix& relations) {
    const Modulus m = relations.modulus();
    if (relations.rows() != g) throw DimensionMismatch("relations must have one row per generator");
    ResidueMatrix rel = relations;
    if (rel.cols() > g) rel = zmod::column_span_generators(rel);
    const zmod::SmithForm s = zmod::smith_form(rel, {.u = true, .u_inv = true});
    std::vector<std::size_t> keep;
    std::vector<Residue> factors;
    for (std::size_t i = 0; i < g; ++i) {
        const Residue d = i < s.diag.size() ? s.diag[i] : m.value();
        if (d == 1) continue;
        keep.push_back(i);
        factors.push_back(d);
    }
    FpModule mod(m, factors);
    ResidueMatrix proj(m, keep.size(), g), lift(m, g, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k)
        for (std::size_t c = 0; c < g; ++c) {
            proj.set(k, c, s.u(keep[k], c) % factors[k]);
            lift.set(c, k, s.u_inv(c, keep[k]));
        }
    return {mod, ModuleMap(FpModule::free(m, g), mod, proj), lift};
}

CyclicCanonical canonicalize_cyclic(Modulus m, std::vector<Residue> orders) {
    CyclicCanonical cc;
    cc.orders = orders;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == 0 || m.value() % orders[i] != 0) throw InputError("cyclic order must divide the modulus");
        if (orders[i] != 1) idx.push_back(i);
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return orders[a] < orders[b]; });
    bool chain = true;
    for (std::size_t k = 1; k < idx.size(); ++k) chain = chain && orders[idx[k]] % orders[idx[k - 1]] == 0;
    if (chain) {
        std::vector<Residue> f;
        cc.position.assign(orders.size(), -1);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            f.push_back(orders[idx[k]]);
            cc.position[idx[k]] = std::ptrdiff_t(k);
        }
        cc.source = idx;
        cc.module = FpModule(m, f);
        cc.permutation = true;
        return cc;
    }
    Decomposition dec = canonical_decompose(orders.size(), relation_diagonal(m, orders));
    cc.module = dec.module;
    cc.permutation = false;
    cc.to = dec.projection.matrix();
    cc.from = dec.lift;
    return cc;
}

FpModule canonical_module(Modulus m, std::vector<Residue> orders) {
    return canonicalize_cyclic(m, std::move(orders)).module;
}

DirectSum direct_sum(const std::vector<FpModule>& parts) {
    if (parts.empty()) throw InputError("direct sum of no modules needs a modulus");
    const Modulus m = parts.front().modulus();
    Orders orders;
    std::vector<std::size_t> offset;
    for (const auto& p : parts) {
        if (p.modulus() != m) throw ModulusMismatch("direct sum: moduli differ");
        offset.push_back(orders.size());
        orders.insert(orders.end(), p.factors().begin(), p.factors().end());
    }
    const CyclicCanonical cc = canonicalize_cyclic(m, orders);
    const ResidueMatrix to = to_matrix(cc), from = from_matrix(cc);
    DirectSum out{cc.module, {}, {}};
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const std::size_t r = parts[p].rank();
        out.injections.emplace_back(parts[p], cc.module, to.block(0, offset[p], cc.module.rank(), r));
        out.projections.emplace_back(cc.module, parts[p], from.block(offset[p], 0, r, cc.module.rank()));
    }
    return out;
}

// ------------------------------------------------------ kernels & friends

Subobject generated_submodule(const FpModule& m, const ResidueMatrix& generators) {
    RawSub s = raw_submodule(m.modulus(), orders_of(m), generators);
    return {m, ModuleMap(s.object, m, s.embedding)};
}

Subobject kernel(const ModuleMap& f) {
    return generated_submodule(f.dom(), raw_kernel(f.matrix(), orders_of(f.cod())));
}

Subobject joint_kernel(const FpModule& dom, const std::vector<ModuleMap>& fs) {
    if (fs.empty()) return {dom, ModuleMap::identity(dom)};
    std::vector<ResidueMatrix> blocks;
    Orders cod_orders;
    for (const auto& f : fs) {
        if (!(f.dom() == dom)) throw DimensionMismatch("joint_kernel: maps out of different modules");
        blocks.push_back(f.matrix());
        cod_orders.insert(cod_orders.end(), f.cod().factors().begin(), f.cod().factors().end());
    }
    if (cod_orders.empty()) return {dom, ModuleMap::identity(dom)};
    return generated_submodule(dom, raw_kernel(zmod::vstack(blocks), cod_orders));
}

Subobject intersect(const Subobject& a, const Subobject& b) {
    if (!(a.ambient == b.ambient)) throw DimensionMismatch("intersect: different ambient modules");
    const ResidueMatrix& ea = a.embedding.matrix();
    const ResidueMatrix stacked = zmod::hstack({ea, b.embedding.matrix().scaled(a.ambient.modulus().neg(1))});
    const ResidueMatrix k = raw_kernel(stacked, orders_of(a.ambient));
    if (k.cols() == 0 || ea.cols() == 0) return generated_submodule(a.ambient, ResidueMatrix(ea.modulus(), ea.rows(), 0));
    return generated_submodule(a.ambient, ea * k.block(0, 0, ea.cols(), k.cols()));
}

Cokernel cokernel(const ModuleMap& f) {
    const FpModule& n = f.cod();
    const ResidueMatrix rel = with_relations(f.matrix(), orders_of(n));
    Decomposition dec = canonical_decompose(n.rank(), rel.cols() ? rel : ResidueMatrix(n.modulus(), n.rank(), 0));
    ModuleMap proj(n, dec.module, dec.projection.matrix());
    return {proj, dec.module, dec.lift};
}

ImageFactorization image_factorization(const ModuleMap& f) {
    Subobject img = generated_submodule(f.cod(), f.matrix());
    ModuleMap epi = factor_through_mono(img.embedding, f);
    return {epi, img};
}

bool same_submodule(const Subobject& a, const Subobject& b) {
    if (!(a.ambient == b.ambient)) return false;
    const Orders o = orders_of(a.ambient);
    return span_basis(a.embedding.matrix(), o).canonical_rows() == span_basis(b.embedding.matrix(), o).canonical_rows();
}

bool is_contained(const Subobject& a, const Subobject& b) {
    if (!(a.ambient == b.ambient)) return false;
    return raw_span_contains(span_basis(b.embedding.matrix(), orders_of(b.ambient)), a.embedding.matrix());
}

bool is_injective(const ModuleMap& f) { return kernel(f).object().is_zero(); }

bool is_surjective(const ModuleMap& f) {
    const FpModule& n = f.cod();
    const zmod::HowellBasis basis = span_basis(f.matrix(), orders_of(n));
    for (std::size_t i = 0; i < n.rank(); ++i) {
        Vector e(n.rank(), 0);
        e[i] = 1;
        if (!basis.contains(e)) return false;
    }
    return true;
}

bool is_isomorphic(const FpModule& a, const FpModule& b) { return a == b; }

bool is_exact_at(const ModuleMap& f, const ModuleMap& g) {
    if (!(f.cod() == g.dom())) throw DimensionMismatch("is_exact_at: cod(f) differs from dom(g)");
    return same_submodule(generated_submodule(f.cod(), f.matrix()), kernel(g));
}

PreimageSolver::PreimageSolver(const ModuleMap& f)
    : dom_(f.dom()), cod_(f.cod()), solver_(with_relations(f.matrix(), orders_of(f.cod()))) {}

std::optional<Vector> PreimageSolver::operator()(const Vector& y) const {
    auto sol = solver_(cod_.reduce(y));
    if (!sol) return std::nullopt;
    sol->resize(dom_.rank());
    return dom_.reduce(std::move(*sol));
}

std::optional<Vector> preimage(const ModuleMap& f, const Vector& y) { return PreimageSolver(f)(y); }

ModuleMap factor_through_mono(const ModuleMap& mono, const ModuleMap& g) {
    if (!(mono.cod() == g.cod())) throw DimensionMismatch("factor_through_mono: codomains differ");
    const PreimageSolver solve(mono);
    ResidueMatrix u(g.dom().modulus(), mono.dom().rank(), g.dom().rank());
    for (std::size_t c = 0; c < g.dom().rank(); ++c) {
        const auto x = solve(g.matrix().column(c));
        if (!x) throw ConstraintViolation("map does not factor through the given subobject");
        for (std::size_t r = 0; r < x->size(); ++r)
            if ((*x)[r]) u.set(r, c, (*x)[r]);
    }
    return ModuleMap(g.dom(), mono.dom(), u);
}

std::optional<ModuleMap> lift_through(const ModuleMap& f, const ModuleMap& g) {
    if (!(f.cod() == g.cod())) throw DimensionMismatch("lift_through: codomains differ");
    const PreimageSolver solve(f);
    ResidueMatrix u(g.dom().modulus(), f.dom().rank(), g.dom().rank());
    for (std::size_t c = 0; c < g.dom().rank(); ++c) {
        const auto x = solve(g.matrix().column(c));
        if (!x) return std::nullopt;
        for (std::size_t r = 0; r < x->size(); ++r)
            if ((*x)[r]) u.set(r, c, (*x)[r]);
    }
    try {
        return ModuleMap(g.dom(), f.dom(), u);
    } catch (const InputError&) {
        return std::nullopt;
    }
}

// ------------------------------------------------------------- limits

Limit finite_limit(const Diagram& d) {
    if (d.objects.empty()) throw InputError("finite_limit: empty diagram");
    const Modulus m = d.objects.front().modulus();
    Orders dom_orders;
    std::vector<std::size_t> offset;
    for (const auto& o : d.objects) {
        offset.push_back(dom_orders.size());
        dom_orders.insert(dom_orders.end(), o.factors().begin(), o.factors().end());
    }
    Orders cod_orders;
    std::vector<std::size_t> row_offset;
    for (const auto& a : d.arrows) {
        if (a.source >= d.objects.size() || a.target >= d.objects.size()) throw InputError("arrow index out of range");
        if (!(a.map.dom() == d.objects[a.source]) || !(a.map.cod() == d.objects[a.target]))
            throw DimensionMismatch("arrow map does not match diagram objects");
        row_offset.push_back(cod_orders.size());
        const auto& t = d.objects[a.target].factors();
        cod_orders.insert(cod_orders.end(), t.begin(), t.end());
    }
    ResidueMatrix c(m, cod_orders.size(), dom_orders.size());
    for (std::size_t k = 0; k < d.arrows.size(); ++k) {
        const auto& a = d.arrows[k];
        const std::size_t rt = d.objects[a.target].rank(), rs = d.objects[a.source].rank();
        for (std::size_t r = 0; r < rt; ++r) {
            for (std::size_t s = 0; s < rs; ++s)
                c.add_to(row_offset[k] + r, offset[a.source] + s, a.map.matrix()(r, s));
            c.add_to(row_offset[k] + r, offset[a.target] + r, m.neg(1));
        }
    }
    const ResidueMatrix gens =
        cod_orders.empty() ? ResidueMatrix::identity(m, dom_orders.size()) : raw_kernel(c, cod_orders);
    RawSub sub = raw_submodule(m, dom_orders, gens);
    Limit out{sub.object, {}};
    for (std::size_t i = 0; i < d.objects.size(); ++i)
        out.projections.emplace_back(sub.object, d.objects[i],
                                     sub.embedding.block(offset[i], 0, d.objects[i].rank(), sub.object.rank()));
    return out;
}

Limit pullback(const ModuleMap& f, const ModuleMap& g) {
    if (!(f.cod() == g.cod())) throw DimensionMismatch("pullback: codomains differ");
    Diagram d{{f.dom(), g.dom(), f.cod()}, {{0, 2, f}, {1, 2, g}}};
    return finite_limit(d);
}

Limit kernel_pair(const ModuleMap& f) { return pullback(f, f); }

Limit equalizer(const ModuleMap& f, const ModuleMap& g) {
    if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw DimensionMismatch("equalizer: maps not parallel");
    Diagram d{{f.dom(), f.cod()}, {{0, 1, f}, {0, 1, g}}};
    return finite_limit(d);
}

SimplicialKernel simplicial_kernel(const std::vector<ModuleMap>& fs) {
    if (fs.empty()) throw InputError("simplicial kernel of an empty family");
    const FpModule& x = fs.front().dom();
    const FpModule& y = fs.front().cod();
    for (const auto& f : fs)
        if (!(f.dom() == x) || !(f.cod() == y)) throw DimensionMismatch("simplicial kernel: maps not parallel");
    const Modulus m = x.modulus();
    const std::size_t n = fs.size() - 1, copies = n + 2, rx = x.rank(), ry = y.rank();
    Orders dom_orders, cod_orders;
    for (std::size_t i = 0; i < copies; ++i) dom_orders.insert(dom_orders.end(), x.factors().begin(), x.factors().end());
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < copies; ++j)
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    for (std::size_t p = 0; p < pairs.size(); ++p) cod_orders.insert(cod_orders.end(), y.factors().begin(), y.factors().end());
    ResidueMatrix c(m, cod_orders.size(), dom_orders.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        // f_i x_j - f_{j-1} x_i
        const ResidueMatrix& fi = fs[i].matrix();
        const ResidueMatrix& fj = fs[j - 1].matrix();
        for (std::size_t r = 0; r < ry; ++r)
            for (std::size_t s = 0; s < rx; ++s) {
                c.add_to(p * ry + r, j * rx + s, fi(r, s));
                c.add_to(p * ry + r, i * rx + s, m.neg(fj(r, s)));
            }
    }
    const ResidueMatrix gens =
        cod_orders.empty() ? ResidueMatrix::identity(m, dom_orders.size()) : raw_kernel(c, cod_orders);
    RawSub sub = raw_submodule(m, dom_orders, gens);
    SimplicialKernel out;
    out.object = sub.object;
    for (std::size_t i = 0; i < copies; ++i)
        out.projections.emplace_back(sub.object, x, sub.embedding.block(i * rx, 0, rx, sub.object.rank()));
    const DirectSum power = direct_sum(std::vector<FpModule>(copies, x));
    ModuleMap emb = ModuleMap::zero(sub.object, power.object);
    for (std::size_t i = 0; i < copies; ++i) emb = emb + power.injections[i] * out.projections[i];
    out.inside_power = {power.object, emb};
    return out;
}

ModuleMap into_simplicial_kernel(const SimplicialKernel& k, const std::vector<ModuleMap>& legs) {
    if (legs.size() != k.projections.size()) throw DimensionMismatch("simplicial kernel: wrong number of legs");
    const FpModule& x = k.projections.front().cod();
    const DirectSum power = direct_sum(std::vector<FpModule>(legs.size(), x));
    ModuleMap into = ModuleMap::zero(legs.front().dom(), power.object);
    for (std::size_t i = 0; i < legs.size(); ++i) into = into + power.injections[i] * legs[i];
    return factor_through_mono(k.inside_power.embedding, into);
}

bool regular_pushout_check(const CospanSquare& sq) {
    if (!(sq.right * sq.top == sq.bottom * sq.left)) throw InputError("regular_pushout_check: square does not commute");
    if (!is_surjective(sq.top) || !is_surjective(sq.bottom)) throw NotEpi("regular_pushout_check: horizontal map not surjective");
    const Limit pb = pullback(sq.bottom, sq.right);  // projections to X and Y'
    // Comparison X' -> X x_Y Y' through the pullback's embedding in X + Y'.
    const Modulus m = sq.top.dom().modulus();
    const FpModule& x = sq.bottom.dom();
    const FpModule& yp = sq.right.dom();
    Orders orders = x.factors();
    orders.insert(orders.end(), yp.factors().begin(), yp.factors().end());
    const ResidueMatrix pb_emb = zmod::vstack({pb.projections[0].matrix(), pb.projections[1].matrix()});
    const ResidueMatrix cmp = zmod::vstack({sq.left.matrix(), sq.top.matrix()});
    (void)m;
    return raw_span_contains(span_basis(cmp, orders), pb_emb);
}

// ------------------------------------------------------------- tensor

FpModule tensor(const FpModule& b, const FpModule& m) {
    if (b.modulus() != m.modulus()) throw ModulusMismatch("tensor: moduli differ");
    return canonicalize_cyclic(m.modulus(), tensor_orders(b, m)).module;
}

ModuleMap tensor_map(const ModuleMap& alpha, const ModuleMap& phi) {
    if (alpha.dom().modulus() != phi.dom().modulus()) throw ModulusMismatch("tensor_map: moduli differ");
    const Modulus md = phi.dom().modulus();
    const FpModule &b = alpha.dom(), &bp = alpha.cod(), &m = phi.dom(), &n = phi.cod();
    const CyclicCanonical dom = canonicalize_cyclic(md, tensor_orders(b, m));
    const CyclicCanonical cod = canonicalize_cyclic(md, tensor_orders(bp, n));
    const std::size_t nb = b.rank(), nbp = bp.rank();

    // Nonzero entries of alpha and phi.
    struct Entry {
        std::size_t r, c;
        Residue v;
    };
    std::vector<Entry> ae;
    for (std::size_t r = 0; r < nbp; ++r)
        for (std::size_t c = 0; c < nb; ++c)
            if (const auto v = alpha.matrix()(r, c)) ae.push_back({r, c, v});

    if (dom.permutation && cod.permutation) {
        ResidueMatrix out(md, cod.module.rank(), dom.module.rank());
        for (std::size_t i = 0; i < m.rank(); ++i)
            for (std::size_t j = 0; j < n.rank(); ++j) {
                const Residue p = phi.matrix()(j, i);
                if (!p) continue;
                for (const auto& a : ae) {
                    const std::ptrdiff_t col = dom.position[i * nb + a.c];
                    const std::ptrdiff_t row = cod.position[j * nbp + a.r];
                    if (col < 0 || row < 0) continue;
                    const Residue o = cod.orders[j * nbp + a.r];
                    out.add_to(std::size_t(row), std::size_t(col), md.mul(a.v, p) % o);
                }
            }
        return ModuleMap(dom.module, cod.module, out);
    }
    ResidueMatrix raw(md, cod.orders.size(), dom.orders.size());
    for (std::size_t i = 0; i < m.rank(); ++i)
        for (std::size_t j = 0; j < n.rank(); ++j) {
            const Residue p = phi.matrix()(j, i);
            if (!p) continue;
            for (const auto& a : ae) raw.add_to(j * nbp + a.r, i * nb + a.c, md.mul(a.v, p));
        }
    return ModuleMap(dom.module, cod.module, to_matrix(cod) * raw * from_matrix(dom));
}

// --------------------------------------------------------- enumeration

std::vector<Vector> enumerate_elements(const FpModule& m, std::uint64_t guard) {
    const auto size = m.size();
    if (!size || *size > guard)
        throw EnumerationTooLarge("module " + m.to_string() + " has more than " + std::to_string(guard) + " elements");
    std::vector<Vector> out;
    out.reserve(*size);
    Vector x(m.rank(), 0);
    for (std::uint64_t k = 0; k < *size; ++k) {
        out.push_back(x);
        for (std::size_t i = m.rank(); i-- > 0;) {
            if (++x[i] < m.factors()[i]) break;
            x[i] = 0;
        }
    }
    return out;
}

std::uint64_t element_index(const FpModule& m, const Vector& x) {
    if (x.size() != m.rank()) throw DimensionMismatch("element_index: length differs from rank");
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) idx = idx * m.factors()[i] + x[i] % m.factors()[i];
    return idx;
}

Vector element_at(const FpModule& m, std::uint64_t index) {
    Vector x(m.rank(), 0);
    for (std::size_t i = m.rank(); i-- > 0;) {
        x[i] = index % m.factors()[i];
        index /= m.factors()[i];
    }
    return x;
}

}  // namespace resolvent
