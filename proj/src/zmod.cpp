#include "resolvent/zmod.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <utility>

#include "resolvent/error.hpp"

namespace resolvent::zmod {

namespace {

struct ExtGcd {
    std::int64_t g, s, t;
};

// g = s*a + t*b with g = gcd(a, b) >= 0.
ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - q * r};
        std::tie(old_s, s) = std::pair{s, old_s - q * s};
        std::tie(old_t, t) = std::pair{t, old_t - q * t};
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

using Dense = std::vector<Vector>;

Dense dense_identity(std::size_t n) {
    Dense d(n, Vector(n, 0));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
    return d;
}

ResidueMatrix from_dense(Modulus m, const Dense& d, std::size_t cols) {
    ResidueMatrix out(m, d.size(), cols);
    for (std::size_t r = 0; r < d.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (d[r][c]) out.set(r, c, d[r][c]);
    return out;
}

// Elimination state for the Smith reduction. Row operations act on w and u
// (and inversely on the columns of u_inv); column operations act on w and v.
class SmithWork {
public:
    SmithWork(const ResidueMatrix& a, SmithRequest want)
        : md_(a.modulus()), want_(want), rows_(a.rows()), cols_(a.cols()) {
        w_ = Dense(rows_, Vector(cols_, 0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) w_[r][c] = a(r, c);
        if (want_.u) u_ = dense_identity(rows_);
        if (want_.u_inv) uinv_ = dense_identity(rows_);
        if (want_.v) v_ = dense_identity(cols_);
    }

    SmithForm run() {
        const std::size_t n = std::min(rows_, cols_);
        std::vector<Residue> diag(n, md_.value());
        for (std::size_t t = 0; t < n; ++t) {
            if (!place_pivot(t)) break;
            reduce_at(t);
            const Residue unit = md_.normalizing_unit(w_[t][t]);
            col_scale(t, unit);
            diag[t] = w_[t][t];
        }
        SmithForm out;
        out.diag = std::move(diag);
        if (want_.u) out.u = from_dense(md_, u_, rows_);
        if (want_.u_inv) out.u_inv = from_dense(md_, uinv_, rows_);
        if (want_.v) out.v = from_dense(md_, v_, cols_);
        return out;
    }

private:
    bool place_pivot(std::size_t t) {
        std::size_t bi = rows_, bj = cols_;
        Residue best = std::numeric_limits<Residue>::max();
        for (std::size_t i = t; i < rows_; ++i)
            for (std::size_t j = t; j < cols_; ++j)
                if (w_[i][j] != 0) {
                    const Residue id = md_.ideal(w_[i][j]);
                    if (id < best) {
                        best = id;
                        bi = i;
                        bj = j;
                        if (id == 1) goto found;
                    }
                }
        if (bi == rows_) return false;
    found:
        row_swap(t, bi);
        col_swap(t, bj);
        return true;
    }

    void reduce_at(std::size_t t) {
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows_; ++i) {
                if (w_[i][t] == 0) continue;
                const Residue a = w_[t][t], b = w_[i][t];
                if (md_.divides(a, b)) {
                    row_axpy(i, t, md_.neg(md_.quotient(a, b)));
                } else {
                    const auto e = ext_gcd(std::int64_t(a), std::int64_t(b));
                    row_combine(t, i, md_.reduce(e.s), md_.reduce(e.t), md_.reduce(-std::int64_t(b) / e.g),
                                md_.reduce(std::int64_t(a) / e.g));
                }
            }
            for (std::size_t j = t + 1; j < cols_; ++j) {
                if (w_[t][j] == 0) continue;
                const Residue a = w_[t][t], b = w_[t][j];
                if (md_.divides(a, b)) {
                    col_axpy(j, t, md_.neg(md_.quotient(a, b)));
                } else {
                    const auto e = ext_gcd(std::int64_t(a), std::int64_t(b));
                    col_combine(t, j, md_.reduce(e.s), md_.reduce(e.t), md_.reduce(-std::int64_t(b) / e.g),
                                md_.reduce(std::int64_t(a) / e.g));
                    dirty = true;
                }
            }
            if (dirty) continue;
            bool column_clear = true;
            for (std::size_t i = t + 1; i < rows_; ++i) column_clear = column_clear && w_[i][t] == 0;
            if (!column_clear) continue;
            // The pivot must divide the whole remaining block.
            bool fixed = false;
            for (std::size_t i = t + 1; i < rows_ && !fixed; ++i)
                for (std::size_t j = t + 1; j < cols_; ++j)
                    if (!md_.divides(w_[t][t], w_[i][j])) {
                        row_axpy(t, i, 1);
                        fixed = true;
                        break;
                    }
            if (!fixed) return;
        }
    }

    // [row_i; row_j] <- [[s, t], [p, q]] [row_i; row_j], determinant 1.
    void row_combine(std::size_t i, std::size_t j, Residue s, Residue t, Residue p, Residue q) {
        auto mix = [&](Dense& d) {
            for (std::size_t c = 0; c < d[i].size(); ++c) {
                const Residue a = d[i][c], b = d[j][c];
                d[i][c] = md_.add(md_.mul(s, a), md_.mul(t, b));
                d[j][c] = md_.add(md_.mul(p, a), md_.mul(q, b));
            }
        };
        mix(w_);
        if (want_.u) mix(u_);
        if (want_.u_inv) {
            // Right-multiply by the inverse [[q, -t], [-p, s]].
            for (auto& row : uinv_) {
                const Residue a = row[i], b = row[j];
                row[i] = md_.sub(md_.mul(q, a), md_.mul(p, b));
                row[j] = md_.sub(md_.mul(s, b), md_.mul(t, a));
            }
        }
    }
    // row_i += q * row_j
    void row_axpy(std::size_t i, std::size_t j, Residue q) {
        auto go = [&](Dense& d) {
            for (std::size_t c = 0; c < d[i].size(); ++c) d[i][c] = md_.add(d[i][c], md_.mul(q, d[j][c]));
        };
        go(w_);
        if (want_.u) go(u_);
        if (want_.u_inv)
            for (auto& row : uinv_) row[j] = md_.sub(row[j], md_.mul(q, row[i]));
    }
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(w_[i], w_[j]);
        if (want_.u) std::swap(u_[i], u_[j]);
        if (want_.u_inv)
            for (auto& row : uinv_) std::swap(row[i], row[j]);
    }
    // new col_i = s col_i + t col_j, new col_j = p col_i + q col_j.
    void col_combine(std::size_t i, std::size_t j, Residue s, Residue t, Residue p, Residue q) {
        auto mix = [&](Dense& d) {
            for (auto& row : d) {
                const Residue a = row[i], b = row[j];
                row[i] = md_.add(md_.mul(s, a), md_.mul(t, b));
                row[j] = md_.add(md_.mul(p, a), md_.mul(q, b));
            }
        };
        mix(w_);
        if (want_.v) mix(v_);
    }
    // col_i += q * col_j
    void col_axpy(std::size_t i, std::size_t j, Residue q) {
        auto go = [&](Dense& d) {
            for (auto& row : d) row[i] = md_.add(row[i], md_.mul(q, row[j]));
        };
        go(w_);
        if (want_.v) go(v_);
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (auto& row : w_) std::swap(row[i], row[j]);
        if (want_.v)
            for (auto& row : v_) std::swap(row[i], row[j]);
    }
    void col_scale(std::size_t i, Residue unit) {
        for (auto& row : w_) row[i] = md_.mul(row[i], unit);
        if (want_.v)
            for (auto& row : v_) row[i] = md_.mul(row[i], unit);
    }

    Modulus md_;
    SmithRequest want_;
    std::size_t rows_, cols_;
    Dense w_, u_, uinv_, v_;
};

}  // namespace

// ---------------------------------------------------------------- Modulus

Residue gcd(Residue a, Residue b) {
    while (b != 0) {
        const Residue t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Modulus::Modulus(Residue m) : m_(m) {
    if (m < 2 || m > (Residue(1) << 31)) throw InputError("modulus must satisfy 2 <= m <= 2^31");
}

bool Modulus::is_prime() const {
    for (Residue d = 2; d * d <= m_; ++d)
        if (m_ % d == 0) return false;
    return true;
}

Residue Modulus::reduce(std::int64_t x) const {
    const std::int64_t m = std::int64_t(m_);
    std::int64_t r = x % m;
    if (r < 0) r += m;
    return Residue(r);
}

std::optional<Residue> Modulus::inverse(Residue a) const {
    const auto e = ext_gcd(std::int64_t(a % m_), std::int64_t(m_));
    if (e.g != 1) return std::nullopt;
    return reduce(e.s);
}

Residue Modulus::quotient(Residue a, Residue b) const {
    const Residue g = ideal(a);
    if (g == m_) return 0;  // a = 0, so b = 0
    const Residue mp = m_ / g;
    if (mp == 1) return 0;
    const Modulus sub(mp < 2 ? 2 : mp);
    const Residue inv = *sub.inverse((a / g) % mp);
    return ((b / g) % mp) * inv % mp;
}

Residue Modulus::normalizing_unit(Residue a) const {
    const Residue g = ideal(a);
    if (g == m_) return 1;
    const Residue mp = m_ / g;
    Residue u0 = 1;
    if (mp > 1) u0 = *Modulus(mp).inverse((a / g) % mp);
    for (Residue k = 0;; ++k) {
        const Residue u = (u0 + k * mp) % m_;
        if (gcd(u, m_) == 1) return u;
    }
}

// --------------------------------------------------------- ResidueMatrix

ResidueMatrix::ResidueMatrix(Modulus m, std::size_t rows, std::size_t cols)
    : mod_(m), rows_(rows), cols_(cols) {
    packed_ = m.value() == 2 && (rows > kPackThreshold || cols > kPackThreshold);
    if (packed_)
        bits_.assign(rows * words_per_row(), 0);
    else
        dense_.assign(rows * cols, 0);
}

ResidueMatrix ResidueMatrix::identity(Modulus m, std::size_t n) {
    ResidueMatrix out(m, n, n);
    for (std::size_t i = 0; i < n; ++i) out.set(i, i, 1);
    return out;
}

ResidueMatrix ResidueMatrix::from_rows(Modulus m, const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t nc = rows.empty() ? 0 : rows.front().size();
    ResidueMatrix out(m, rows.size(), nc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc) throw DimensionMismatch("ragged matrix rows");
        for (std::size_t c = 0; c < nc; ++c) out.set(r, c, m.reduce(rows[r][c]));
    }
    return out;
}

ResidueMatrix ResidueMatrix::from_columns(Modulus m, std::size_t rows, const std::vector<Vector>& cols) {
    ResidueMatrix out(m, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw DimensionMismatch("column length differs from row count");
        for (std::size_t r = 0; r < rows; ++r)
            if (cols[c][r] % m.value()) out.set(r, c, cols[c][r] % m.value());
    }
    return out;
}

ResidueMatrix ResidueMatrix::column_vector(Modulus m, const Vector& v) { return from_columns(m, v.size(), {v}); }

void ResidueMatrix::check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw DimensionMismatch("matrix index out of range");
}

Residue ResidueMatrix::operator()(std::size_t r, std::size_t c) const {
    if (packed_) return (bits_[r * words_per_row() + c / 64] >> (c % 64)) & 1u;
    return dense_[r * cols_ + c];
}

void ResidueMatrix::set(std::size_t r, std::size_t c, Residue v) {
    check_index(r, c);
    v %= mod_.value();
    if (packed_) {
        auto& w = bits_[r * words_per_row() + c / 64];
        const std::uint64_t bit = std::uint64_t(1) << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    } else {
        dense_[r * cols_ + c] = std::uint32_t(v);
    }
}

Vector ResidueMatrix::row(std::size_t r) const {
    Vector out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
    return out;
}

Vector ResidueMatrix::column(std::size_t c) const {
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

std::vector<std::vector<Residue>> ResidueMatrix::to_rows() const {
    std::vector<std::vector<Residue>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = row(r);
    return out;
}

bool ResidueMatrix::is_zero() const {
    if (packed_) return std::all_of(bits_.begin(), bits_.end(), [](auto w) { return w == 0; });
    return std::all_of(dense_.begin(), dense_.end(), [](auto w) { return w == 0; });
}

ResidueMatrix ResidueMatrix::transpose() const {
    ResidueMatrix out(mod_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (const auto v = (*this)(r, c)) out.set(c, r, v);
    return out;
}

ResidueMatrix ResidueMatrix::scaled(Residue s) const {
    ResidueMatrix out(mod_, rows_, cols_);
    s %= mod_.value();
    if (s == 0) return out;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (const auto v = (*this)(r, c)) out.set(r, c, mod_.mul(v, s));
    return out;
}

ResidueMatrix ResidueMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
    ResidueMatrix out(mod_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c)
            if (const auto v = (*this)(r0 + r, c0 + c)) out.set(r, c, v);
    return out;
}

void ResidueMatrix::set_block(std::size_t r0, std::size_t c0, const ResidueMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionMismatch("block out of range");
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) set(r0 + r, c0 + c, b(r, c));
}

ResidueMatrix ResidueMatrix::select_columns(std::span<const std::size_t> idx) const {
    ResidueMatrix out(mod_, rows_, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (std::size_t r = 0; r < rows_; ++r)
            if (const auto v = (*this)(r, idx[k])) out.set(r, k, v);
    return out;
}

Vector ResidueMatrix::apply(const Vector& x) const {
    if (x.size() != cols_) throw DimensionMismatch("vector length differs from column count");
    Vector out(rows_, 0);
    for (std::size_t c = 0; c < cols_; ++c) {
        const Residue xc = x[c] % mod_.value();
        if (xc == 0) continue;
        for (std::size_t r = 0; r < rows_; ++r)
            if (const auto v = (*this)(r, c)) out[r] = mod_.add(out[r], mod_.mul(v, xc));
    }
    return out;
}

bool operator==(const ResidueMatrix& a, const ResidueMatrix& b) {
    if (a.mod_ != b.mod_ || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    if (a.packed_ == b.packed_) return a.packed_ ? a.bits_ == b.bits_ : a.dense_ == b.dense_;
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t c = 0; c < a.cols_; ++c)
            if (a(r, c) != b(r, c)) return false;
    return true;
}

ResidueMatrix mat_mul(const ResidueMatrix& a, const ResidueMatrix& b) {
    if (a.modulus() != b.modulus()) throw ModulusMismatch("mat_mul: moduli differ");
    if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul: inner dimensions differ");
    const Modulus md = a.modulus();
    ResidueMatrix out(md, a.rows(), b.cols());
    const std::size_t inner = a.cols();

    if (md.value() == 2) {
        // Row-major XOR accumulation over bit rows of b.
        const std::size_t wpr = (b.cols() + 63) / 64;
        std::vector<std::uint64_t> brows(b.rows() * wpr, 0);
        if (b.packed()) {
            brows = b.bits_;
        } else {
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    if (b.dense_[r * b.cols() + c]) brows[r * wpr + c / 64] |= std::uint64_t(1) << (c % 64);
        }
        std::vector<std::uint64_t> acc(wpr);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            auto add_row = [&](std::size_t k) {
                const std::uint64_t* src = brows.data() + k * wpr;
                for (std::size_t w = 0; w < wpr; ++w) acc[w] ^= src[w];
            };
            if (a.packed()) {
                const std::size_t awpr = a.words_per_row();
                for (std::size_t w = 0; w < awpr; ++w) {
                    std::uint64_t word = a.bits_[i * awpr + w];
                    while (word) {
                        add_row(w * 64 + std::size_t(std::countr_zero(word)));
                        word &= word - 1;
                    }
                }
            } else {
                for (std::size_t k = 0; k < inner; ++k)
                    if (a.dense_[i * inner + k]) add_row(k);
            }
            if (out.packed()) {
                std::copy(acc.begin(), acc.end(), out.bits_.begin() + std::ptrdiff_t(i * wpr));
            } else {
                for (std::size_t c = 0; c < b.cols(); ++c)
                    out.dense_[i * b.cols() + c] = std::uint32_t((acc[c / 64] >> (c % 64)) & 1u);
            }
        }
        return out;
    }

    const Residue m = md.value();
    // Delay reductions while the accumulator cannot overflow.
    const std::size_t batch = std::max<std::size_t>(1, std::numeric_limits<Residue>::max() / ((m - 1) * (m - 1) + 1) - 1);
    std::vector<Residue> acc(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        std::size_t pending = 0;
        for (std::size_t k = 0; k < inner; ++k) {
            const Residue av = a.dense_[i * inner + k];
            if (!av) continue;
            const std::uint32_t* brow = b.dense_.data() + k * b.cols();
            for (std::size_t c = 0; c < b.cols(); ++c) acc[c] += av * brow[c];
            if (++pending >= batch) {
                for (auto& x : acc) x %= m;
                pending = 0;
            }
        }
        for (std::size_t c = 0; c < b.cols(); ++c) out.dense_[i * b.cols() + c] = std::uint32_t(acc[c] % m);
    }
    return out;
}

namespace {
void check_same_shape(const ResidueMatrix& a, const ResidueMatrix& b) {
    if (a.modulus() != b.modulus()) throw ModulusMismatch("moduli differ");
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("shapes differ");
}
}  // namespace

ResidueMatrix operator+(const ResidueMatrix& a, const ResidueMatrix& b) {
    check_same_shape(a, b);
    ResidueMatrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (const auto v = b(r, c)) out.set(r, c, a.modulus().add(a(r, c), v));
    return out;
}

ResidueMatrix operator-(const ResidueMatrix& a, const ResidueMatrix& b) {
    check_same_shape(a, b);
    ResidueMatrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (const auto v = b(r, c)) out.set(r, c, a.modulus().sub(a(r, c), v));
    return out;
}

ResidueMatrix hstack(const std::vector<ResidueMatrix>& parts) {
    if (parts.empty()) throw DimensionMismatch("hstack of nothing");
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != parts.front().rows()) throw DimensionMismatch("hstack row counts differ");
        if (p.modulus() != parts.front().modulus()) throw ModulusMismatch("hstack moduli differ");
        cols += p.cols();
    }
    ResidueMatrix out(parts.front().modulus(), parts.front().rows(), cols);
    std::size_t c0 = 0;
    for (const auto& p : parts) {
        out.set_block(0, c0, p);
        c0 += p.cols();
    }
    return out;
}

ResidueMatrix vstack(const std::vector<ResidueMatrix>& parts) {
    if (parts.empty()) throw DimensionMismatch("vstack of nothing");
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != parts.front().cols()) throw DimensionMismatch("vstack column counts differ");
        if (p.modulus() != parts.front().modulus()) throw ModulusMismatch("vstack moduli differ");
        rows += p.rows();
    }
    ResidueMatrix out(parts.front().modulus(), rows, parts.front().cols());
    std::size_t r0 = 0;
    for (const auto& p : parts) {
        out.set_block(r0, 0, p);
        r0 += p.rows();
    }
    return out;
}

ResidueMatrix block_diagonal(const std::vector<ResidueMatrix>& parts) {
    if (parts.empty()) throw DimensionMismatch("block_diagonal of nothing");
    std::size_t rows = 0, cols = 0;
    for (const auto& p : parts) {
        rows += p.rows();
        cols += p.cols();
    }
    ResidueMatrix out(parts.front().modulus(), rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& p : parts) {
        out.set_block(r0, c0, p);
        r0 += p.rows();
        c0 += p.cols();
    }
    return out;
}

// ----------------------------------------------------------- Smith / Howell

SmithForm smith_form(const ResidueMatrix& a, SmithRequest want) { return SmithWork(a, want).run(); }

HowellBasis::HowellBasis(Modulus m, std::size_t width) : mod_(m), width_(width), rows_(width) {}

void HowellBasis::normalize(Row& r) const {
    const Residue u = mod_.normalizing_unit(r.v[r.pivot]);
    if (u != 1)
        for (auto& x : r.v) x = mod_.mul(x, u);
}

void HowellBasis::push_annihilator(const Row& r, std::vector<Vector>& queue) const {
    const Residue p = r.v[r.pivot];
    if (p == 1) return;
    const Residue k = mod_.value() / p;
    Vector ann(r.v.size());
    bool nonzero = false;
    for (std::size_t i = 0; i < ann.size(); ++i) {
        ann[i] = mod_.mul(r.v[i], k);
        nonzero = nonzero || ann[i] != 0;
    }
    if (nonzero) queue.push_back(std::move(ann));
}

void HowellBasis::insert(Vector v) {
    if (v.size() != width_) throw DimensionMismatch("HowellBasis::insert width");
    for (auto& x : v) x %= mod_.value();
    std::vector<Vector> queue{std::move(v)};
    while (!queue.empty()) {
        Vector x = std::move(queue.back());
        queue.pop_back();
        for (std::size_t c = 0; c < width_; ++c) {
            if (x[c] == 0) continue;
            if (!rows_[c]) {
                Row r{c, std::move(x)};
                normalize(r);
                push_annihilator(r, queue);
                rows_[c] = std::move(r);
                break;
            }
            Row& r = *rows_[c];
            const Residue a = r.v[c], b = x[c];
            if (b % a == 0) {
                const Residue q = b / a;
                for (std::size_t i = c; i < width_; ++i) x[i] = mod_.sub(x[i], mod_.mul(q, r.v[i]));
                continue;
            }
            const auto e = ext_gcd(std::int64_t(a), std::int64_t(b));
            const Residue s = mod_.reduce(e.s), t = mod_.reduce(e.t);
            const Residue p = mod_.reduce(-std::int64_t(b) / e.g), q = mod_.reduce(std::int64_t(a) / e.g);
            for (std::size_t i = c; i < width_; ++i) {
                const Residue ri = r.v[i], xi = x[i];
                r.v[i] = mod_.add(mod_.mul(s, ri), mod_.mul(t, xi));
                x[i] = mod_.add(mod_.mul(p, ri), mod_.mul(q, xi));
            }
            normalize(r);
            push_annihilator(r, queue);
        }
    }
}

bool HowellBasis::contains(Vector v) const {
    if (v.size() != width_) throw DimensionMismatch("HowellBasis::contains width");
    for (std::size_t c = 0; c < width_; ++c) {
        v[c] %= mod_.value();
        if (v[c] == 0) continue;
        if (!rows_[c]) return false;
        const Row& r = *rows_[c];
        if (v[c] % r.v[c] != 0) return false;
        const Residue q = v[c] / r.v[c];
        for (std::size_t i = c; i < width_; ++i) v[i] = mod_.sub(v[i] % mod_.value(), mod_.mul(q, r.v[i]));
    }
    return true;
}

ResidueMatrix HowellBasis::canonical_rows() const {
    std::vector<Row> rows;
    for (const auto& r : rows_)
        if (r) rows.push_back(*r);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::size_t c = rows[k].pivot;
        const Residue p = rows[k].v[c];
        for (std::size_t j = 0; j < k; ++j) {
            const Residue q = rows[j].v[c] / p;
            if (q == 0) continue;
            for (std::size_t i = c; i < width_; ++i)
                rows[j].v[i] = mod_.sub(rows[j].v[i], mod_.mul(q, rows[k].v[i]));
        }
    }
    ResidueMatrix out(mod_, rows.size(), width_);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < width_; ++c)
            if (rows[r].v[c]) out.set(r, c, rows[r].v[c]);
    return out;
}

HowellForm howell_form(const ResidueMatrix& a) {
    const Modulus md = a.modulus();
    const std::size_t nc = a.cols(), nr = a.rows();
    // Augment each row with its own unit vector to record the transform.
    HowellBasis basis(md, nc + nr);
    for (std::size_t r = 0; r < nr; ++r) {
        Vector v(nc + nr, 0);
        for (std::size_t c = 0; c < nc; ++c) v[c] = a(r, c);
        v[nc + r] = 1;
        basis.insert(std::move(v));
    }
    const ResidueMatrix all = basis.canonical_rows();
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < all.rows(); ++r) {
        bool nonzero = false;
        for (std::size_t c = 0; c < nc && !nonzero; ++c) nonzero = all(r, c) != 0;
        if (nonzero) keep.push_back(r);
    }
    HowellForm out{ResidueMatrix(md, keep.size(), nc), ResidueMatrix(md, keep.size(), nr)};
    for (std::size_t k = 0; k < keep.size(); ++k) {
        for (std::size_t c = 0; c < nc; ++c) out.h.set(k, c, all(keep[k], c));
        for (std::size_t c = 0; c < nr; ++c) out.u.set(k, c, all(keep[k], nc + c));
    }
    return out;
}

// ------------------------------------------------------- kernels / solving

ResidueMatrix kernel_generators(const ResidueMatrix& a) {
    const Modulus md = a.modulus();
    const SmithForm s = smith_form(a, {.v = true});
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < a.cols(); ++i) {
        const Residue d = i < s.diag.size() ? s.diag[i] : md.value();
        const Residue mult = md.value() / d;
        if (mult == md.value()) continue;
        Vector g = s.v.column(i);
        bool nonzero = false;
        for (auto& x : g) {
            x = md.mul(x, mult);
            nonzero = nonzero || x != 0;
        }
        if (nonzero) gens.push_back(std::move(g));
    }
    return ResidueMatrix::from_columns(md, a.cols(), gens);
}

Solver::Solver(const ResidueMatrix& a)
    : mod_(a.modulus()), rows_(a.rows()), cols_(a.cols()), smith_(smith_form(a, {.u = true, .v = true})) {}

std::optional<Vector> Solver::operator()(const Vector& b) const {
    if (b.size() != rows_) throw DimensionMismatch("solve: right-hand side length");
    const Vector c = smith_.u.apply(b);
    Vector y(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i >= smith_.diag.size()) {
            if (c[i] != 0) return std::nullopt;
            continue;
        }
        const Residue d = smith_.diag[i];
        if (c[i] % d != 0) return std::nullopt;
        y[i] = d == mod_.value() ? 0 : c[i] / d;
    }
    return smith_.v.apply(y);
}

std::optional<Vector> solve(const ResidueMatrix& a, const Vector& b) { return Solver(a)(b); }

ResidueMatrix column_span_generators(const ResidueMatrix& a) {
    HowellBasis basis(a.modulus(), a.rows());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        Vector v = a.column(c);
        if (std::any_of(v.begin(), v.end(), [](Residue x) { return x != 0; })) basis.insert(std::move(v));
    }
    return basis.canonical_rows().transpose();
}

}  // namespace resolvent::zmod
