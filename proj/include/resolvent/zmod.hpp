#pragma once

// Exact linear algebra over the ring Z/m.
//
// Matrices act on column vectors. Entries are stored reduced into [0, m).
// Over F_2, large matrices switch to a bit-packed row-major layout; every
// accessor and operation behaves identically in both layouts.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace resolvent::zmod {

using Residue = std::uint64_t;
using Vector = std::vector<Residue>;

// Integer arithmetic helpers on plain residues.
Residue gcd(Residue a, Residue b);

class Modulus {
public:
    Modulus() = default;
    explicit Modulus(Residue m);

    Residue value() const { return m_; }
    bool is_prime() const;

    Residue reduce(std::int64_t x) const;
    Residue add(Residue a, Residue b) const { return (a + b) % m_; }
    Residue sub(Residue a, Residue b) const { return (a + m_ - b) % m_; }
    Residue mul(Residue a, Residue b) const { return (a * b) % m_; }
    Residue neg(Residue a) const { return (m_ - a) % m_; }

    // gcd(a, m) with gcd(0, m) = m; generates the same ideal as a.
    Residue ideal(Residue a) const { return gcd(a, m_); }
    // True iff b lies in the ideal generated by a.
    bool divides(Residue a, Residue b) const { return b % ideal(a) == 0; }
    // Some q with a*q = b, assuming divides(a, b).
    Residue quotient(Residue a, Residue b) const;
    // A unit u with a*u = ideal(a) (mod m).
    Residue normalizing_unit(Residue a) const;
    std::optional<Residue> inverse(Residue a) const;

    friend bool operator==(const Modulus&, const Modulus&) = default;

private:
    Residue m_ = 2;
};

class ResidueMatrix {
public:
    // Dimension above which F_2 matrices are stored bit-packed.
    static constexpr std::size_t kPackThreshold = 4096;

    ResidueMatrix() = default;
    ResidueMatrix(Modulus m, std::size_t rows, std::size_t cols);

    static ResidueMatrix identity(Modulus m, std::size_t n);
    static ResidueMatrix from_rows(Modulus m, const std::vector<std::vector<std::int64_t>>& rows);
    static ResidueMatrix from_columns(Modulus m, std::size_t rows, const std::vector<Vector>& cols);
    static ResidueMatrix column_vector(Modulus m, const Vector& v);

    const Modulus& modulus() const { return mod_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool packed() const { return packed_; }

    Residue operator()(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Residue v);
    void add_to(std::size_t r, std::size_t c, Residue v) { set(r, c, mod_.add((*this)(r, c), v)); }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    std::vector<std::vector<Residue>> to_rows() const;

    bool is_zero() const;
    ResidueMatrix transpose() const;
    ResidueMatrix scaled(Residue s) const;
    // Sub-block [r0, r0+nr) x [c0, c0+nc).
    ResidueMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const ResidueMatrix& b);
    ResidueMatrix select_columns(std::span<const std::size_t> idx) const;

    Vector apply(const Vector& x) const;

    friend bool operator==(const ResidueMatrix& a, const ResidueMatrix& b);

private:
    void check_index(std::size_t r, std::size_t c) const;
    std::size_t words_per_row() const { return (cols_ + 63) / 64; }

    Modulus mod_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    bool packed_ = false;
    std::vector<std::uint32_t> dense_;
    std::vector<std::uint64_t> bits_;

    friend ResidueMatrix mat_mul(const ResidueMatrix&, const ResidueMatrix&);
};

ResidueMatrix mat_mul(const ResidueMatrix& a, const ResidueMatrix& b);
inline ResidueMatrix operator*(const ResidueMatrix& a, const ResidueMatrix& b) { return mat_mul(a, b); }
ResidueMatrix operator+(const ResidueMatrix& a, const ResidueMatrix& b);
ResidueMatrix operator-(const ResidueMatrix& a, const ResidueMatrix& b);
ResidueMatrix hstack(const std::vector<ResidueMatrix>& parts);
ResidueMatrix vstack(const std::vector<ResidueMatrix>& parts);
ResidueMatrix block_diagonal(const std::vector<ResidueMatrix>& parts);

// u * a * v = diag, with diag[i] a divisor of m (m standing for zero) and
// diag[0] | diag[1] | ... . Transforms are only filled when requested.
struct SmithForm {
    std::vector<Residue> diag;  // length min(rows, cols)
    ResidueMatrix u;
    ResidueMatrix u_inv;
    ResidueMatrix v;
};

struct SmithRequest {
    bool u = false;
    bool u_inv = false;
    bool v = false;
};

SmithForm smith_form(const ResidueMatrix& a, SmithRequest want);

// Howell canonical row form: h holds only the nonzero canonical rows and
// u * a = h. Two matrices have the same row span iff their h agree.
struct HowellForm {
    ResidueMatrix h;
    ResidueMatrix u;
};

HowellForm howell_form(const ResidueMatrix& a);

// Streaming Howell reduction of a row span; rows may be inserted one at a time.
class HowellBasis {
public:
    HowellBasis(Modulus m, std::size_t width);

    void insert(Vector v);
    // True iff v lies in the span of everything inserted so far.
    bool contains(Vector v) const;
    // Canonical rows (reduced above pivots), ordered by pivot column.
    ResidueMatrix canonical_rows() const;
    std::size_t width() const { return width_; }

private:
    struct Row {
        std::size_t pivot;
        Vector v;
    };
    void push_annihilator(const Row& r, std::vector<Vector>& queue) const;
    void normalize(Row& r) const;

    Modulus mod_;
    std::size_t width_;
    std::vector<std::optional<Row>> rows_;  // indexed by pivot column
};

// Columns generating {x : a x = 0}.
ResidueMatrix kernel_generators(const ResidueMatrix& a);

// Some x with a x = b, or nullopt when b is outside the column span.
std::optional<Vector> solve(const ResidueMatrix& a, const Vector& b);

// Solver that factors a once and then answers many right-hand sides.
class Solver {
public:
    explicit Solver(const ResidueMatrix& a);
    std::optional<Vector> operator()(const Vector& b) const;

private:
    Modulus mod_;
    std::size_t rows_, cols_;
    SmithForm smith_;
};

// A small generating set (as columns) for the column span of a.
ResidueMatrix column_span_generators(const ResidueMatrix& a);

}  // namespace resolvent::zmod
