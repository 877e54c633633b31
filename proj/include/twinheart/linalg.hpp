#pragma once

// Dense linear algebra over a prime field F_p.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace twinheart {

using Vec = std::vector<int>;

class Fp {
public:
    explicit Fp(int p = 2);

    int p() const { return p_; }
    int add(int a, int b) const { int s = a + b; return s >= p_ ? s - p_ : s; }
    int sub(int a, int b) const { int s = a - b; return s < 0 ? s + p_ : s; }
    int neg(int a) const { return a == 0 ? 0 : p_ - a; }
    int mul(int a, int b) const { return (a * b) % p_; }
    int inv(int a) const;
    int norm(long long a) const { long long r = a % p_; return int(r < 0 ? r + p_ : r); }

    // y += c * x
    void axpy(Vec& y, int c, const Vec& x) const;
    Vec scaled(int c, const Vec& x) const;
    Vec sum(const Vec& a, const Vec& b) const;
    Vec diff(const Vec& a, const Vec& b) const;

    static bool is_prime(int p);

private:
    int p_;
};

bool is_zero(const Vec& v);

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}

    static Matrix identity(int n);
    static Matrix from_columns(int rows, const std::vector<Vec>& cols);
    static Matrix from_rows(int cols, const std::vector<Vec>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
    int operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

    Vec row(int r) const;
    Vec col(int c) const;
    void set_col(int c, const Vec& v);
    Matrix transposed() const;

    bool operator==(const Matrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> data_;
};

Matrix multiply(const Fp& f, const Matrix& a, const Matrix& b);
Vec apply(const Fp& f, const Matrix& a, const Vec& x);

struct Echelon {
    Matrix reduced;
    std::vector<int> pivots;  // pivot column of each nonzero row, increasing
};

Echelon rref(const Fp& f, Matrix m);
int rank(const Fp& f, const Matrix& m);
// Basis of { x : a x = 0 }.
std::vector<Vec> nullspace(const Fp& f, const Matrix& a);
// Some x with a x = b, if one exists.
std::optional<Vec> solve(const Fp& f, const Matrix& a, const Vec& b);
std::optional<Matrix> inverse(const Fp& f, const Matrix& a);

// A linear subspace of F_p^n. The basis is kept in reduced row echelon
// form, so reduce() gives a canonical representative of each coset and
// quotient_coords() a fixed linear projection onto F_p^n / subspace.
class Subspace {
public:
    Subspace() = default;
    Subspace(Fp f, int ambient) : f_(f), ambient_(ambient) {}

    static Subspace span(Fp f, int ambient, const std::vector<Vec>& gens);

    int dim() const { return int(basis_.size()); }
    int ambient_dim() const { return ambient_; }
    int codim() const { return ambient_ - dim(); }
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    // Returns true when v was not already contained.
    bool add(const Vec& v);
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;

    // Positions that are not pivots; they index the quotient coordinates.
    std::vector<int> free_positions() const;
    Vec quotient_coords(const Vec& v) const;
    Vec lift(const Vec& qcoords) const;

private:
    Fp f_;
    int ambient_ = 0;
    std::vector<Vec> basis_;
    std::vector<int> pivots_;
};

// Number of subspaces of F_p^n of every dimension (Gaussian binomials).
std::uint64_t subspace_count(int p, int n);

namespace detail {
bool enumerate_subspaces(const Fp& f, int n, int dim,
                         const std::function<bool(const std::vector<Vec>&)>& visit);
}

// Every subspace of F_p^n of the given dimension, each passed to visit as
// its reduced echelon basis. Stops early (returning false) when visit does.
template <class Visit>
bool for_each_subspace(const Fp& f, int n, int dim, Visit&& visit)
{
    return detail::enumerate_subspaces(f, n, dim, std::forward<Visit>(visit));
}

}  // namespace twinheart
