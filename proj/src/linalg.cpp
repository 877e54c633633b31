#include "twinheart/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace twinheart {

Fp::Fp(int p) : p_(p)
{
    if (!is_prime(p))
        throw std::invalid_argument("field order " + std::to_string(p) + " is not prime");
    if (p > 46337)
        throw std::invalid_argument("field order too large for int arithmetic");
}

bool Fp::is_prime(int p)
{
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

int Fp::inv(int a) const
{
    if (a == 0)
        throw std::domain_error("inverse of zero in F_p");
    // extended Euclid
    int t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
        int q = r / nr;
        int tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return t < 0 ? t + p_ : t;
}

void Fp::axpy(Vec& y, int c, const Vec& x) const
{
    if (c == 0)
        return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0)
            y[i] = (y[i] + c * x[i]) % p_;
}

Vec Fp::scaled(int c, const Vec& x) const
{
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = mul(c, x[i]);
    return r;
}

Vec Fp::sum(const Vec& a, const Vec& b) const
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = add(a[i], b[i]);
    return r;
}

Vec Fp::diff(const Vec& a, const Vec& b) const
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = sub(a[i], b[i]);
    return r;
}

bool is_zero(const Vec& v)
{
    for (int x : v)
        if (x != 0)
            return false;
    return true;
}

Matrix Matrix::identity(int n)
{
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(int rows, const std::vector<Vec>& cols)
{
    Matrix m(rows, int(cols.size()));
    for (int c = 0; c < m.cols(); ++c)
        m.set_col(c, cols[c]);
    return m;
}

Matrix Matrix::from_rows(int cols, const std::vector<Vec>& rows)
{
    Matrix m(int(rows.size()), cols);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    return m;
}

Vec Matrix::row(int r) const
{
    return Vec(data_.begin() + std::size_t(r) * cols_, data_.begin() + std::size_t(r + 1) * cols_);
}

Vec Matrix::col(int c) const
{
    Vec v(rows_);
    for (int r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

void Matrix::set_col(int c, const Vec& v)
{
    if (int(v.size()) != rows_)
        throw std::invalid_argument("column length mismatch");
    for (int r = 0; r < rows_; ++r)
        (*this)(r, c) = v[r];
}

Matrix Matrix::transposed() const
{
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix multiply(const Fp& f, const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows(), b.cols());
    const int p = f.p();
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            int x = a(i, k);
            if (x == 0)
                continue;
            for (int j = 0; j < b.cols(); ++j)
                c(i, j) = (c(i, j) + x * b(k, j)) % p;
        }
    return c;
}

Vec apply(const Fp& f, const Matrix& a, const Vec& x)
{
    if (a.cols() != int(x.size()))
        throw std::invalid_argument("matrix-vector shape mismatch");
    Vec y(a.rows(), 0);
    const int p = f.p();
    for (int i = 0; i < a.rows(); ++i) {
        long long s = 0;
        for (int k = 0; k < a.cols(); ++k)
            s += (long long)a(i, k) * x[k];
        y[i] = int(s % p);
    }
    return y;
}

Echelon rref(const Fp& f, Matrix m)
{
    Echelon e;
    const int p = f.p();
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int r = row; r < m.rows(); ++r)
            if (m(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != row)
            for (int c = 0; c < m.cols(); ++c)
                std::swap(m(piv, c), m(row, c));
        int s = f.inv(m(row, col));
        for (int c = col; c < m.cols(); ++c)
            m(row, c) = f.mul(m(row, c), s);
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0)
                continue;
            int factor = p - m(r, col);
            for (int c = col; c < m.cols(); ++c)
                m(r, c) = (m(r, c) + factor * m(row, c)) % p;
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

int rank(const Fp& f, const Matrix& m)
{
    return int(rref(f, m).pivots.size());
}

std::vector<Vec> nullspace(const Fp& f, const Matrix& a)
{
    Echelon e = rref(f, a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : e.pivots)
        is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < a.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vec v(a.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = f.neg(e.reduced(int(r), free));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Fp& f, const Matrix& a, const Vec& b)
{
    if (int(b.size()) != a.rows())
        throw std::invalid_argument("solve: right-hand side length mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c)
            aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    Echelon e = rref(f, aug);
    if (!e.pivots.empty() && e.pivots.back() == a.cols())
        return std::nullopt;
    Vec x(a.cols(), 0);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        x[e.pivots[r]] = e.reduced(int(r), a.cols());
    return x;
}

std::optional<Matrix> inverse(const Fp& f, const Matrix& a)
{
    if (a.rows() != a.cols())
        return std::nullopt;
    const int n = a.rows();
    Matrix aug(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c)
            aug(r, c) = a(r, c);
        aug(r, n + r) = 1;
    }
    Echelon e = rref(f, aug);
    if (int(e.pivots.size()) < n || (n > 0 && e.pivots[n - 1] != n - 1))
        return std::nullopt;
    Matrix inv(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            inv(r, c) = e.reduced(r, n + c);
    return inv;
}

Subspace Subspace::span(Fp f, int ambient, const std::vector<Vec>& gens)
{
    Subspace s(f, ambient);
    for (const Vec& g : gens)
        s.add(g);
    return s;
}

Vec Subspace::reduce(const Vec& v) const
{
    if (int(v.size()) != ambient_)
        throw std::invalid_argument("subspace: vector length mismatch");
    Vec r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        int c = r[pivots_[i]];
        if (c != 0)
            f_.axpy(r, f_.neg(c), basis_[i]);
    }
    return r;
}

bool Subspace::contains(const Vec& v) const
{
    return is_zero(reduce(v));
}

bool Subspace::contains(const Subspace& other) const
{
    for (const Vec& b : other.basis_)
        if (!contains(b))
            return false;
    return true;
}

bool Subspace::add(const Vec& v)
{
    Vec r = reduce(v);
    int piv = -1;
    for (int i = 0; i < ambient_; ++i)
        if (r[i] != 0) {
            piv = i;
            break;
        }
    if (piv < 0)
        return false;
    r = f_.scaled(f_.inv(r[piv]), r);
    // keep the basis fully reduced
    for (Vec& b : basis_)
        if (b[piv] != 0)
            f_.axpy(b, f_.neg(b[piv]), r);
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv)
        ++pos;
    basis_.insert(basis_.begin() + pos, std::move(r));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

std::vector<int> Subspace::free_positions() const
{
    std::vector<int> out;
    std::size_t k = 0;
    for (int i = 0; i < ambient_; ++i) {
        if (k < pivots_.size() && pivots_[k] == i) {
            ++k;
            continue;
        }
        out.push_back(i);
    }
    return out;
}

Vec Subspace::quotient_coords(const Vec& v) const
{
    Vec r = reduce(v);
    Vec q;
    q.reserve(codim());
    for (int i : free_positions())
        q.push_back(r[i]);
    return q;
}

Vec Subspace::lift(const Vec& qcoords) const
{
    Vec v(ambient_, 0);
    std::vector<int> fp = free_positions();
    if (qcoords.size() != fp.size())
        throw std::invalid_argument("subspace: quotient coordinate length mismatch");
    for (std::size_t i = 0; i < fp.size(); ++i)
        v[fp[i]] = qcoords[i];
    return v;
}

std::uint64_t subspace_count(int p, int n)
{
    // sum over k of the Gaussian binomial [n choose k]_p
    std::uint64_t total = 0;
    for (int k = 0; k <= n; ++k) {
        long double num = 1, den = 1;
        for (int i = 0; i < k; ++i) {
            num *= (std::pow((long double)p, n - i) - 1);
            den *= (std::pow((long double)p, i + 1) - 1);
        }
        total += std::uint64_t(num / den + 0.5L);
    }
    return total;
}

namespace detail {

namespace {

bool choose_pivots(const Fp& f, int n, int dim, int start, std::vector<int>& piv,
                   const std::function<bool(const std::vector<Vec>&)>& visit)
{
    if (int(piv.size()) == dim) {
        std::vector<bool> is_piv(n, false);
        for (int c : piv)
            is_piv[c] = true;
        // free slots: (row, col) with col > pivot of row and col not a pivot
        std::vector<std::pair<int, int>> slots;
        for (int r = 0; r < dim; ++r)
            for (int c = piv[r] + 1; c < n; ++c)
                if (!is_piv[c])
                    slots.emplace_back(r, c);
        std::vector<Vec> rows(dim, Vec(n, 0));
        for (int r = 0; r < dim; ++r)
            rows[r][piv[r]] = 1;
        std::vector<int> digits(slots.size(), 0);
        while (true) {
            for (std::size_t s = 0; s < slots.size(); ++s)
                rows[slots[s].first][slots[s].second] = digits[s];
            if (!visit(rows))
                return false;
            std::size_t s = 0;
            while (s < digits.size() && ++digits[s] == f.p()) {
                digits[s] = 0;
                ++s;
            }
            if (s == digits.size())
                break;
        }
        return true;
    }
    for (int c = start; c <= n - (dim - int(piv.size())); ++c) {
        piv.push_back(c);
        bool go_on = choose_pivots(f, n, dim, c + 1, piv, visit);
        piv.pop_back();
        if (!go_on)
            return false;
    }
    return true;
}

}  // namespace

bool enumerate_subspaces(const Fp& f, int n, int dim,
                         const std::function<bool(const std::vector<Vec>&)>& visit)
{
    if (dim < 0 || dim > n)
        return true;
    std::vector<int> piv;
    return choose_pivots(f, n, dim, 0, piv, visit);
}

}  // namespace detail

}  // namespace twinheart
