#pragma once

#include "solenoid/bigint.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace solenoid {

// Dense integer matrix with exact arbitrary-precision entries.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols)) {}

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    BigInt& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
    const BigInt& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                t.at(c, r) = at(r, c);
        return t;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_)
            throw SolenoidError("matrix shape mismatch in product");
        IntMatrix p(rows_, o.cols_);
        for (int r = 0; r < rows_; ++r)
            for (int k = 0; k < cols_; ++k) {
                const BigInt& x = at(r, k);
                if (x == 0)
                    continue;
                for (int c = 0; c < o.cols_; ++c)
                    p.at(r, c) += x * o.at(k, c);
            }
        return p;
    }

    std::vector<BigInt> apply(const std::vector<BigInt>& v) const {
        if (int(v.size()) != cols_)
            throw SolenoidError("matrix/vector shape mismatch");
        std::vector<BigInt> out(rows_, 0);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                out[r] += at(r, c) * v[c];
        return out;
    }

    std::vector<BigRat> apply(const std::vector<BigRat>& v) const {
        if (int(v.size()) != cols_)
            throw SolenoidError("matrix/vector shape mismatch");
        std::vector<BigRat> out(rows_, 0);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                out[r] += BigRat(at(r, c)) * v[c];
        return out;
    }

    // Covector times matrix (w as a row).
    std::vector<BigInt> apply_left(const std::vector<BigInt>& w) const {
        if (int(w.size()) != rows_)
            throw SolenoidError("covector/matrix shape mismatch");
        std::vector<BigInt> out(cols_, 0);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                out[c] += w[r] * at(r, c);
        return out;
    }

    IntMatrix pow(int n) const {
        if (!square())
            throw SolenoidError("power of non-square matrix");
        if (n < 0)
            throw SolenoidError("negative matrix power");
        IntMatrix result = identity(rows_);
        IntMatrix base = *this;
        while (n > 0) {
            if (n & 1)
                result = result * base;
            base = n > 1 ? base * base : base;
            n >>= 1;
        }
        return result;
    }

    bool all_positive() const {
        for (const auto& x : a_)
            if (x <= 0)
                return false;
        return rows_ > 0 && cols_ > 0;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0)
                return false;
        return true;
    }

    std::vector<BigInt> row_sums() const {
        std::vector<BigInt> s(rows_, 0);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                s[r] += at(r, c);
        return s;
    }

    std::vector<BigInt> column(int c) const {
        std::vector<BigInt> v(rows_);
        for (int r = 0; r < rows_; ++r)
            v[r] = at(r, c);
        return v;
    }

    static IntMatrix from_columns(int rows, const std::vector<std::vector<BigInt>>& cols) {
        IntMatrix m(rows, int(cols.size()));
        for (int c = 0; c < int(cols.size()); ++c)
            for (int r = 0; r < rows; ++r)
                m.at(r, c) = cols[c][r];
        return m;
    }

    IntMatrix columns_slice(int first, int count) const {
        IntMatrix m(rows_, count);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < count; ++c)
                m.at(r, c) = at(r, first + c);
        return m;
    }

    IntMatrix block(int r0, int c0, int nr, int nc) const {
        IntMatrix m(nr, nc);
        for (int r = 0; r < nr; ++r)
            for (int c = 0; c < nc; ++c)
                m.at(r, c) = at(r0 + r, c0 + c);
        return m;
    }

    BigInt trace() const {
        BigInt t = 0;
        for (int i = 0; i < std::min(rows_, cols_); ++i)
            t += at(i, i);
        return t;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (int r = 0; r < rows_; ++r) {
            os << (r ? "; " : "");
            for (int c = 0; c < cols_; ++c)
                os << (c ? " " : "") << at(r, c).str();
        }
        os << "]";
        return os.str();
    }

private:
    int rows_, cols_;
    std::vector<BigInt> a_;
};

// Characteristic polynomial det(xI - A), ascending coefficients c[0..n] with
// c[n] = 1. Faddeev-LeVerrier; every division is exact over the integers.
inline std::vector<BigInt> charpoly(const IntMatrix& A) {
    if (!A.square())
        throw SolenoidError("charpoly of non-square matrix");
    const int n = A.rows();
    std::vector<BigInt> c(size_t(n) + 1, 0);
    c[n] = 1;
    IntMatrix M = IntMatrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        IntMatrix AM = A * M;
        c[n - k] = -exact_div(AM.trace(), k);
        M = AM;
        for (int i = 0; i < n; ++i)
            M.at(i, i) += c[n - k];
    }
    return c;
}

inline BigInt determinant(const IntMatrix& A) {
    if (A.rows() == 0)
        return 1;
    std::vector<BigInt> c = charpoly(A);
    BigInt det = c[0];
    if (A.rows() % 2 != 0)
        det = -det;
    return det;
}

// Smith normal form with transforms: M = U * D * V, U and V unimodular,
// D diagonal with d1 | d2 | ... Deterministic pivot choice so outputs are
// reproducible across runs.
struct SmithResult {
    IntMatrix U, Uinv, D, V, Vinv;
    int rank = 0;
    std::vector<BigInt> divisors;  // nonzero diagonal entries, in order
};

namespace detail {

struct SmithOps {
    IntMatrix& A;
    IntMatrix& U;
    IntMatrix& Uinv;
    IntMatrix& V;
    IntMatrix& Vinv;

    // A <- E A with E adding c*row j to row i; invariant M = U A V kept.
    void row_add(int i, int j, const BigInt& c) {
        for (int k = 0; k < A.cols(); ++k)
            A.at(i, k) += c * A.at(j, k);
        for (int k = 0; k < U.rows(); ++k)
            U.at(k, j) -= c * U.at(k, i);
        for (int k = 0; k < Uinv.cols(); ++k)
            Uinv.at(i, k) += c * Uinv.at(j, k);
    }
    void row_swap(int i, int j) {
        if (i == j)
            return;
        for (int k = 0; k < A.cols(); ++k)
            std::swap(A.at(i, k), A.at(j, k));
        for (int k = 0; k < U.rows(); ++k)
            std::swap(U.at(k, i), U.at(k, j));
        for (int k = 0; k < Uinv.cols(); ++k)
            std::swap(Uinv.at(i, k), Uinv.at(j, k));
    }
    void row_negate(int i) {
        for (int k = 0; k < A.cols(); ++k)
            A.at(i, k) = -A.at(i, k);
        for (int k = 0; k < U.rows(); ++k)
            U.at(k, i) = -U.at(k, i);
        for (int k = 0; k < Uinv.cols(); ++k)
            Uinv.at(i, k) = -Uinv.at(i, k);
    }
    void col_add(int j, int k, const BigInt& c) {  // col j += c * col k
        for (int r = 0; r < A.rows(); ++r)
            A.at(r, j) += c * A.at(r, k);
        for (int s = 0; s < V.cols(); ++s)
            V.at(k, s) -= c * V.at(j, s);
        for (int r = 0; r < Vinv.rows(); ++r)
            Vinv.at(r, j) += c * Vinv.at(r, k);
    }
    void col_swap(int i, int j) {
        if (i == j)
            return;
        for (int r = 0; r < A.rows(); ++r)
            std::swap(A.at(r, i), A.at(r, j));
        for (int s = 0; s < V.cols(); ++s)
            std::swap(V.at(i, s), V.at(j, s));
        for (int r = 0; r < Vinv.rows(); ++r)
            std::swap(Vinv.at(r, i), Vinv.at(r, j));
    }
};

}  // namespace detail

inline SmithResult smith_normal_form(const IntMatrix& M) {
    const int m = M.rows(), n = M.cols();
    SmithResult res;
    res.U = IntMatrix::identity(m);
    res.Uinv = IntMatrix::identity(m);
    res.V = IntMatrix::identity(n);
    res.Vinv = IntMatrix::identity(n);
    res.D = M;
    IntMatrix& A = res.D;
    detail::SmithOps ops{A, res.U, res.Uinv, res.V, res.Vinv};

    const int steps = std::min(m, n);
    for (int t = 0; t < steps; ++t) {
        // Pivot: smallest |nonzero| in the trailing block, lexicographic tiebreak.
        std::optional<std::pair<int, int>> pivot;
        for (int r = t; r < m; ++r)
            for (int c = t; c < n; ++c) {
                if (A.at(r, c) == 0)
                    continue;
                if (!pivot ||
                    boost::multiprecision::abs(A.at(r, c)) <
                        boost::multiprecision::abs(A.at(pivot->first, pivot->second)))
                    pivot = {r, c};
            }
        if (!pivot)
            break;
        ops.row_swap(t, pivot->first);
        ops.col_swap(t, pivot->second);

        bool settled = false;
        while (!settled) {
            settled = true;
            for (int r = t + 1; r < m; ++r) {
                if (A.at(r, t) == 0)
                    continue;
                BigInt q = A.at(r, t) / A.at(t, t);
                if (q != 0)
                    ops.row_add(r, t, -q);
                if (A.at(r, t) != 0) {  // remainder smaller than pivot
                    ops.row_swap(t, r);
                    settled = false;
                }
            }
            for (int c = t + 1; c < n; ++c) {
                if (A.at(t, c) == 0)
                    continue;
                BigInt q = A.at(t, c) / A.at(t, t);
                if (q != 0)
                    ops.col_add(c, t, -q);
                if (A.at(t, c) != 0) {
                    ops.col_swap(t, c);
                    settled = false;
                }
            }
            if (!settled)
                continue;
            // Divisibility: pivot must divide the whole trailing block.
            for (int r = t + 1; r < m && settled; ++r)
                for (int c = t + 1; c < n && settled; ++c)
                    if (A.at(r, c) % A.at(t, t) != 0) {
                        ops.row_add(t, r, 1);
                        settled = false;
                    }
        }
        if (A.at(t, t) < 0)
            ops.row_negate(t);
    }

    for (int t = 0; t < steps; ++t)
        if (A.at(t, t) != 0) {
            ++res.rank;
            res.divisors.push_back(A.at(t, t));
        }
    return res;
}

inline int rank(const IntMatrix& M) { return smith_normal_form(M).rank; }

// Integral basis of { x : M x = 0 }, as matrix columns. The kernel lattice of
// an integer matrix is pure, so this is a basis of a direct summand.
inline IntMatrix kernel_basis_raw(const IntMatrix& M) {
    if (M.rows() == 0)
        return IntMatrix::identity(M.cols());
    SmithResult s = smith_normal_form(M);
    const int n = M.cols();
    return s.Vinv.columns_slice(s.rank, n - s.rank);
}

// Column-style Hermite normal form of the lattice spanned by the columns of B.
// Canonical: pivot rows strictly increase, pivots positive, entries left of a
// pivot reduced into [0, pivot). Two bases of the same lattice map to the same
// matrix, which keeps all downstream basis choices reproducible.
inline IntMatrix hnf_column_basis(IntMatrix B) {
    const int m = B.rows(), k = B.cols();
    auto col_sub = [&](int j, int p, const BigInt& q) {
        if (q == 0)
            return;
        for (int r = 0; r < m; ++r)
            B.at(r, j) -= q * B.at(r, p);
    };
    auto col_swap = [&](int i, int j) {
        if (i == j)
            return;
        for (int r = 0; r < m; ++r)
            std::swap(B.at(r, i), B.at(r, j));
    };
    int p = 0;
    for (int r = 0; r < m && p < k; ++r) {
        while (true) {
            std::optional<int> best;
            for (int j = p; j < k; ++j) {
                if (B.at(r, j) == 0)
                    continue;
                if (!best || boost::multiprecision::abs(B.at(r, j)) <
                                 boost::multiprecision::abs(B.at(r, *best)))
                    best = j;
            }
            if (!best)
                break;
            col_swap(p, *best);
            bool clean = true;
            for (int j = p + 1; j < k; ++j) {
                if (B.at(r, j) == 0)
                    continue;
                col_sub(j, p, B.at(r, j) / B.at(r, p));
                if (B.at(r, j) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (B.at(r, p) == 0)
            continue;
        if (B.at(r, p) < 0)
            for (int rr = 0; rr < m; ++rr)
                B.at(rr, p) = -B.at(rr, p);
        for (int j = 0; j < p; ++j)
            col_sub(j, p, floor_div(B.at(r, j), B.at(r, p)));
        ++p;
    }
    return B.columns_slice(0, p);
}

inline IntMatrix kernel_basis(const IntMatrix& M) { return hnf_column_basis(kernel_basis_raw(M)); }

// Canonical basis of the saturation of the column space of B:
// { x in Z^m : q x in colspace(B) for some q >= 1 }.
inline IntMatrix saturation_of_column_space(const IntMatrix& B) {
    IntMatrix N = kernel_basis_raw(B.transpose());  // orthogonal directions
    if (N.cols() == 0)
        return IntMatrix::identity(B.rows());
    return kernel_basis(N.transpose());
}

// Exact solution of S x = b over the rationals; empty if inconsistent.
inline std::optional<std::vector<BigRat>> solve_rational(const IntMatrix& S,
                                                         const std::vector<BigRat>& b) {
    const int m = S.rows(), n = S.cols();
    std::vector<std::vector<BigRat>> aug(m, std::vector<BigRat>(size_t(n) + 1));
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c)
            aug[r][c] = BigRat(S.at(r, c));
        aug[r][n] = b[r];
    }
    std::vector<int> pivot_col(m, -1);
    int row = 0;
    for (int c = 0; c < n && row < m; ++c) {
        int sel = -1;
        for (int r = row; r < m; ++r)
            if (aug[r][c] != 0) {
                sel = r;
                break;
            }
        if (sel < 0)
            continue;
        std::swap(aug[row], aug[sel]);
        BigRat inv = aug[row][c];
        for (int cc = c; cc <= n; ++cc)
            aug[row][cc] /= inv;
        for (int r = 0; r < m; ++r) {
            if (r == row || aug[r][c] == 0)
                continue;
            BigRat f = aug[r][c];
            for (int cc = c; cc <= n; ++cc)
                aug[r][cc] -= f * aug[row][cc];
        }
        pivot_col[row] = c;
        ++row;
    }
    for (int r = row; r < m; ++r)
        if (aug[r][n] != 0)
            return std::nullopt;
    std::vector<BigRat> x(n, 0);
    for (int r = 0; r < row; ++r)
        x[pivot_col[r]] = aug[r][n];
    return x;
}

inline std::vector<BigInt> solve_integral(const IntMatrix& S, const std::vector<BigInt>& b) {
    std::vector<BigRat> br(b.begin(), b.end());
    auto x = solve_rational(S, br);
    if (!x)
        throw InternalInconsistency("expected solvable integral system");
    std::vector<BigInt> out;
    out.reserve(x->size());
    for (const auto& v : *x) {
        if (boost::multiprecision::denominator(v) != 1)
            throw InternalInconsistency("expected integral solution");
        out.push_back(boost::multiprecision::numerator(v));
    }
    return out;
}

// X with S * X = B, entrywise integral.
inline IntMatrix restrict_to_basis(const IntMatrix& S, const IntMatrix& B) {
    std::vector<std::vector<BigInt>> cols;
    cols.reserve(B.cols());
    for (int c = 0; c < B.cols(); ++c)
        cols.push_back(solve_integral(S, B.column(c)));
    return IntMatrix::from_columns(S.cols(), cols);
}

}  // namespace solenoid
