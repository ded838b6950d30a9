#ifndef DIFFALG_MATRIX_HPP
#define DIFFALG_MATRIX_HPP

#include <functional>
#include <vector>

#include "rational_function.hpp"

namespace diffalg {

template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(long rows, long cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols)) {}
    Matrix(long rows, long cols, std::vector<T> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (static_cast<long>(data_.size()) != rows * cols) throw std::invalid_argument("matrix data size mismatch");
    }

    static Matrix identity(long n) {
        Matrix m(n, n);
        for (long k = 0; k < n; ++k) m.at(k, k) = T(1);
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& at(long r, long c) { return data_[static_cast<size_t>(r * cols_ + c)]; }
    const T& at(long r, long c) const { return data_[static_cast<size_t>(r * cols_ + c)]; }

    Matrix map(const std::function<T(const T&)>& f) const {
        Matrix m(rows_, cols_);
        for (size_t k = 0; k < data_.size(); ++k) m.data_[k] = f(data_[k]);
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (long i = 0; i < a.rows_; ++i)
            for (long k = 0; k < a.cols_; ++k) {
                const T& aik = a.at(i, k);
                for (long j = 0; j < b.cols_; ++j) c.at(i, j) = c.at(i, j) + aik * b.at(k, j);
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
        Matrix c(a.rows_, a.cols_);
        for (size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
        Matrix c(a.rows_, a.cols_);
        for (size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    bool is_zero() const {
        for (const auto& e : data_)
            if (!(e == T(0))) return false;
        return true;
    }

private:
    long rows_, cols_;
    std::vector<T> data_;
};

// ---- fraction-free elimination over the polynomial ring ---------------------
//
// Solves A X = B exactly for matrices over Q(i)(x): rows are scaled to
// polynomial form, forward elimination is one-step Bareiss (all divisions
// exact over the ring), back substitution happens over the fraction field.

namespace lin {

inline size_t poly_size_measure(const Polynomial& p) {
    size_t s = p.coeffs().size();
    for (const auto& c : p.coeffs()) s += c.bit_size();
    return s;
}

} // namespace lin

// Solve A * X = B over the rational function field; throws std::domain_error
// if A is singular.
inline Matrix<RationalFunction> solve_linear(const Matrix<RationalFunction>& A, const Matrix<RationalFunction>& B) {
    if (!A.is_square() || A.rows() != B.rows()) throw std::invalid_argument("solve_linear shape mismatch");
    long n = A.rows(), m = B.cols();
    // scale rows to polynomials
    Matrix<Polynomial> P(n, n + m);
    for (long i = 0; i < n; ++i) {
        Polynomial d(GaussianRational(1));
        for (long j = 0; j < n; ++j) d = Polynomial::lcm(d, A.at(i, j).den());
        for (long j = 0; j < m; ++j) d = Polynomial::lcm(d, B.at(i, j).den());
        for (long j = 0; j < n; ++j) P.at(i, j) = A.at(i, j).num() * (d / A.at(i, j).den());
        for (long j = 0; j < m; ++j) P.at(i, n + j) = B.at(i, j).num() * (d / B.at(i, j).den());
    }
    // one-step Bareiss forward elimination with smallest-size pivoting
    Polynomial prev(GaussianRational(1));
    for (long k = 0; k < n; ++k) {
        long pr = -1;
        size_t best = 0;
        for (long i = k; i < n; ++i) {
            if (P.at(i, k).is_zero()) continue;
            size_t s = lin::poly_size_measure(P.at(i, k));
            if (pr < 0 || s < best) {
                pr = i;
                best = s;
            }
        }
        if (pr < 0) throw std::domain_error("singular matrix");
        if (pr != k)
            for (long j = 0; j < n + m; ++j) std::swap(P.at(pr, j), P.at(k, j));
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n + m; ++j)
                P.at(i, j) = (P.at(k, k) * P.at(i, j) - P.at(i, k) * P.at(k, j)) / prev;
            P.at(i, k) = Polynomial();
        }
        prev = P.at(k, k);
    }
    // back substitution over the fraction field
    Matrix<RationalFunction> X(n, m);
    for (long j = 0; j < m; ++j)
        for (long i = n - 1; i >= 0; --i) {
            RationalFunction acc(P.at(i, n + j));
            for (long l = i + 1; l < n; ++l) acc -= RationalFunction(P.at(i, l)) * X.at(l, j);
            X.at(i, j) = acc / RationalFunction(P.at(i, i));
        }
    return X;
}

inline Matrix<RationalFunction> matrix_inverse(const Matrix<RationalFunction>& A) {
    return solve_linear(A, Matrix<RationalFunction>::identity(A.rows()));
}

inline RationalFunction matrix_det(const Matrix<RationalFunction>& A) {
    if (!A.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    long n = A.rows();
    if (n == 0) return RationalFunction(1);
    Matrix<Polynomial> P(n, n);
    RationalFunction denscale(1);
    for (long i = 0; i < n; ++i) {
        Polynomial d(GaussianRational(1));
        for (long j = 0; j < n; ++j) d = Polynomial::lcm(d, A.at(i, j).den());
        for (long j = 0; j < n; ++j) P.at(i, j) = A.at(i, j).num() * (d / A.at(i, j).den());
        denscale = denscale * RationalFunction(d);
    }
    Polynomial prev(GaussianRational(1));
    int sign = 1;
    for (long k = 0; k < n; ++k) {
        long pr = -1;
        size_t best = 0;
        for (long i = k; i < n; ++i) {
            if (P.at(i, k).is_zero()) continue;
            size_t s = lin::poly_size_measure(P.at(i, k));
            if (pr < 0 || s < best) {
                pr = i;
                best = s;
            }
        }
        if (pr < 0) return RationalFunction(0);
        if (pr != k) {
            sign = -sign;
            for (long j = 0; j < n; ++j) std::swap(P.at(pr, j), P.at(k, j));
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j)
                P.at(i, j) = (P.at(k, k) * P.at(i, j) - P.at(i, k) * P.at(k, j)) / prev;
            P.at(i, k) = Polynomial();
        }
        prev = P.at(k, k);
    }
    RationalFunction det(P.at(n - 1, n - 1));
    if (sign < 0) det = -det;
    return det / denscale;
}

// ---- exact nullspace over Q(i) ----------------------------------------------
//
// Rows are scaled to Z[i]; forward elimination is one-step Bareiss with
// partial pivoting on smallest bit length, columns processed left to right.
// Deterministic: ties broken by row index.

struct NullspaceResult {
    long rank = 0;
    std::vector<long> pivot_cols;
    std::vector<long> free_cols;
    // one basis vector per free column, in ascending free-column order
    std::vector<std::vector<GaussianRational>> basis;
};

inline NullspaceResult nullspace(Matrix<GaussianRational> M) {
    long rows = M.rows(), cols = M.cols();
    // scale rows integral
    for (long i = 0; i < rows; ++i) {
        Integer d(1);
        for (long j = 0; j < cols; ++j) {
            d = lcm(d, M.at(i, j).re().get_den());
            d = lcm(d, M.at(i, j).im().get_den());
        }
        if (d != 1) {
            GaussianRational s{Rational(d), Rational(0)};
            for (long j = 0; j < cols; ++j) M.at(i, j) = M.at(i, j) * s;
        }
    }
    NullspaceResult res;
    GaussianRational prev(1);
    long r = 0;
    for (long c = 0; c < cols; ++c) {
        long pr = -1;
        size_t best = 0;
        for (long i = r; i < rows; ++i) {
            if (M.at(i, c).is_zero()) continue;
            size_t s = M.at(i, c).bit_size();
            if (pr < 0 || s < best) {
                pr = i;
                best = s;
            }
        }
        if (pr < 0) {
            res.free_cols.push_back(c);
            continue;
        }
        if (pr != r)
            for (long j = 0; j < cols; ++j) std::swap(M.at(pr, j), M.at(r, j));
        for (long i = r + 1; i < rows; ++i) {
            for (long j = c + 1; j < cols; ++j)
                M.at(i, j) = (M.at(r, c) * M.at(i, j) - M.at(i, c) * M.at(r, j)) / prev;
            M.at(i, c) = GaussianRational(0);
        }
        prev = M.at(r, c);
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;

    // back-substitute one basis vector per free column
    for (long f : res.free_cols) {
        std::vector<GaussianRational> v(static_cast<size_t>(cols));
        v[static_cast<size_t>(f)] = GaussianRational(1);
        for (long k = static_cast<long>(res.pivot_cols.size()) - 1; k >= 0; --k) {
            long pc = res.pivot_cols[static_cast<size_t>(k)];
            if (pc > f) continue; // columns beyond f are zero in this vector
            GaussianRational acc(0);
            for (long j = pc + 1; j <= f; ++j)
                if (!v[static_cast<size_t>(j)].is_zero()) acc += M.at(k, j) * v[static_cast<size_t>(j)];
            v[static_cast<size_t>(pc)] = -(acc / M.at(k, pc));
        }
        res.basis.push_back(std::move(v));
    }
    return res;
}

inline long matrix_rank(const Matrix<GaussianRational>& M) { return nullspace(M).rank; }

// Exact Gauss-Jordan solve of M x = rhs over Q(i); free unknowns are set to 0
// and reported. Small systems only.
struct AffineSolveResult {
    bool consistent = true;
    std::vector<GaussianRational> solution;
    std::vector<long> free_cols;
};

inline AffineSolveResult affine_solve(Matrix<GaussianRational> M, std::vector<GaussianRational> rhs) {
    long rows = M.rows(), cols = M.cols();
    if (static_cast<long>(rhs.size()) != rows) throw std::invalid_argument("affine_solve shape mismatch");
    AffineSolveResult res;
    std::vector<long> pivot_of_row;
    long r = 0;
    for (long c = 0; c < cols; ++c) {
        long pr = -1;
        for (long i = r; i < rows; ++i)
            if (!M.at(i, c).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) {
            res.free_cols.push_back(c);
            continue;
        }
        if (pr != r) {
            for (long j = c; j < cols; ++j) std::swap(M.at(pr, j), M.at(r, j));
            std::swap(rhs[static_cast<size_t>(pr)], rhs[static_cast<size_t>(r)]);
        }
        GaussianRational inv = M.at(r, c).inverse();
        for (long j = c; j < cols; ++j) M.at(r, j) = M.at(r, j) * inv;
        rhs[static_cast<size_t>(r)] = rhs[static_cast<size_t>(r)] * inv;
        for (long i = 0; i < rows; ++i) {
            if (i == r || M.at(i, c).is_zero()) continue;
            GaussianRational f = M.at(i, c);
            for (long j = c; j < cols; ++j) M.at(i, j) = M.at(i, j) - f * M.at(r, j);
            rhs[static_cast<size_t>(i)] = rhs[static_cast<size_t>(i)] - f * rhs[static_cast<size_t>(r)];
        }
        pivot_of_row.push_back(c);
        ++r;
        if (r == rows) {
            for (long cc = c + 1; cc < cols; ++cc) res.free_cols.push_back(cc);
            break;
        }
    }
    for (long i = r; i < rows; ++i)
        if (!rhs[static_cast<size_t>(i)].is_zero()) {
            res.consistent = false;
            return res;
        }
    res.solution.assign(static_cast<size_t>(cols), GaussianRational(0));
    for (long k = 0; k < r; ++k) res.solution[static_cast<size_t>(pivot_of_row[static_cast<size_t>(k)])] = rhs[static_cast<size_t>(k)];
    return res;
}

} // namespace diffalg

#endif
