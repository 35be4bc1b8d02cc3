#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tolerance.hpp"

namespace pa {

using Vec = std::vector<double>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<double>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : init) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix from_rows(const std::vector<Vec>& rows) {
        if (rows.empty()) return {};
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols_);
        }
        return m;
    }

    static Matrix from_cols(const std::vector<Vec>& cols) {
        return from_rows(cols).transpose();
    }

    static Matrix row_vector(const Vec& v) { return from_rows({v}); }
    static Matrix col_vector(const Vec& v) { return from_rows({v}).transpose(); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    Vec row(std::size_t i) const {
        return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    Vec col(std::size_t j) const {
        Vec out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }
    void set_row(std::size_t i, const Vec& v) {
        std::copy(v.begin(), v.end(), data_.begin() + i * cols_);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(double s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix sum: dimension mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// row vector times matrix
inline Vec operator*(const Vec& v, const Matrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("row-vector product: dimension mismatch");
    Vec out(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0.0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

// matrix times column vector
inline Vec operator*(const Matrix& m, const Vec& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("column-vector product: dimension mismatch");
    Vec out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec operator+(Vec a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector sum: dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
inline Vec operator-(Vec a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector difference: dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
inline Vec operator*(double s, Vec a) {
    for (auto& v : a) v *= s;
    return a;
}

inline double sum(const Vec& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

inline double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

inline Vec unit(std::size_t n, std::size_t i) {
    Vec e(n, 0.0);
    e.at(i) = 1.0;
    return e;
}

inline Vec concat(Vec a, const Vec& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline double norm_abs(const Vec& v) {
    if (v.empty()) throw std::invalid_argument("norm_abs: empty vector");
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

inline double norm_abs(const Matrix& a) {
    if (a.empty()) throw std::invalid_argument("norm_abs: empty matrix");
    return norm_abs(a.data());
}

inline double norm_spread(const Vec& v) {
    if (v.empty()) throw std::invalid_argument("norm_spread: empty vector");
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

// max over columns of (max - min) within the column
inline double norm_spread(const Matrix& a) {
    if (a.empty()) throw std::invalid_argument("norm_spread: empty matrix");
    double m = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, norm_spread(a.col(j)));
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    return k;
}

inline Vec kron(const Vec& a, const Vec& b) {
    Vec k;
    k.reserve(a.size() * b.size());
    for (double x : a)
        for (double y : b) k.push_back(x * y);
    return k;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

// [[a, b], [c, d]]
inline Matrix blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
        throw std::invalid_argument("blocks: incompatible shapes");
    Matrix m(a.rows() + c.rows(), a.cols() + b.cols());
    auto put = [&m](const Matrix& s, std::size_t r0, std::size_t c0) {
        for (std::size_t i = 0; i < s.rows(); ++i)
            for (std::size_t j = 0; j < s.cols(); ++j) m(r0 + i, c0 + j) = s(i, j);
    };
    put(a, 0, 0);
    put(b, 0, a.cols());
    put(c, a.rows(), 0);
    put(d, a.rows(), a.cols());
    return m;
}

inline Matrix submatrix(const Matrix& a, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
    Matrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = a(rows[i], cols[j]);
    return m;
}

inline Matrix select_rows(const Matrix& a, const std::vector<std::size_t>& rows) {
    Matrix m(rows.size(), a.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, a.row(rows[i]));
    return m;
}

inline Vec pick(const Vec& v, const std::vector<std::size_t>& idx) {
    Vec out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(v.at(i));
    return out;
}

// Gauss-Jordan with partial pivoting; throws on a numerically singular input.
inline Matrix inverse(const Matrix& a, double tol_rank = 1e-9) {
    if (!a.square() || a.empty()) throw std::invalid_argument("inverse: matrix must be square and nonempty");
    const std::size_t n = a.rows();
    Matrix w = a;
    Matrix inv = Matrix::identity(n);
    const double scale = std::max(1.0, norm_abs(a));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(w(r, c)) > std::fabs(w(p, c))) p = r;
        if (std::fabs(w(p, c)) <= tol_rank * scale) throw std::domain_error("inverse: singular matrix");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(p, j), w(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        const double d = w(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            w(c, j) /= d;
            inv(c, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = w(r, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                w(r, j) -= f * w(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

// Rank by elimination with full pivoting; pivots below tol_rank * max|entry| count as zero.
inline std::size_t rank(const Matrix& a, double tol_rank = 1e-9) {
    if (a.empty()) return 0;
    Matrix w = a;
    const double scale = norm_abs(a);
    if (scale == 0.0) return 0;
    std::size_t r = 0;
    std::vector<bool> used_col(w.cols(), false);
    for (std::size_t step = 0; step < std::min(w.rows(), w.cols()); ++step) {
        std::size_t pi = 0, pj = 0;
        double best = -1.0;
        for (std::size_t i = r; i < w.rows(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j)
                if (!used_col[j] && std::fabs(w(i, j)) > best) {
                    best = std::fabs(w(i, j));
                    pi = i;
                    pj = j;
                }
        if (best <= tol_rank * scale) break;
        for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w(pi, j), w(r, j));
        used_col[pj] = true;
        for (std::size_t i = r + 1; i < w.rows(); ++i) {
            const double f = w(i, pj) / w(r, pj);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < w.cols(); ++j) w(i, j) -= f * w(r, j);
        }
        ++r;
    }
    return r;
}

inline bool is_distribution(const Vec& v, const Tolerances& tol = {}) {
    if (v.empty()) return false;
    for (double x : v)
        if (!std::isfinite(x) || x < -tol.nonneg) return false;
    return std::fabs(sum(v) - 1.0) <= tol.sum;
}

inline bool is_stochastic(const Matrix& a, const Tolerances& tol = {}) {
    if (a.empty()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (!is_distribution(a.row(i), tol)) return false;
    return true;
}

inline bool all_finite(const Matrix& a) {
    return std::all_of(a.data().begin(), a.data().end(), [](double x) { return std::isfinite(x); });
}

inline double min_entry(const Matrix& a) {
    if (a.empty()) throw std::invalid_argument("min_entry: empty matrix");
    return *std::min_element(a.data().begin(), a.data().end());
}

}  // namespace pa
