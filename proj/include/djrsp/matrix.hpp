// Dense complex matrices for few-qubit states and operators.
//
// Everything in the protocol lives in dimension 2, 4 or 8, so the
// representation is a flat row-major vector with no sparsity or
// expression tricks. All operations are pure and return new values.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace djrsp {

using cplx = std::complex<double>;

class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("Matrix: dimensions must be positive");
    }

    Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        if (rows_ == 0)
            throw std::invalid_argument("Matrix: empty initializer");
        cols_ = rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw std::invalid_argument("Matrix: ragged initializer");
            entries_.insert(entries_.end(), r.begin(), r.end());
        }
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    /// Column vector from amplitudes.
    static Matrix column(std::initializer_list<cplx> amps) {
        Matrix m(amps.size(), 1);
        std::size_t i = 0;
        for (cplx a : amps) m(i++, 0) = a;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<cplx>& entries() const { return entries_; }

    Matrix operator+(const Matrix& rhs) const {
        require_same_shape(rhs, "operator+");
        Matrix out = *this;
        for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += rhs.entries_[i];
        return out;
    }

    Matrix operator-(const Matrix& rhs) const {
        require_same_shape(rhs, "operator-");
        Matrix out = *this;
        for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= rhs.entries_[i];
        return out;
    }

    Matrix& operator+=(const Matrix& rhs) {
        require_same_shape(rhs, "operator+=");
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
        return *this;
    }

    Matrix operator*(cplx s) const {
        Matrix out = *this;
        for (auto& e : out.entries_) e *= s;
        return out;
    }

    friend Matrix operator*(cplx s, const Matrix& m) { return m * s; }

    /// Matrix product; shapes must be compatible.
    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_)
            throw std::invalid_argument("matmul: incompatible shapes (" +
                                        std::to_string(rows_) + "x" + std::to_string(cols_) +
                                        " times " + std::to_string(rhs.rows_) + "x" +
                                        std::to_string(rhs.cols_) + ")");
        Matrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const cplx aik = (*this)(i, k);
                if (aik == cplx{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j)
                    out(i, j) += aik * rhs(k, j);
            }
        }
        return out;
    }

    /// Conjugate transpose.
    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    cplx trace() const {
        if (!is_square())
            throw std::invalid_argument("trace: matrix must be square");
        cplx t{0.0, 0.0};
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_finite() const {
        return std::all_of(entries_.begin(), entries_.end(), [](cplx e) {
            return std::isfinite(e.real()) && std::isfinite(e.imag());
        });
    }

private:
    void require_same_shape(const Matrix& rhs, const char* op) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw std::invalid_argument(std::string(op) + ": shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

/// Kronecker product. The left factor is the most significant subsystem,
/// so three-qubit operators compose as kron(op_A, kron(op_B, op_C)).
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

/// Reduced matrix over the kept subsystems, in their original relative order.
/// dims lists subsystem dimensions with the leftmost factor most significant;
/// keep is the (nonempty) set of subsystem indices to retain.
inline Matrix partial_trace(const Matrix& a, const std::vector<std::size_t>& dims,
                            std::vector<std::size_t> keep) {
    if (!a.is_square())
        throw std::invalid_argument("partial_trace: matrix must be square");

    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    if (total != a.rows())
        throw std::invalid_argument("partial_trace: dims do not match matrix size");

    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty())
        throw std::invalid_argument("partial_trace: keep set must be nonempty");
    if (keep.back() >= dims.size())
        throw std::invalid_argument("partial_trace: keep index out of range");

    std::vector<std::size_t> traced;
    for (std::size_t s = 0; s < dims.size(); ++s)
        if (!std::binary_search(keep.begin(), keep.end(), s)) traced.push_back(s);

    // Strides of each subsystem in the flat index (most significant first).
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t s = dims.size(); s-- > 1;)
        stride[s - 1] = stride[s] * dims[s];

    std::size_t keep_dim = 1;
    for (std::size_t s : keep) keep_dim *= dims[s];
    std::size_t traced_dim = 1;
    for (std::size_t s : traced) traced_dim *= dims[s];

    // Flat index over a subsystem subset -> contribution to the full index.
    auto compose = [&](const std::vector<std::size_t>& subs, std::size_t flat) {
        std::size_t full = 0;
        for (std::size_t s = subs.size(); s-- > 0;) {
            full += (flat % dims[subs[s]]) * stride[subs[s]];
            flat /= dims[subs[s]];
        }
        return full;
    };

    Matrix out(keep_dim, keep_dim);
    for (std::size_t r = 0; r < keep_dim; ++r) {
        const std::size_t row_base = compose(keep, r);
        for (std::size_t c = 0; c < keep_dim; ++c) {
            const std::size_t col_base = compose(keep, c);
            cplx sum{0.0, 0.0};
            for (std::size_t t = 0; t < traced_dim; ++t) {
                const std::size_t off = compose(traced, t);
                sum += a(row_base + off, col_base + off);
            }
            out(r, c) = sum;
        }
    }
    return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

inline bool is_hermitian(const Matrix& a, double tol) {
    if (!a.is_square()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    return true;
}

}  // namespace djrsp
