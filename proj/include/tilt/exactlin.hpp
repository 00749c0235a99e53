#pragma once

// Dense exact linear algebra over a prime field F_p.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilt {

using Elem = std::uint32_t;

inline bool is_prime(Elem p) {
    if (p < 2) return false;
    for (Elem d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline Elem mod_reduce(long long v, Elem p) {
    long long r = v % static_cast<long long>(p);
    return static_cast<Elem>(r < 0 ? r + p : r);
}

inline Elem mod_inverse(Elem a, Elem p) {
    if (a % p == 0) throw std::domain_error("mod_inverse: zero has no inverse");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p;
    Elem e = p - 2;
    while (e) {
        if (e & 1u) result = result * base % p;
        base = base * base % p;
        e >>= 1u;
    }
    return static_cast<Elem>(result);
}

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Elem p) : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
        if (!is_prime(p)) throw std::invalid_argument("Matrix: modulus " + std::to_string(p) + " is not prime");
    }

    static Matrix identity(std::size_t n, Elem p) {
        Matrix m(n, n, p);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<long long>> rows, Elem p) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.begin()->size() : 0;
        Matrix m(r, c, p);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw std::invalid_argument("Matrix::from_rows: ragged rows");
            std::size_t j = 0;
            for (long long v : row) m.set(i, j++, v);
            ++i;
        }
        return m;
    }

    // Column vector.
    static Matrix column_vector(const std::vector<long long>& v, Elem p) {
        Matrix m(v.size(), 1, p);
        for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Elem prime() const { return p_; }

    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, long long v) { data_[r * cols_ + c] = mod_reduce(v, p_); }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
        Matrix out(rows_, o.cols_, p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint64_t a = data_[i * cols_ + k];
                if (!a) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    out.data_[i * o.cols_ + j] =
                        static_cast<Elem>((out.data_[i * o.cols_ + j] + a * o.data_[k * o.cols_ + j]) % p_);
            }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix out(*this);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + o.data_[i]) % p_;
        return out;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix out(*this);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + p_ - o.data_[i]) % p_;
        return out;
    }

    Matrix scaled(Elem s) const {
        Matrix out(*this);
        for (auto& e : out.data_) e = static_cast<Elem>(static_cast<std::uint64_t>(e) * (s % p_) % p_);
        return out;
    }

    Matrix negated() const { return scaled(p_ - 1); }

    Matrix transpose() const {
        Matrix out(cols_, rows_, p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = data_[i * cols_ + j];
        return out;
    }

    Matrix column(std::size_t j) const {
        Matrix out(rows_, 1, p_);
        for (std::size_t i = 0; i < rows_; ++i) out.data_[i] = (*this)(i, j);
        return out;
    }

    Matrix columns(const std::vector<std::size_t>& idx) const {
        Matrix out(rows_, idx.size(), p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) out.data_[i * idx.size() + j] = (*this)(i, idx[j]);
        return out;
    }

    // Rows [r0, r0+nr) and columns [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix out(nr, nc, p_);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) out.data_[i * nc + j] = (*this)(r0 + i, c0 + j);
        return out;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = b(i, j);
    }

    friend Matrix hstack(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
        Matrix out(a.rows_, a.cols_ + b.cols_, a.p_);
        out.set_block(0, 0, a);
        out.set_block(0, a.cols_, b);
        return out;
    }

    friend Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
        Matrix out(a.rows_ + b.rows_, a.cols_, a.p_);
        out.set_block(0, 0, a);
        out.set_block(a.rows_, 0, b);
        return out;
    }

    // Block diagonal [a 0; 0 b].
    friend Matrix direct_sum(const Matrix& a, const Matrix& b) {
        Matrix out(a.rows_ + b.rows_, a.cols_ + b.cols_, a.p_);
        out.set_block(0, 0, a);
        out.set_block(a.rows_, a.cols_, b);
        return out;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && data_ == o.data_;
    }

    const std::vector<Elem>& data() const { return data_; }

    std::string str() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) os << ';';
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        }
        os << ']';
        return os.str();
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Elem p_ = 2;
    std::vector<Elem> data_;
};

struct Reduction {
    std::size_t rank = 0;
    Matrix rref;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero rref row
    Matrix nullspace;                 // columns form a basis of {v : m v = 0}
    Matrix column_space;              // pivot columns of the input, a basis of the image
};

inline Reduction gauss(const Matrix& m) {
    const Elem p = m.prime();
    Reduction red;
    Matrix a = m;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && a(piv, col) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                Elem t = a(row, j);
                a.set(row, j, a(piv, j));
                a.set(piv, j, t);
            }
        Elem inv = mod_inverse(a(row, col), p);
        for (std::size_t j = 0; j < a.cols(); ++j)
            a.set(row, j, static_cast<long long>(static_cast<std::uint64_t>(a(row, j)) * inv % p));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0) continue;
            std::uint64_t f = a(i, col);
            for (std::size_t j = 0; j < a.cols(); ++j)
                a.set(i, j, static_cast<long long>(a(i, j)) - static_cast<long long>(f * a(row, j) % p));
        }
        red.pivots.push_back(col);
        ++row;
    }
    red.rank = row;
    red.rref = a;
    red.column_space = m.columns(red.pivots);

    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : red.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    red.nullspace = Matrix(m.cols(), free_cols.size(), p);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t fc = free_cols[k];
        red.nullspace.set(fc, k, 1);
        for (std::size_t r = 0; r < red.pivots.size(); ++r)
            red.nullspace.set(red.pivots[r], k, -static_cast<long long>(a(r, fc)));
    }
    return red;
}

inline std::size_t rank(const Matrix& m) { return gauss(m).rank; }

inline Matrix nullspace(const Matrix& m) { return gauss(m).nullspace; }

// Independent columns spanning the column space of m.
inline Matrix column_basis(const Matrix& m) { return gauss(m).column_space; }

// Solves a x = b (b may have several columns). nullopt if inconsistent.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    Reduction red = gauss(hstack(a, b));
    const std::size_t n = a.cols();
    Matrix x(n, b.cols(), a.prime());
    for (std::size_t r = 0; r < red.rank; ++r) {
        std::size_t pc = red.pivots[r];
        if (pc >= n) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x.set(pc, j, red.rref(r, n + j));
    }
    return x;
}

// Columns of `ambient` greedily chosen so that [sub | chosen] is a basis of span(sub, ambient).
inline Matrix complement_columns(const Matrix& sub, const Matrix& ambient) {
    Reduction red = gauss(hstack(sub, ambient));
    std::vector<std::size_t> picked;
    for (auto c : red.pivots)
        if (c >= sub.cols()) picked.push_back(c - sub.cols());
    return ambient.columns(picked);
}

// Canonical form of the column span of m: nonzero rows of rref(m^T).
inline Matrix span_key(const Matrix& m) {
    Reduction red = gauss(m.transpose());
    return red.rref.block(0, 0, red.rank, red.rref.cols());
}

}  // namespace tilt
