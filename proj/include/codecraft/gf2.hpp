// Bit-packed GF(2) vectors and matrices with the row-reduction toolkit
// used throughout the code-craft pipeline. All values are immutable in
// spirit: operations return new objects and never mutate arguments.

#ifndef CODECRAFT_GF2_HPP
#define CODECRAFT_GF2_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace codecraft {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len)
        : len_(len), words_((len + 63) / 64, 0) {}

    static BitVector from_support(std::size_t len, const std::vector<std::size_t>& support) {
        BitVector v(len);
        for (std::size_t i : support) v.set(i, true);
        return v;
    }

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool value) {
        if (i >= len_) throw std::out_of_range("BitVector::set: index " + std::to_string(i));
        uint64_t mask = uint64_t(1) << (i & 63);
        if (value) words_[i >> 6] |= mask;
        else words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) {
        words_[i >> 6] ^= uint64_t(1) << (i & 63);
    }

    void xor_inplace(const BitVector& other) {
        if (other.len_ != len_) throw std::invalid_argument("BitVector xor: length mismatch");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    }

    BitVector operator^(const BitVector& other) const {
        BitVector r = *this;
        r.xor_inplace(other);
        return r;
    }

    std::size_t weight() const {
        std::size_t w = 0;
        for (uint64_t word : words_) w += std::popcount(word);
        return w;
    }

    bool any() const {
        for (uint64_t word : words_) if (word) return true;
        return false;
    }

    // Parity of the overlap <this, other>; the symplectic building block.
    bool dot(const BitVector& other) const {
        if (other.len_ != len_) throw std::invalid_argument("BitVector dot: length mismatch");
        uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
        return std::popcount(acc) & 1;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            uint64_t word = words_[w];
            while (word) {
                unsigned bit = std::countr_zero(word);
                s.push_back(w * 64 + bit);
                word &= word - 1;
            }
        }
        return s;
    }

    // Keep the coordinates listed in `cols` (in order), drop the rest.
    BitVector select(const std::vector<std::size_t>& cols) const {
        BitVector r(cols.size());
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (get(cols[i])) r.set(i, true);
        return r;
    }

    bool operator==(const BitVector& other) const {
        return len_ == other.len_ && words_ == other.words_;
    }
    bool operator!=(const BitVector& other) const { return !(*this == other); }

    // Lexicographic comparison of supports (used for deterministic tie-breaks
    // in minimum-weight searches).
    bool support_less(const BitVector& other) const {
        return support() < other.support();
    }

    const std::vector<uint64_t>& words() const { return words_; }

private:
    friend class BitMatrix;
    std::size_t len_ = 0;
    std::vector<uint64_t> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64),
          data_(rows * ((cols + 63) / 64), 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static BitMatrix from_rows(const std::vector<BitVector>& rows) {
        if (rows.empty()) return BitMatrix(0, 0);
        BitMatrix m(rows.size(), rows[0].size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_) throw std::invalid_argument("from_rows: ragged rows");
            std::copy(rows[r].words().begin(), rows[r].words().end(), m.data_.begin() + r * m.stride_);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool value) {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("BitMatrix::set: out of range");
        uint64_t mask = uint64_t(1) << (c & 63);
        if (value) data_[r * stride_ + (c >> 6)] |= mask;
        else data_[r * stride_ + (c >> 6)] &= ~mask;
    }

    BitVector row(std::size_t r) const {
        BitVector v(cols_);
        std::copy(data_.begin() + r * stride_, data_.begin() + (r + 1) * stride_,
                  v.words_.begin());
        return v;
    }

    void set_row(std::size_t r, const BitVector& v) {
        if (v.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
        std::copy(v.words().begin(), v.words().end(), data_.begin() + r * stride_);
    }

    void xor_row(std::size_t dst, std::size_t src) {
        uint64_t* d = data_.data() + dst * stride_;
        const uint64_t* s = data_.data() + src * stride_;
        for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
    }

    void xor_row(std::size_t dst, const BitVector& v) {
        if (v.size() != cols_) throw std::invalid_argument("xor_row: length mismatch");
        uint64_t* d = data_.data() + dst * stride_;
        for (std::size_t w = 0; w < stride_; ++w) d[w] ^= v.words()[w];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t w = 0; w < stride_; ++w)
            std::swap(data_[a * stride_ + w], data_[b * stride_ + w]);
    }

    bool row_any(std::size_t r) const {
        const uint64_t* d = data_.data() + r * stride_;
        for (std::size_t w = 0; w < stride_; ++w) if (d[w]) return true;
        return false;
    }

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c)) t.set(c, r, true);
        return t;
    }

    // Matrix product over GF(2).
    BitMatrix mul(const BitMatrix& other) const {
        if (cols_ != other.rows_) throw std::invalid_argument("mul: dimension mismatch");
        BitMatrix out(rows_, other.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            uint64_t* dst = out.data_.data() + r * out.stride_;
            for (std::size_t c = 0; c < cols_; ++c) {
                if (!get(r, c)) continue;
                const uint64_t* src = other.data_.data() + c * other.stride_;
                for (std::size_t w = 0; w < other.stride_; ++w) dst[w] ^= src[w];
            }
        }
        return out;
    }

    // v -> M v^T as a column resultvector of length rows().
    BitVector mul_vec(const BitVector& v) const {
        if (v.size() != cols_) throw std::invalid_argument("mul_vec: dimension mismatch");
        BitVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            uint64_t acc = 0;
            const uint64_t* d = data_.data() + r * stride_;
            for (std::size_t w = 0; w < stride_; ++w) acc ^= d[w] & v.words()[w];
            if (std::popcount(acc) & 1) out.set(r, true);
        }
        return out;
    }

    // x (row vector over rows()) -> x M.
    BitVector mul_left(const BitVector& x) const {
        if (x.size() != rows_) throw std::invalid_argument("mul_left: dimension mismatch");
        BitVector out(cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            if (x.get(r)) out.xor_inplace(row(r));
        return out;
    }

    bool is_zero() const {
        for (uint64_t w : data_) if (w) return false;
        return true;
    }

    BitMatrix select_columns(const std::vector<std::size_t>& cols) const {
        BitMatrix out(rows_, cols.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t i = 0; i < cols.size(); ++i)
                if (get(r, cols[i])) out.set(r, i, true);
        return out;
    }

    BitMatrix select_rows(const std::vector<std::size_t>& rows) const {
        BitMatrix out(rows.size(), cols_);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const uint64_t* s = data_.data() + rows[i] * stride_;
            std::copy(s, s + stride_, out.data_.data() + i * out.stride_);
        }
        return out;
    }

    static BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom) {
        if (top.rows() == 0) return bottom;
        if (bottom.rows() == 0) return top;
        if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: column mismatch");
        BitMatrix out(top.rows() + bottom.rows(), top.cols());
        std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
        std::copy(bottom.data_.begin(), bottom.data_.end(),
                  out.data_.begin() + top.rows() * out.stride_);
        return out;
    }

    static BitMatrix hstack(const BitMatrix& left, const BitMatrix& right) {
        if (left.rows() != right.rows()) throw std::invalid_argument("hstack: row mismatch");
        BitMatrix out(left.rows(), left.cols() + right.cols());
        for (std::size_t r = 0; r < left.rows(); ++r) {
            for (std::size_t c = 0; c < left.cols(); ++c)
                if (left.get(r, c)) out.set(r, c, true);
            for (std::size_t c = 0; c < right.cols(); ++c)
                if (right.get(r, c)) out.set(r, left.cols() + c, true);
        }
        return out;
    }

    bool operator==(const BitMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<uint64_t> data_;
};

struct RrefResult {
    BitMatrix reduced;               // row-reduced echelon form of M
    std::vector<std::size_t> pivot_cols;
    BitMatrix transform;             // invertible, transform * M = reduced
};

// Reduced row-echelon form with deterministic pivoting (lowest column
// index first), tracking the row transform.
inline RrefResult rref(const BitMatrix& m) {
    RrefResult res{m, {}, BitMatrix::identity(m.rows())};
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && !res.reduced.get(piv, c)) ++piv;
        if (piv == m.rows()) continue;
        res.reduced.swap_rows(r, piv);
        res.transform.swap_rows(r, piv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i != r && res.reduced.get(i, c)) {
                res.reduced.xor_row(i, r);
                res.transform.xor_row(i, r);
            }
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    return res;
}

inline std::size_t rank(const BitMatrix& m) {
    BitMatrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && !a.get(piv, c)) ++piv;
        if (piv == a.rows()) continue;
        a.swap_rows(r, piv);
        for (std::size_t i = r + 1; i < a.rows(); ++i)
            if (a.get(i, c)) a.xor_row(i, r);
        ++r;
    }
    return r;
}

// Basis of the right kernel {v : M v^T = 0}; rows() == cols(M) - rank(M).
inline BitMatrix kernel_basis(const BitMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : rr.pivot_cols) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    BitMatrix ker(free_cols.size(), m.cols());
    for (std::size_t i = 0; i < free_cols.size(); ++i) {
        ker.set(i, free_cols[i], true);
        for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
            if (rr.reduced.get(r, free_cols[i]))
                ker.set(i, rr.pivot_cols[r], true);
    }
    return ker;
}

// Solve x M = b. Returns the deterministic rref-based solution, or
// nullopt when b is outside the rowspace of M.
inline std::optional<BitVector> solve_left(const BitMatrix& m, const BitVector& b) {
    if (b.size() != m.cols())
        throw std::invalid_argument("solve_left: vector length does not match column count");
    RrefResult rr = rref(m);
    BitVector x(m.rows());
    BitVector residual = b;
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r) {
        if (residual.get(rr.pivot_cols[r])) {
            residual.xor_inplace(rr.reduced.row(r));
            x.xor_inplace(rr.transform.row(r));
        }
    }
    if (residual.any()) return std::nullopt;
    return x;
}

inline bool in_rowspace(const BitMatrix& m, const BitVector& v) {
    if (v.size() != m.cols())
        throw std::invalid_argument("in_rowspace: vector length does not match column count");
    RrefResult rr = rref(m);
    BitVector residual = v;
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
        if (residual.get(rr.pivot_cols[r]))
            residual.xor_inplace(rr.reduced.row(r));
    return !residual.any();
}

} // namespace codecraft

#endif
