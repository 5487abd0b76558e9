#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "lfr/field.hpp"

namespace lfr {

/// Dense row-major matrix over GF(p). Plain value type: copy freely, no
/// shared state. All mutating members exist to build a value; the linear
/// algebra below treats inputs as immutable and returns fresh matrices.
class FieldMatrix {
public:
    FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols);
    FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols,
                std::vector<Elem> entries);
    /// Row-major literal; every entry is reduced mod p.
    FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols,
                std::initializer_list<std::int64_t> entries);

    static FieldMatrix identity(PrimeField field, std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const PrimeField& field() const noexcept { return field_; }
    const std::vector<Elem>& entries() const noexcept { return data_; }

    Elem operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    void set(std::size_t r, std::size_t c, Elem v) {
        data_[r * cols_ + c] = field_.reduce(v);
    }

    void swap_rows(std::size_t a, std::size_t b);
    void scale_row(std::size_t r, Elem factor);
    /// row[dst] += factor * row[src]
    void add_scaled_row(std::size_t dst, std::size_t src, Elem factor);
    /// this[row0+i][col0+j] += src[i][j]
    void add_block(std::size_t row0, std::size_t col0, const FieldMatrix& src);

    bool is_zero() const noexcept;

    friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix mat_add(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix mat_sub(const FieldMatrix& a, const FieldMatrix& b);

/// Contiguous slices; `len` may be zero.
FieldMatrix col_slice(const FieldMatrix& a, std::size_t begin, std::size_t len);
FieldMatrix row_slice(const FieldMatrix& a, std::size_t begin, std::size_t len);
FieldMatrix vstack(const FieldMatrix& top, const FieldMatrix& bottom);

struct RrefResult {
    FieldMatrix rref;       // t * input, in reduced row-echelon form
    FieldMatrix transform;  // invertible rows x rows matrix t
    std::size_t rank;
};

/// Gauss-Jordan with deterministic pivoting: leftmost column first, pivot is
/// the first nonzero entry scanning down (lowest row index). Rows at index
/// >= rank of the transform annihilate the input.
RrefResult rref_with_transform(const FieldMatrix& a);

std::size_t rank(const FieldMatrix& a);

/// Inverse of a square full-rank matrix; throws singular_matrix_error.
FieldMatrix invert(const FieldMatrix& a);

/// True iff every row of `probe` lies in the row space of `big`, i.e.
/// rank([big; probe]) == rank(big).
bool rowspace_contains(const FieldMatrix& big, const FieldMatrix& probe);

}  // namespace lfr
