#include "lfr/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace lfr {

namespace {

void check_same_field(const FieldMatrix& a, const FieldMatrix& b) {
    if (!(a.field() == b.field())) {
        throw field_error("operands live in different prime fields");
    }
}

std::string dims(const FieldMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols,
                         std::vector<Elem> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw shape_error("entry count " + std::to_string(data_.size()) +
                          " does not match " + std::to_string(rows_) + "x" +
                          std::to_string(cols_));
    }
    for (Elem& v : data_) v = field_.reduce(v);
}

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols,
                         std::initializer_list<std::int64_t> entries)
    : field_(field), rows_(rows), cols_(cols) {
    if (entries.size() != rows * cols) {
        throw shape_error("entry count does not match dimensions");
    }
    data_.reserve(entries.size());
    for (std::int64_t v : entries) data_.push_back(field_.reduce_signed(v));
}

FieldMatrix FieldMatrix::identity(PrimeField field, std::size_t n) {
    FieldMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % field.modulus();
    return m;
}

void FieldMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_,
                     data_.begin() + b * cols_);
}

void FieldMatrix::scale_row(std::size_t r, Elem factor) {
    Elem* row = data_.data() + r * cols_;
    for (std::size_t j = 0; j < cols_; ++j) row[j] = field_.mul(row[j], factor);
}

void FieldMatrix::add_scaled_row(std::size_t dst, std::size_t src, Elem factor) {
    const Elem* s = data_.data() + src * cols_;
    Elem* d = data_.data() + dst * cols_;
    for (std::size_t j = 0; j < cols_; ++j) d[j] = field_.mul_add(d[j], factor, s[j]);
}

void FieldMatrix::add_block(std::size_t row0, std::size_t col0, const FieldMatrix& src) {
    check_same_field(*this, src);
    if (row0 + src.rows() > rows_ || col0 + src.cols() > cols_) {
        throw shape_error("block " + dims(src) + " does not fit at offset");
    }
    for (std::size_t i = 0; i < src.rows(); ++i) {
        Elem* d = data_.data() + (row0 + i) * cols_ + col0;
        const Elem* s = src.data_.data() + i * src.cols();
        for (std::size_t j = 0; j < src.cols(); ++j) d[j] = field_.add(d[j], s[j]);
    }
}

bool FieldMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Elem v) { return v == 0; });
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
    check_same_field(a, b);
    if (a.cols() != b.rows()) {
        throw shape_error("cannot multiply " + dims(a) + " by " + dims(b));
    }
    const PrimeField& f = a.field();
    FieldMatrix out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Elem aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out.set(i, j, f.mul_add(out(i, j), aik, b(k, j)));
            }
        }
    }
    return out;
}

FieldMatrix mat_add(const FieldMatrix& a, const FieldMatrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw shape_error("cannot add " + dims(a) + " and " + dims(b));
    }
    FieldMatrix out = a;
    out.add_block(0, 0, b);
    return out;
}

FieldMatrix mat_sub(const FieldMatrix& a, const FieldMatrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw shape_error("cannot subtract " + dims(b) + " from " + dims(a));
    }
    const PrimeField& f = a.field();
    FieldMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out.set(i, j, f.sub(out(i, j), b(i, j)));
        }
    }
    return out;
}

FieldMatrix col_slice(const FieldMatrix& a, std::size_t begin, std::size_t len) {
    if (begin + len > a.cols()) throw shape_error("column slice out of range");
    FieldMatrix out(a.field(), a.rows(), len);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < len; ++j) out.set(i, j, a(i, begin + j));
    }
    return out;
}

FieldMatrix row_slice(const FieldMatrix& a, std::size_t begin, std::size_t len) {
    if (begin + len > a.rows()) throw shape_error("row slice out of range");
    FieldMatrix out(a.field(), len, a.cols());
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(begin + i, j));
    }
    return out;
}

FieldMatrix vstack(const FieldMatrix& top, const FieldMatrix& bottom) {
    check_same_field(top, bottom);
    if (top.cols() != bottom.cols()) {
        throw shape_error("cannot stack " + dims(top) + " over " + dims(bottom));
    }
    FieldMatrix out(top.field(), top.rows() + bottom.rows(), top.cols());
    out.add_block(0, 0, top);
    out.add_block(top.rows(), 0, bottom);
    return out;
}

RrefResult rref_with_transform(const FieldMatrix& a) {
    const PrimeField& f = a.field();
    FieldMatrix r = a;
    FieldMatrix t = FieldMatrix::identity(f, a.rows());
    std::size_t pivot = 0;
    for (std::size_t col = 0; col < a.cols() && pivot < a.rows(); ++col) {
        std::size_t sel = pivot;
        while (sel < a.rows() && r(sel, col) == 0) ++sel;
        if (sel == a.rows()) continue;
        r.swap_rows(pivot, sel);
        t.swap_rows(pivot, sel);
        const Elem scale = f.inv(r(pivot, col));
        r.scale_row(pivot, scale);
        t.scale_row(pivot, scale);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == pivot) continue;
            const Elem factor = r(i, col);
            if (factor == 0) continue;
            const Elem neg = f.neg(factor);
            r.add_scaled_row(i, pivot, neg);
            t.add_scaled_row(i, pivot, neg);
        }
        ++pivot;
    }
    return {std::move(r), std::move(t), pivot};
}

std::size_t rank(const FieldMatrix& a) {
    // Forward elimination only; cheaper than the full RREF.
    const PrimeField& f = a.field();
    FieldMatrix r = a;
    std::size_t pivot = 0;
    for (std::size_t col = 0; col < a.cols() && pivot < a.rows(); ++col) {
        std::size_t sel = pivot;
        while (sel < a.rows() && r(sel, col) == 0) ++sel;
        if (sel == a.rows()) continue;
        r.swap_rows(pivot, sel);
        const Elem inv = f.inv(r(pivot, col));
        for (std::size_t i = pivot + 1; i < a.rows(); ++i) {
            const Elem factor = r(i, col);
            if (factor == 0) continue;
            r.add_scaled_row(i, pivot, f.neg(f.mul(factor, inv)));
        }
        ++pivot;
    }
    return pivot;
}

FieldMatrix invert(const FieldMatrix& a) {
    if (a.rows() != a.cols()) {
        throw shape_error("cannot invert non-square " + dims(a));
    }
    RrefResult res = rref_with_transform(a);
    if (res.rank != a.rows()) {
        throw singular_matrix_error("matrix of rank " + std::to_string(res.rank) +
                                    " is singular");
    }
    return std::move(res.transform);
}

bool rowspace_contains(const FieldMatrix& big, const FieldMatrix& probe) {
    check_same_field(big, probe);
    if (big.cols() != probe.cols()) {
        throw shape_error("row space test needs matching column counts, got " +
                          dims(big) + " and " + dims(probe));
    }
    return rank(vstack(big, probe)) == rank(big);
}

}  // namespace lfr
