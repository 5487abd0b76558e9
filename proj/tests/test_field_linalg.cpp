#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "lfr/errors.hpp"
#include "lfr/matrix.hpp"

using lfr::Elem;
using lfr::FieldMatrix;
using lfr::PrimeField;

namespace {

FieldMatrix random_matrix(std::mt19937_64& rng, const PrimeField& field, std::size_t rows,
                          std::size_t cols) {
    FieldMatrix m(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng() % field.modulus());
    return m;
}

FieldMatrix naive_mul(const FieldMatrix& a, const FieldMatrix& b) {
    const PrimeField& f = a.field();
    FieldMatrix out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Elem acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc = (acc + a(i, k) * b(k, j)) % f.modulus();
            out.set(i, j, acc);
        }
    return out;
}

// Every linear combination of the rows; the span has q^rank elements.
std::set<std::vector<Elem>> row_span(const FieldMatrix& a) {
    const Elem q = a.field().modulus();
    std::set<std::vector<Elem>> span;
    std::vector<Elem> coeff(a.rows(), 0);
    for (;;) {
        std::vector<Elem> combo(a.cols(), 0);
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                combo[c] = (combo[c] + coeff[r] * a(r, c)) % q;
        span.insert(combo);
        std::size_t pos = coeff.size();
        while (pos > 0 && ++coeff[pos - 1] == q) coeff[--pos] = 0;
        if (pos == 0) break;
    }
    return span;
}

std::size_t span_rank(const FieldMatrix& a) {
    const Elem q = a.field().modulus();
    std::size_t count = row_span(a).size();
    std::size_t r = 0;
    for (std::size_t power = 1; power < count; power *= q) ++r;
    return r;
}

Elem det_laplace(const FieldMatrix& a, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) {
    const PrimeField& f = a.field();
    if (rows.size() == 1) return a(rows[0], cols[0]);
    Elem acc = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
        std::vector<std::size_t> sub_cols;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (c != j) sub_cols.push_back(cols[c]);
        Elem term = f.mul(a(rows[0], cols[j]), det_laplace(a, sub_rows, sub_cols));
        acc = j % 2 == 0 ? f.add(acc, term) : f.sub(acc, term);
    }
    return acc;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Largest size of an invertible square submatrix.
std::size_t minor_rank(const FieldMatrix& a) {
    for (std::size_t s = std::min(a.rows(), a.cols()); s >= 1; --s) {
        std::vector<std::vector<std::size_t>> row_sets, col_sets;
        std::vector<std::size_t> cur;
        subsets(a.rows(), s, 0, cur, row_sets);
        subsets(a.cols(), s, 0, cur, col_sets);
        for (const auto& rs : row_sets)
            for (const auto& cs : col_sets)
                if (det_laplace(a, rs, cs) != 0) return s;
    }
    return 0;
}

FieldMatrix random_invertible(std::mt19937_64& rng, const PrimeField& field, std::size_t n) {
    for (;;) {
        FieldMatrix t = random_matrix(rng, field, n, n);
        if (lfr::rank(t) == n) return t;
    }
}

}  // namespace

TEST_CASE("prime field arithmetic") {
    PrimeField f7(7);
    CHECK(f7.add(5, 4) == 2);
    CHECK(f7.sub(2, 5) == 4);
    CHECK(f7.neg(3) == 4);
    CHECK(f7.neg(0) == 0);
    CHECK(f7.mul(3, 5) == 1);
    CHECK(f7.inv(3) == 5);
    CHECK(f7.mul_add(1, 2, 3) == 0);
    CHECK(f7.pow(3, 0) == 1);
    CHECK(f7.pow(3, 6) == 1);
    CHECK(f7.reduce_signed(-1) == 6);
    CHECK(f7.reduce_signed(-14) == 0);
    CHECK(f7.reduce_signed(15) == 1);
    for (Elem q : {Elem(2), Elem(3), Elem(5), Elem(31)}) {
        PrimeField f(q);
        for (Elem a = 1; a < q; ++a) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.pow(a, q - 1) == 1);
        }
    }
    CHECK_THROWS_AS(f7.inv(0), lfr::singular_matrix_error);
}

TEST_CASE("field construction accepts primes only") {
    CHECK(lfr::is_prime(2));
    CHECK(lfr::is_prime(3));
    CHECK(lfr::is_prime(31));
    CHECK(lfr::is_prime(2147483647ull));
    CHECK_FALSE(lfr::is_prime(0));
    CHECK_FALSE(lfr::is_prime(1));
    CHECK_FALSE(lfr::is_prime(4));
    CHECK_FALSE(lfr::is_prime(2147483646ull));
    CHECK_NOTHROW(PrimeField(2));
    CHECK_NOTHROW(PrimeField(PrimeField::max_modulus));
    CHECK_THROWS_AS(PrimeField(1), lfr::field_error);
    CHECK_THROWS_AS(PrimeField(6), lfr::field_error);
    CHECK_THROWS_AS(PrimeField((Elem(1) << 32) + 15), lfr::field_error);
}

TEST_CASE("matrix literals reduce mod p") {
    FieldMatrix m(PrimeField(7), 1, 3, {-1, 7, 8});
    CHECK(m(0, 0) == 6);
    CHECK(m(0, 1) == 0);
    CHECK(m(0, 2) == 1);
}

TEST_CASE("identity is neutral and GF(2) sums cancel") {
    PrimeField f2(2);
    std::mt19937_64 rng(11);
    FieldMatrix b = random_matrix(rng, f2, 3, 4);
    CHECK(mat_mul(FieldMatrix::identity(f2, 3), b) == b);
    FieldMatrix a(f2, 2, 2, {1, 1, 0, 1});
    FieldMatrix v(f2, 2, 1, {1, 1});
    CHECK(mat_mul(a, v) == FieldMatrix(f2, 2, 1, {0, 1}));
}

TEST_CASE("product matches the naive triple loop") {
    std::mt19937_64 rng(101);
    for (Elem q : {Elem(2), Elem(5), Elem(7)}) {
        PrimeField f(q);
        FieldMatrix a = random_matrix(rng, f, 4, 5);
        FieldMatrix b = random_matrix(rng, f, 5, 2);
        CHECK(mat_mul(a, b) == naive_mul(a, b));
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t m = 1 + rng() % 6, n = 1 + rng() % 6, p = 1 + rng() % 6;
            FieldMatrix x = random_matrix(rng, f, m, n);
            FieldMatrix y = random_matrix(rng, f, n, p);
            CHECK(mat_mul(x, y) == naive_mul(x, y));
        }
    }
}

TEST_CASE("multiplication is associative") {
    std::mt19937_64 rng(202);
    PrimeField f(7);
    for (int trial = 0; trial < 20; ++trial) {
        FieldMatrix a = random_matrix(rng, f, 3, 4);
        FieldMatrix b = random_matrix(rng, f, 4, 2);
        FieldMatrix c = random_matrix(rng, f, 2, 5);
        CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
    }
}

TEST_CASE("add and sub round trip") {
    std::mt19937_64 rng(303);
    PrimeField f(5);
    FieldMatrix a = random_matrix(rng, f, 3, 3);
    FieldMatrix b = random_matrix(rng, f, 3, 3);
    CHECK(mat_sub(mat_add(a, b), b) == a);
}

TEST_CASE("shape and field mismatches throw") {
    PrimeField f2(2), f3(3);
    FieldMatrix a(f2, 2, 3);
    FieldMatrix b(f2, 2, 3);
    FieldMatrix c(f3, 3, 2);
    CHECK_THROWS_AS(mat_mul(a, b), lfr::shape_error);
    CHECK_THROWS_AS(mat_mul(a, c), lfr::field_error);
    CHECK_THROWS_AS(mat_add(a, FieldMatrix(f2, 3, 2)), lfr::shape_error);
    CHECK_THROWS_AS(vstack(a, c), lfr::field_error);
    CHECK_THROWS_AS(rowspace_contains(a, FieldMatrix(f2, 1, 2)), lfr::shape_error);
}

TEST_CASE("rref of zero and identity") {
    PrimeField f(5);
    auto z = rref_with_transform(FieldMatrix(f, 2, 3));
    CHECK(z.rank == 0);
    CHECK(z.rref == FieldMatrix(f, 2, 3));
    CHECK(z.transform == FieldMatrix::identity(f, 2));
    auto i = rref_with_transform(FieldMatrix::identity(f, 3));
    CHECK(i.rank == 3);
    CHECK(i.rref == FieldMatrix::identity(f, 3));
    CHECK(i.transform == FieldMatrix::identity(f, 3));
}

TEST_CASE("rref transform properties on random input") {
    std::mt19937_64 rng(404);
    for (Elem q : {Elem(2), Elem(3), Elem(5), Elem(7)}) {
        PrimeField f(q);
        for (int trial = 0; trial < 15; ++trial) {
            std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 5;
            FieldMatrix a = random_matrix(rng, f, rows, cols);
            auto rr = rref_with_transform(a);
            CHECK(mat_mul(rr.transform, a) == rr.rref);
            CHECK_NOTHROW(lfr::invert(rr.transform));
            CHECK(rr.rank == minor_rank(a));
            CHECK(rr.rank == lfr::rank(a));
            // rows at and below the rank annihilate the input
            for (std::size_t r = rr.rank; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) CHECK(rr.rref(r, c) == 0);
            // pivot columns are unit vectors, pivots move right
            std::size_t last_pivot = 0;
            for (std::size_t r = 0; r < rr.rank; ++r) {
                std::size_t pivot = 0;
                while (pivot < cols && rr.rref(r, pivot) == 0) ++pivot;
                REQUIRE(pivot < cols);
                CHECK(rr.rref(r, pivot) == 1);
                if (r > 0) CHECK(pivot > last_pivot);
                last_pivot = pivot;
                for (std::size_t other = 0; other < rows; ++other)
                    if (other != r) CHECK(rr.rref(other, pivot) == 0);
            }
        }
    }
}

TEST_CASE("rank agrees with the span oracle and survives invertible transforms") {
    std::mt19937_64 rng(505);
    for (Elem q : {Elem(2), Elem(3)}) {
        PrimeField f(q);
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 4;
            FieldMatrix a = random_matrix(rng, f, rows, cols);
            CHECK(lfr::rank(a) == span_rank(a));
            FieldMatrix t = random_invertible(rng, f, rows);
            CHECK(lfr::rank(mat_mul(t, a)) == lfr::rank(a));
        }
    }
}

TEST_CASE("six by three over GF(5) matches the exhaustive minor oracle") {
    std::mt19937_64 rng(606);
    PrimeField f(5);
    for (int trial = 0; trial < 10; ++trial) {
        FieldMatrix a = random_matrix(rng, f, 6, 3);
        auto rr = rref_with_transform(a);
        CHECK(mat_mul(rr.transform, a) == rr.rref);
        CHECK(rr.rank == minor_rank(a));
    }
}

TEST_CASE("inverse") {
    PrimeField f3(3), f5(5), f7(7);
    CHECK(lfr::invert(FieldMatrix::identity(f7, 4)) == FieldMatrix::identity(f7, 4));
    CHECK(lfr::invert(FieldMatrix(f3, 1, 1, {2})) == FieldMatrix(f3, 1, 1, {2}));
    std::mt19937_64 rng(707);
    FieldMatrix a = random_invertible(rng, f7, 5);
    CHECK(mat_mul(a, lfr::invert(a)) == FieldMatrix::identity(f7, 5));
    CHECK(mat_mul(lfr::invert(a), a) == FieldMatrix::identity(f7, 5));
    CHECK_THROWS_AS(lfr::invert(FieldMatrix(f5, 2, 2, {1, 2, 2, 4})),
                    lfr::singular_matrix_error);
    CHECK_THROWS_AS(lfr::invert(FieldMatrix(f5, 2, 3)), lfr::shape_error);
}

TEST_CASE("row space membership") {
    PrimeField f2(2);
    FieldMatrix big(f2, 1, 3, {1, 0, 0});
    CHECK(rowspace_contains(big, FieldMatrix(f2, 1, 3)));
    CHECK_FALSE(rowspace_contains(big, FieldMatrix(f2, 1, 3, {0, 1, 0})));
    CHECK(rowspace_contains(FieldMatrix::identity(f2, 3), FieldMatrix(f2, 2, 3, {1, 1, 0, 1, 1, 1})));

    std::mt19937_64 rng(808);
    for (Elem q : {Elem(2), Elem(3)}) {
        PrimeField f(q);
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
            FieldMatrix a = random_matrix(rng, f, rows, cols);
            FieldMatrix combos = mat_mul(random_matrix(rng, f, 2, rows), a);
            CHECK(rowspace_contains(a, combos));
            auto span = row_span(a);
            FieldMatrix probe = random_matrix(rng, f, 1, cols);
            std::vector<Elem> row(probe.entries());
            CHECK(rowspace_contains(a, probe) == (span.count(row) > 0));
        }
    }
}

TEST_CASE("slices, stacking and block adds") {
    PrimeField f(7);
    FieldMatrix a(f, 2, 4, {1, 2, 3, 4, 5, 6, 0, 1});
    CHECK(col_slice(a, 1, 2) == FieldMatrix(f, 2, 2, {2, 3, 6, 0}));
    CHECK(col_slice(a, 0, 0) == FieldMatrix(f, 2, 0));
    CHECK(row_slice(a, 1, 1) == FieldMatrix(f, 1, 4, {5, 6, 0, 1}));
    CHECK(row_slice(a, 2, 0) == FieldMatrix(f, 0, 4));
    FieldMatrix b(f, 1, 4, {1, 1, 1, 1});
    FieldMatrix stacked = vstack(a, b);
    CHECK(stacked.rows() == 3);
    CHECK(row_slice(stacked, 0, 2) == a);
    CHECK(row_slice(stacked, 2, 1) == b);
    FieldMatrix acc(f, 3, 4);
    acc.add_block(0, 0, a);
    acc.add_block(1, 0, a);
    CHECK(acc(1, 0) == 6);
    CHECK(acc(2, 1) == 6);
    CHECK_THROWS_AS(acc.add_block(2, 0, a), lfr::shape_error);
    CHECK_THROWS_AS(col_slice(a, 3, 2), lfr::shape_error);
}
