#ifndef OPENMORSE_SNF_HPP
#define OPENMORSE_SNF_HPP

#include <cstdint>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace openmorse {

using bigint = boost::multiprecision::cpp_int;

struct int_matrix {
    int rows = 0, cols = 0;
    std::vector<long long> a; // row-major

    int_matrix() = default;
    int_matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c), 0) {}
    long long& at(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
    long long at(int i, int j) const { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
    bool is_zero() const {
        for (long long x : a)
            if (x != 0) return false;
        return true;
    }
};

inline int_matrix multiply(const int_matrix& x, const int_matrix& y) {
    int_matrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            long long v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

struct snf_result {
    int rank = 0;
    std::vector<long long> factors; // d1 | d2 | ... | dr, all positive
};

namespace detail {

struct overflow_signal {};

// checked int64 arithmetic; throws to trigger escalation to bigint
struct i64 {
    long long v = 0;
    i64() = default;
    i64(long long x) : v(x) {}
    friend i64 operator+(i64 a, i64 b) {
        long long r;
        if (__builtin_add_overflow(a.v, b.v, &r)) throw overflow_signal{};
        return r;
    }
    friend i64 operator-(i64 a, i64 b) {
        long long r;
        if (__builtin_sub_overflow(a.v, b.v, &r)) throw overflow_signal{};
        return r;
    }
    friend i64 operator*(i64 a, i64 b) {
        long long r;
        if (__builtin_mul_overflow(a.v, b.v, &r)) throw overflow_signal{};
        return r;
    }
    friend i64 operator/(i64 a, i64 b) {
        if (a.v == std::numeric_limits<long long>::min() && b.v == -1) throw overflow_signal{};
        return a.v / b.v;
    }
    friend i64 operator%(i64 a, i64 b) {
        if (a.v == std::numeric_limits<long long>::min() && b.v == -1) throw overflow_signal{};
        return a.v % b.v;
    }
    friend bool operator==(i64 a, i64 b) { return a.v == b.v; }
    friend bool operator!=(i64 a, i64 b) { return a.v != b.v; }
    friend bool operator<(i64 a, i64 b) { return a.v < b.v; }
    i64 operator-() const {
        if (v == std::numeric_limits<long long>::min()) throw overflow_signal{};
        return -v;
    }
};

template <typename T> T t_abs(const T& x) { return x < T(0) ? -x : x; }

// Diagonalization by row/column operations, smallest-pivot-first, with the
// divisibility fix-up. Generic over the integer type.
template <typename T> std::vector<T> snf_diagonal(std::vector<std::vector<T>> m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<T> diag;
    int t = 0;
    while (t < rows && t < cols) {
        // locate a nonzero entry of minimal absolute value in the remaining block
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (m[i][j] != T(0) &&
                    (pi < 0 || t_abs(m[i][j]) < t_abs(m[pi][pj])))
                    pi = i, pj = j;
        if (pi < 0) break;
        std::swap(m[t], m[static_cast<size_t>(pi)]);
        for (int i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

        bool clean = true;
        for (int i = t + 1; i < rows; ++i)
            if (m[i][t] != T(0)) {
                T q = m[i][t] / m[t][t];
                if (q != T(0))
                    for (int j = t; j < cols; ++j) m[i][j] = m[i][j] - q * m[t][j];
                if (m[i][t] != T(0)) clean = false;
            }
        for (int j = t + 1; j < cols; ++j)
            if (m[t][j] != T(0)) {
                T q = m[t][j] / m[t][t];
                if (q != T(0))
                    for (int i = t; i < rows; ++i) m[i][j] = m[i][j] - q * m[i][t];
                if (m[t][j] != T(0)) clean = false;
            }
        if (!clean) continue; // rerun with a smaller pivot

        // divisibility: fold any non-divisible entry into the pivot row
        bool fixed = false;
        for (int i = t + 1; i < rows && !fixed; ++i)
            for (int j = t + 1; j < cols && !fixed; ++j)
                if (m[i][j] % m[t][t] != T(0)) {
                    for (int jj = t; jj < cols; ++jj) m[t][jj] = m[t][jj] + m[i][jj];
                    fixed = true;
                }
        if (fixed) continue;

        diag.push_back(t_abs(m[t][t]));
        ++t;
    }
    return diag;
}

} // namespace detail

// Invariant factors and rank. Exact: machine integers with overflow checks,
// escalating to arbitrary precision when they trip.
inline snf_result smith_normal_form(const int_matrix& m) {
    snf_result out;
    if (m.rows == 0 || m.cols == 0) return out;
    try {
        std::vector<std::vector<detail::i64>> w(static_cast<size_t>(m.rows),
                                                std::vector<detail::i64>(static_cast<size_t>(m.cols)));
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) w[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.at(i, j);
        auto d = detail::snf_diagonal(std::move(w));
        out.rank = static_cast<int>(d.size());
        for (auto x : d) out.factors.push_back(x.v);
        return out;
    } catch (detail::overflow_signal&) {
        std::vector<std::vector<bigint>> w(static_cast<size_t>(m.rows),
                                           std::vector<bigint>(static_cast<size_t>(m.cols)));
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) w[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.at(i, j);
        auto d = detail::snf_diagonal(std::move(w));
        out.rank = static_cast<int>(d.size());
        for (const auto& x : d) {
            if (x > bigint(std::numeric_limits<long long>::max()))
                fail(errc::overflow, "invariant factor exceeds 64 bits");
            out.factors.push_back(static_cast<long long>(x));
        }
        return out;
    }
}

inline int rank_z(const int_matrix& m) { return smith_normal_form(m).rank; }

// Rank over GF(2).
inline int rank_z2(const int_matrix& m) {
    std::vector<std::vector<char>> w(static_cast<size_t>(m.rows), std::vector<char>(static_cast<size_t>(m.cols), 0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) w[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<char>(((m.at(i, j) % 2) + 2) % 2);
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < m.rows; ++i)
            if (w[static_cast<size_t>(i)][static_cast<size_t>(col)]) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(w[static_cast<size_t>(rank)], w[static_cast<size_t>(pivot)]);
        for (int i = 0; i < m.rows; ++i)
            if (i != rank && w[static_cast<size_t>(i)][static_cast<size_t>(col)])
                for (int j = col; j < m.cols; ++j)
                    w[static_cast<size_t>(i)][static_cast<size_t>(j)] ^= w[static_cast<size_t>(rank)][static_cast<size_t>(j)];
        ++rank;
    }
    return rank;
}

} // namespace openmorse

#endif
