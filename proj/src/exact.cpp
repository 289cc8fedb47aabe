#include "tarry/exact.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace tarry {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, const std::vector<long long>& entries)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (entries.size() != rows * cols) throw std::invalid_argument("IntMatrix: size mismatch");
    for (std::size_t i = 0; i < entries.size(); ++i) data_[i] = static_cast<long>(entries[i]);
}

IntMatrix::IntMatrix(const ExponentMatrix& m) : IntMatrix(m.rows(), m.cols()) {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = m(i, j);
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    IntMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
}

namespace {

// One Bareiss sweep. Returns the rank; when `sign` is given the row swaps are
// tracked so the caller can read the determinant off the last pivot.
std::size_t bareiss(IntMatrix& a, int* sign) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t rank = 0;
    mpz_class prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank) {
            a.swap_rows(piv, rank);
            if (sign) *sign = -*sign;
        }
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                mpz_class t = a(rank, col) * a(i, j) - a(i, col) * a(rank, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, col) = 0;
        }
        prev = a(rank, col);
        ++rank;
    }
    return rank;
}

IntMatrix clear_denominators(const std::vector<std::vector<mpq_class>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t c = n ? rows.front().size() : 0;
    IntMatrix out(n, c);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged rational matrix");
        mpz_class l = 1;
        for (const auto& q : rows[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        for (std::size_t j = 0; j < c; ++j) out(i, j) = rows[i][j].get_num() * (l / rows[i][j].get_den());
    }
    return out;
}

}  // namespace

std::size_t rank_exact(IntMatrix m) { return bareiss(m, nullptr); }

std::size_t rank_exact(const ExponentMatrix& m) { return rank_exact(IntMatrix(m)); }

std::size_t rank_exact(const std::vector<std::vector<mpq_class>>& rows) {
    return rank_exact(clear_denominators(rows));
}

mpz_class determinant_exact(IntMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (m.rows() == 0) return 1;
    int sign = 1;
    if (bareiss(m, &sign) < m.rows()) return 0;
    return sign * m(m.rows() - 1, m.cols() - 1);
}

mpq_class determinant_exact(const std::vector<std::vector<mpq_class>>& rows) {
    const std::size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) throw std::invalid_argument("determinant of non-square matrix");
    mpz_class scale = 1;
    for (const auto& r : rows) {
        mpz_class l = 1;
        for (const auto& q : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        scale *= l;
    }
    mpq_class d(determinant_exact(clear_denominators(rows)), scale);
    d.canonicalize();
    return d;
}

}  // namespace tarry
