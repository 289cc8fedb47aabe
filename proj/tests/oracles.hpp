#pragma once

// Independent reference computations used only by the tests. None of these
// share code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tarry/exponent.hpp"

namespace oracle {

using IntRows = std::vector<std::vector<long long>>;

// Laplace expansion along the first row.
inline mpz_class laplace_det(const IntRows& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return mpz_class(static_cast<long>(a[0][0]));
    mpz_class det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c] == 0) continue;
        IntRows minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<long long> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(a[i][j]);
            minor.push_back(row);
        }
        mpz_class term = mpz_class(static_cast<long>(a[0][c])) * laplace_det(minor);
        det += (c % 2 == 0) ? term : mpz_class(-term);
    }
    return det;
}

inline void combinations(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (fn(idx)) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Size of the largest non-vanishing minor.
inline std::size_t minor_rank(const IntRows& a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    for (std::size_t k = std::min(rows, cols); k > 0; --k) {
        bool found = false;
        combinations(rows, k, [&](const std::vector<std::size_t>& ri) {
            combinations(cols, k, [&](const std::vector<std::size_t>& ci) {
                IntRows sub;
                for (auto i : ri) {
                    std::vector<long long> row;
                    for (auto j : ci) row.push_back(a[i][j]);
                    sub.push_back(row);
                }
                found = laplace_det(sub) != 0;
                return found;
            });
            return found;
        });
        if (found) return k;
    }
    return 0;
}

inline bool nl_less(const std::vector<int>& a, const std::vector<int>& b) {
    long da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db;
    return a < b;
}

// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 50) {
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps, int d) {
            const double mid = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
            const double flm = f(lm), frm = f(rm);
            const double left = (mid - lo) / 6 * (flo + 4 * flm + fmid);
            const double right = (hi - mid) / 6 * (fmid + 4 * frm + fhi);
            if (d <= 0 || std::abs(left + right - whole) <= 15 * eps)
                return left + right + (left + right - whole) / 15;
            return rec(lo, mid, flo, flm, fmid, left, eps / 2, d - 1) + rec(mid, hi, fmid, frm, fhi, right, eps / 2, d - 1);
        };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return rec(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, depth);
}

// int_0^1 exp(2 pi i a x) dx.
inline std::complex<double> linear_phase(double a) {
    if (a == 0.0) return 1.0;
    const std::complex<double> z(0.0, 2.0 * std::numbers::pi * a);
    return (std::exp(z) - 1.0) / z;
}

inline double sinc2(double a) {
    if (a == 0.0) return 1.0;
    const double s = std::sin(std::numbers::pi * a) / (std::numbers::pi * a);
    return s * s;
}

inline tarry::PolynomialShape shape(std::size_t r, std::vector<std::vector<int>> rows) {
    std::vector<tarry::ExponentVector> v;
    for (auto& row : rows) v.emplace_back(std::move(row));
    return tarry::PolynomialShape(r, std::move(v));
}

inline std::string corpus(const std::string& name) { return std::string(TARRY_CORPUS_DIR) + "/" + name; }

}  // namespace oracle
