#include "tarry/lemma.hpp"

#include <algorithm>
#include <cmath>

#include "tarry/exact.hpp"
#include "tarry/sampling.hpp"

namespace tarry {

namespace {

void check_kvec(const ExponentVector& kvec) {
    if (kvec.size() < 2) throw InputError("the Hessian identity needs r > 1");
    for (std::size_t i = 0; i < kvec.size(); ++i)
        if (kvec[i] < 1) throw InputError("the Hessian identity needs every exponent >= 1");
}

template <class P>
void check_point(const ExponentVector& kvec, const P& x) {
    if (x.size() != kvec.size()) throw InputError("point has wrong dimension");
    for (const auto& c : x)
        if (c == 0) throw InputError("zero coordinate");
}

}  // namespace

long long hessian_reduced_factor(const ExponentVector& kvec) {
    const long long f = 1 - kvec.degree();
    return kvec.size() % 2 == 0 ? f : -f;
}

double monomial_hessian_det(const ExponentVector& kvec, const Point& x) {
    check_kvec(kvec);
    check_point(kvec, x);
    const auto r = static_cast<Eigen::Index>(kvec.size());
    const double xk = monomial_value(kvec, x);
    Eigen::MatrixXd A(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) {
            const auto ki = kvec[static_cast<std::size_t>(i)], kj = kvec[static_cast<std::size_t>(j)];
            A(i, j) = ki * (kj - (i == j ? 1 : 0)) * xk / (x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)]);
        }
    return A.partialPivLu().determinant();
}

mpq_class monomial_hessian_det(const ExponentVector& kvec, const RationalPoint& x) {
    check_kvec(kvec);
    check_point(kvec, x);
    const std::size_t r = kvec.size();
    mpq_class xk = 1;
    for (std::size_t i = 0; i < r; ++i)
        for (int e = 0; e < kvec[i]; ++e) xk *= x[i];
    std::vector<std::vector<mpq_class>> A(r, std::vector<mpq_class>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            A[i][j] = mpq_class(kvec[i] * (kvec[j] - (i == j ? 1 : 0))) * xk / (x[i] * x[j]);
            A[i][j].canonicalize();
        }
    return determinant_exact(A);
}

double hessian_closed_form(const ExponentVector& kvec, const Point& x) {
    check_kvec(kvec);
    check_point(kvec, x);
    double v = static_cast<double>(hessian_reduced_factor(kvec));
    const double xk = monomial_value(kvec, x);
    for (std::size_t i = 0; i < kvec.size(); ++i) v *= kvec[i] * xk / (x[i] * x[i]);
    return v;
}

mpq_class hessian_closed_form(const ExponentVector& kvec, const RationalPoint& x) {
    check_kvec(kvec);
    check_point(kvec, x);
    mpq_class xk = 1;
    for (std::size_t i = 0; i < kvec.size(); ++i)
        for (int e = 0; e < kvec[i]; ++e) xk *= x[i];
    mpq_class v(static_cast<long>(hessian_reduced_factor(kvec)));
    for (std::size_t i = 0; i < kvec.size(); ++i) v *= kvec[i] * xk / (x[i] * x[i]);
    v.canonicalize();
    return v;
}

Lemma2Result verify_lemma2(const ExponentVector& kvec, std::size_t trials, std::uint64_t seed, double delta) {
    check_kvec(kvec);
    Lemma2Result res;
    res.exponents.assign(kvec.exponents().begin(), kvec.exponents().end());
    res.trials = trials;
    res.closed_form_factor = hessian_reduced_factor(kvec);

    std::vector<double> err(trials, 0.0);
    std::vector<char> sign_ok(trials, 1);
    for_each_batch(batch_count(trials), [&](std::size_t b) {
        Rng rng(splitmix64(seed ^ b));
        const std::size_t end = std::min(trials, (b + 1) * kBatchSize);
        for (std::size_t t = b * kBatchSize; t < end; ++t) {
            Point x(kvec.size());
            for (auto& c : x) c = rng.uniform(delta, 1.0);
            const double det = monomial_hessian_det(kvec, x);
            const double cf = hessian_closed_form(kvec, x);
            err[t] = std::abs(det - cf) / std::abs(cf);
            sign_ok[t] = (det > 0) == (res.closed_form_factor > 0) && det != 0.0;
        }
    });
    for (std::size_t t = 0; t < trials; ++t) {
        res.max_relative_error = std::max(res.max_relative_error, err[t]);
        res.sign_ok = res.sign_ok && sign_ok[t];
        if (sign_ok[t] && err[t] < kLemma2Tolerance) ++res.passes;
    }
    res.pass = res.sign_ok && res.max_relative_error < kLemma2Tolerance;
    return res;
}

Lemma2Result verify_lemma2_exact(const ExponentVector& kvec, std::size_t trials, std::uint64_t seed) {
    check_kvec(kvec);
    Lemma2Result res;
    res.exponents.assign(kvec.exponents().begin(), kvec.exponents().end());
    res.trials = trials;
    res.closed_form_factor = hessian_reduced_factor(kvec);
    res.exact = true;
    Rng rng(seed);
    bool all_equal = true;
    for (std::size_t t = 0; t < trials; ++t) {
        RationalPoint x(kvec.size());
        for (auto& c : x) {
            c = mpq_class(static_cast<unsigned long>(rng.integer(1UL << 12, 1UL << 16)), 1UL << 16);
            c.canonicalize();
        }
        const mpq_class det = monomial_hessian_det(kvec, x);
        const mpq_class cf = hessian_closed_form(kvec, x);
        if (det == cf && sgn(det) != 0) ++res.passes;
        if (det != cf) {
            all_equal = false;
            const mpq_class rel = abs(det - cf) / abs(cf);
            res.max_relative_error = std::max(res.max_relative_error, rel.get_d());
        }
        res.sign_ok = res.sign_ok && sgn(det) == sgn(cf) && sgn(det) != 0;
    }
    res.pass = all_equal && res.sign_ok;
    return res;
}

Lemma1Report verify_lemma1(int n, int m) {
    Lemma1Report rep;
    rep.n = n;
    rep.m = m;
    const ExponentMatrix M = two_var_matrix(n, m);
    rep.rows = M.rows();
    rep.structure = structure_decompose(M);

    std::vector<std::size_t> expected(rep.rows / 2, 2);
    if (rep.rows % 2) expected.push_back(1);
    rep.structure_ok = rep.structure.blocks == expected;

    rep.blocks_nonsingular = true;
    rep.bounds_ok = true;
    for (const auto& [first, end] : rep.structure.spans) {
        if (end - first == 1) {
            rep.blocks_nonsingular = rep.blocks_nonsingular && (M(first, 0) != 0 || M(first, 1) != 0);
            continue;
        }
        const long long det = static_cast<long long>(M(first, 0)) * M(first + 1, 1) -
                              static_cast<long long>(M(first, 1)) * M(first + 1, 0);
        rep.blocks_nonsingular = rep.blocks_nonsingular && det != 0;
        const int a = M(first, 1);
        if (M(first, 0) == n && M(first + 1, 1) == m && M(first + 1, 0) == n - m + 1 + a) {
            MixedBlock mb{first, a, det, static_cast<long long>(n) * (m - a)};
            rep.bounds_ok = rep.bounds_ok && mb.det >= mb.lower_bound && mb.lower_bound > 0;
            rep.bounded_blocks.push_back(mb);
        }
    }
    rep.pass = rep.structure_ok && rep.blocks_nonsingular && rep.bounds_ok;
    return rep;
}

}  // namespace tarry
