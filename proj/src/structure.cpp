#include "tarry/structure.hpp"

#include <algorithm>
#include <cmath>

#include "tarry/exact.hpp"
#include "tarry/jacobi.hpp"
#include "tarry/nl_order.hpp"
#include "tarry/sampling.hpp"

namespace tarry {

bool StructureDecomposition::uniform() const noexcept {
    return std::all_of(blocks.begin(), blocks.end(), [&](std::size_t b) { return b == rho; });
}

StructureDecomposition structure_decompose(const ExponentMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto row = m.row(i);
        if (std::all_of(row.begin(), row.end(), [](int x) { return x == 0; }))
            throw InputError("zero row " + std::to_string(i) + " in exponent matrix");
    }
    StructureDecomposition d;
    d.rho = rank_exact(m);
    std::size_t first = 0;
    for (std::size_t i = 1; i <= m.rows(); ++i) {
        const bool close = i == m.rows() || rank_exact(m.row_slice(first, i - first + 1)) < i - first + 1;
        if (close) {
            d.blocks.push_back(i - first);
            d.spans.emplace_back(first, i);
            first = i;
        }
    }
    return d;
}

PolynomialShape two_var_shape(int n, int m) {
    if (m < 1 || n < m) throw InputError("two_var_matrix requires n >= m >= 1");
    std::vector<ExponentVector> monos;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= m; ++j)
            if (i + j >= 1) monos.push_back(ExponentVector{i, j});
    return nl_sort(PolynomialShape(2, std::move(monos)));
}

ExponentMatrix two_var_matrix(int n, int m) { return exponent_matrix(two_var_shape(n, m)); }

Prop3Report prop3_rank_check(const PolynomialShape& p, std::size_t trials, std::uint64_t seed) {
    constexpr unsigned kBits = 16;
    const auto dec = structure_decompose(exponent_matrix(p));
    const std::size_t q = dec.q(), r = p.r(), N = p.N();
    const int m = p.m();

    std::vector<char> pass(trials, 0);
    for_each_batch(batch_count(trials), [&](std::size_t b) {
        Rng rng(splitmix64(seed ^ b));
        const std::size_t end = std::min(trials, (b + 1) * kBatchSize);
        for (std::size_t t = b * kBatchSize; t < end; ++t) {
            // Coordinates a / 2^16 with a in [1, 2^16]; row j is scaled by
            // 2^{16 (m - deg_j)} so every entry becomes an integer.
            std::vector<std::vector<unsigned long>> pts(q, std::vector<unsigned long>(r));
            for (auto& x : pts)
                for (auto& c : x) c = static_cast<unsigned long>(rng.integer(1, 1UL << kBits));
            IntMatrix K(N, q * r);
            for (std::size_t j = 0; j < N; ++j) {
                mpz_class scale;
                mpz_ui_pow_ui(scale.get_mpz_t(), 2, kBits * static_cast<unsigned>(m - p[j].degree()));
                for (std::size_t s = 0; s < q; ++s) {
                    mpz_class g = scale;
                    for (std::size_t i = 0; i < r; ++i) {
                        mpz_class f;
                        mpz_ui_pow_ui(f.get_mpz_t(), pts[s][i], static_cast<unsigned>(p[j][i]));
                        g *= f;
                    }
                    for (std::size_t i = 0; i < r; ++i) K(j, s * r + i) = p[j][i] * g;
                }
            }
            pass[t] = rank_exact(std::move(K)) == N;
        }
    });
    Prop3Report rep{N, q, trials, static_cast<std::size_t>(std::count(pass.begin(), pass.end(), 1)), 0.0};
    rep.fraction = trials ? static_cast<double>(rep.passes) / static_cast<double>(trials) : 0.0;
    return rep;
}

SingularSampleReport singular_fraction(const PolynomialShape& p, int k, double lambda, std::size_t trials,
                                       std::uint64_t seed, double delta) {
    if (k < 1) throw InputError("k must be a positive integer");
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
    if (std::isnan(lambda) || lambda < 0.0) throw InputError("lambda must be a non-negative real");
    const int levels = p.m() - 1;
    std::vector<SymbolicMatrix> mats;
    for (int j = 1; j <= levels; ++j) mats.push_back(iterated_symbolic(p, k, j));
    const std::size_t pts = 2 * static_cast<std::size_t>(k);

    std::vector<double> mins(trials, std::numeric_limits<double>::infinity());
    for_each_batch(batch_count(trials), [&](std::size_t b) {
        Rng rng(splitmix64(seed ^ b));
        const std::size_t end = std::min(trials, (b + 1) * kBatchSize);
        for (std::size_t t = b * kBatchSize; t < end; ++t) {
            std::vector<Point> x(pts, Point(p.r()));
            for (auto& v : x)
                for (auto& c : v) c = rng.uniform(delta, 1.0);
            for (const auto& M : mats) mins[t] = std::min(mins[t], gram_determinant(M.eval(x)));
        }
    });

    SingularSampleReport rep;
    rep.k = k;
    rep.lambda = lambda;
    rep.delta = delta;
    rep.trials = trials;
    rep.levels = std::max(levels, 0);
    for (double v : mins) {
        rep.min_phi = std::min(rep.min_phi, v);
        if (!std::isinf(lambda) && v >= lambda) ++rep.in_d_lambda;
    }
    rep.fraction = trials ? static_cast<double>(rep.in_d_lambda) / static_cast<double>(trials) : 0.0;
    return rep;
}

}  // namespace tarry
