#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tarry/exact.hpp"
#include "tarry/exponent.hpp"

using namespace tarry;

namespace {

IntMatrix to_int(const oracle::IntRows& a) {
    std::vector<long long> flat;
    for (const auto& row : a) flat.insert(flat.end(), row.begin(), row.end());
    return IntMatrix(a.size(), a.empty() ? 0 : a[0].size(), flat);
}

oracle::IntRows random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_int_distribution<int> mode(0, 2);
    oracle::IntRows a(rows, std::vector<long long>(cols));
    for (auto& row : a)
        for (auto& x : row) x = val(gen);
    // Plant dependencies so low ranks are common.
    if (rows > 2 && mode(gen) == 0)
        for (std::size_t j = 0; j < cols; ++j) a[rows - 1][j] = 2 * a[0][j] - a[1][j];
    if (rows > 3 && mode(gen) == 0)
        for (std::size_t j = 0; j < cols; ++j) a[rows - 2][j] = -a[1][j];
    return a;
}

}  // namespace

TEST_SUITE("exponent") {
    TEST_CASE("parse readback") {
        auto p = parse_polynomial(std::string_view(R"({"r":2,"monomials":[[1,1],[2,2]]})"));
        CHECK(p.N() == 2);
        CHECK(p.m() == 4);
        CHECK(p.r() == 2);
        auto q = parse_polynomial(std::string_view(R"({"r":1,"monomials":[[1],[2]]})"));
        CHECK(q.N() == 2);
        CHECK(q.m() == 2);
    }

    TEST_CASE("parse rejects bad documents") {
        CHECK_THROWS_AS(parse_polynomial(std::string_view(R"({"r":2,"monomials":[[0,0]]})")), InputError);
        CHECK_THROWS_AS(parse_polynomial(std::string_view(R"({"r":2,"monomials":[[1,0],[1,0]]})")), InputError);
        CHECK_THROWS_AS(parse_polynomial(std::string_view(R"({"r":2,"monomials":[[1]]})")), InputError);
        CHECK_THROWS_AS(parse_polynomial(std::string_view(R"({"r":2,"monomials":[[1,-1]]})")), InputError);
        CHECK_THROWS_AS(parse_polynomial(std::string_view(R"({"r":2,"monomials":[]})")), InputError);
        CHECK_THROWS_AS(parse_polynomial(std::string_view(R"({"r":0,"monomials":[[1]]})")), InputError);
        CHECK_THROWS_AS(parse_polynomial(std::string_view(R"({"monomials":[[1]]})")), InputError);
        CHECK_THROWS_AS(parse_polynomial(std::string_view("{not json")), InputError);
        CHECK_THROWS_AS(load_polynomial("/nonexistent/shape.json"), InputError);
    }

    TEST_CASE("exponent matrix layout") {
        auto M = exponent_matrix(oracle::shape(2, {{1, 1}, {2, 2}}));
        CHECK(M == ExponentMatrix(2, 2, {1, 1, 2, 2}));
        auto C = exponent_matrix(oracle::shape(1, {{1}, {2}}));
        CHECK(C == ExponentMatrix(2, 1, {1, 2}));
        auto p = load_polynomial(oracle::corpus("example9.json"));
        auto E = exponent_matrix(p);
        REQUIRE(E.rows() == 9);
        for (std::size_t j = 0; j < 9; ++j)
            CHECK(std::vector<int>(E.row(j).begin(), E.row(j).end()) ==
                  std::vector<int>(p[j].exponents().begin(), p[j].exponents().end()));
    }

    TEST_CASE("json round trip is lossless") {
        for (auto name : {"example9.json", "prod34.json", "bind_q.json", "twovar_4_4.json"}) {
            auto p = load_polynomial(oracle::corpus(name));
            CHECK(parse_polynomial(to_json(p)) == p);
        }
    }

    TEST_CASE("rank examples") {
        CHECK(rank_exact(IntMatrix(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1})) == 3);
        CHECK(rank_exact(IntMatrix(2, 2, {1, 1, 2, 2})) == 1);
        auto E = exponent_matrix(load_polynomial(oracle::corpus("example9.json")));
        CHECK(rank_exact(E) == 2);
        CHECK(rank_exact(IntMatrix(2, 3)) == 0);
    }

    TEST_CASE("rank agrees with minor enumeration") {
        std::mt19937_64 gen(20231);
        std::uniform_int_distribution<std::size_t> dim(1, 6);
        for (int t = 0; t < 150; ++t) {
            auto a = random_matrix(gen, dim(gen), dim(gen));
            CHECK(rank_exact(to_int(a)) == oracle::minor_rank(a));
        }
    }

    TEST_CASE("rank invariance under permutation and scaling") {
        std::mt19937_64 gen(77);
        std::uniform_int_distribution<std::size_t> dim(1, 6);
        std::uniform_int_distribution<int> scale(1, 9);
        for (int t = 0; t < 200; ++t) {
            auto a = random_matrix(gen, dim(gen), dim(gen));
            const auto base = rank_exact(to_int(a));
            auto b = a;
            std::shuffle(b.begin(), b.end(), gen);
            std::vector<std::size_t> perm(a[0].size());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), gen);
            for (auto& row : b) {
                auto copy = row;
                const long long s = scale(gen) * (gen() % 2 ? 1 : -1);
                for (std::size_t j = 0; j < row.size(); ++j) row[j] = s * copy[perm[j]];
            }
            CHECK(rank_exact(to_int(b)) == base);
            CHECK(rank_exact(to_int(a).transposed()) == base);
        }
    }

    TEST_CASE("determinant matches Laplace expansion") {
        std::mt19937_64 gen(5);
        std::uniform_int_distribution<std::size_t> dim(1, 6);
        for (int t = 0; t < 100; ++t) {
            const auto n = dim(gen);
            auto a = random_matrix(gen, n, n);
            CHECK(determinant_exact(to_int(a)) == oracle::laplace_det(a));
        }
    }

    TEST_CASE("rational rank clears denominators") {
        std::vector<std::vector<mpq_class>> rows{{mpq_class(1, 2), mpq_class(1, 3)}, {mpq_class(3, 2), mpq_class(1)}};
        CHECK(rank_exact(rows) == 1);
        rows[1][1] = mpq_class(2, 3);
        CHECK(rank_exact(rows) == 2);
        CHECK(determinant_exact(rows) == mpq_class(1, 3) - mpq_class(1, 2));
    }

    TEST_CASE("senior form support") {
        CHECK(senior_form_support(oracle::shape(2, {{2, 0}, {1, 1}})) == std::vector<std::size_t>{0, 1});
        CHECK(senior_form_support(oracle::shape(2, {{2, 0}, {0, 1}})) == std::vector<std::size_t>{0});
        CHECK(senior_form_support(load_polynomial(oracle::corpus("prod22.json"))) == std::vector<std::size_t>{0, 1});
    }

    TEST_CASE("decomposability") {
        auto d = is_decomposable(oracle::shape(2, {{2, 0}, {0, 2}}));
        CHECK(d.decomposable);
        CHECK(d.components == std::vector<std::vector<std::size_t>>{{0}, {1}});
        auto e = is_decomposable(oracle::shape(2, {{1, 1}}));
        CHECK_FALSE(e.decomposable);
        CHECK(e.components == std::vector<std::vector<std::size_t>>{{0, 1}});
        auto f = is_decomposable(oracle::shape(3, {{1, 1, 0}, {0, 1, 1}}));
        CHECK_FALSE(f.decomposable);
        CHECK(f.components == std::vector<std::vector<std::size_t>>{{0, 1, 2}});
    }
}
