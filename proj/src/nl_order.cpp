#include "tarry/nl_order.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tarry {

const char* to_string(Order o) noexcept {
    switch (o) {
        case Order::less: return "less";
        case Order::equal: return "equal";
        case Order::greater: return "greater";
    }
    return "?";
}

Order nl_compare(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw InputError("nl_compare: length mismatch");
    const long long da = std::accumulate(a.begin(), a.end(), 0LL);
    const long long db = std::accumulate(b.begin(), b.end(), 0LL);
    if (da != db) return da < db ? Order::less : Order::greater;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? Order::less : Order::greater;
    return Order::equal;
}

Order nl_compare(const ExponentVector& a, const ExponentVector& b) { return nl_compare(a.exponents(), b.exponents()); }

PolynomialShape nl_sort(const PolynomialShape& p) {
    auto monos = p.monomials();
    std::sort(monos.begin(), monos.end(), nl_less);
    return PolynomialShape(p.r(), std::move(monos));
}

ExponentVector high_member(const PolynomialShape& p) {
    return *std::max_element(p.monomials().begin(), p.monomials().end(), nl_less);
}

PolynomialShape support_product(const PolynomialShape& p, const PolynomialShape& q) {
    if (p.r() != q.r()) throw InputError("support_product: r mismatch");
    std::vector<ExponentVector> out;
    std::set<std::vector<int>> seen;
    for (const auto& a : p.monomials())
        for (const auto& b : q.monomials()) {
            auto s = a + b;
            if (seen.emplace(s.exponents().begin(), s.exponents().end()).second) out.push_back(std::move(s));
        }
    return PolynomialShape(p.r(), std::move(out));
}

}  // namespace tarry
