#include "tarry/exponent.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace tarry {

ExponentVector::ExponentVector(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_) {
        if (e < 0) throw InputError("negative exponent in monomial " + to_string(*this));
        degree_ += e;
    }
    if (degree_ == 0) throw InputError("zero-degree monomial " + to_string(*this));
}

std::vector<std::size_t> ExponentVector::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > 0) out.push_back(i);
    return out;
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
    if (a.size() != b.size()) throw InputError("exponent vector length mismatch");
    std::vector<int> s(a.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a[i] + b[i];
    return ExponentVector(std::move(s));
}

std::string to_string(const ExponentVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

PolynomialShape::PolynomialShape(std::size_t r, std::vector<ExponentVector> monomials)
    : r_(r), monos_(std::move(monomials)) {
    if (r_ == 0) throw InputError("r must be positive");
    if (monos_.empty()) throw InputError("polynomial needs at least one monomial");
    std::set<std::vector<int>> seen;
    for (const auto& v : monos_) {
        if (v.size() != r_)
            throw InputError("monomial " + to_string(v) + " has length " + std::to_string(v.size()) +
                             ", expected " + std::to_string(r_));
        if (!seen.emplace(v.exponents().begin(), v.exponents().end()).second)
            throw InputError("duplicate monomial " + to_string(v));
        m_ = std::max(m_, v.degree());
    }
}

long long PolynomialShape::total_exponent_sum() const noexcept {
    long long s = 0;
    for (const auto& v : monos_) s += v.degree();
    return s;
}

bool PolynomialShape::contains(const ExponentVector& v) const {
    return std::find(monos_.begin(), monos_.end(), v) != monos_.end();
}

ExponentMatrix::ExponentMatrix(std::size_t rows, std::size_t cols, std::vector<int> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("ExponentMatrix: size mismatch");
}

ExponentMatrix ExponentMatrix::row_slice(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw std::out_of_range("ExponentMatrix::row_slice");
    return ExponentMatrix(count, cols_,
                          std::vector<int>(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
                                           data_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_)));
}

PolynomialShape parse_polynomial(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InputError("polynomial document must be a JSON object");
    if (!doc.contains("r") || !doc["r"].is_number_integer()) throw InputError("field \"r\" must be an integer");
    if (!doc.contains("monomials") || !doc["monomials"].is_array())
        throw InputError("field \"monomials\" must be an array");
    const auto r = doc["r"].get<long long>();
    if (r <= 0) throw InputError("r must be positive");
    std::vector<ExponentVector> monos;
    for (const auto& item : doc["monomials"]) {
        if (!item.is_array()) throw InputError("each monomial must be an array of integers");
        if (item.size() != static_cast<std::size_t>(r))
            throw InputError("monomial of length " + std::to_string(item.size()) + ", expected " +
                             std::to_string(r));
        std::vector<int> e;
        for (const auto& x : item) {
            if (!x.is_number_integer()) throw InputError("exponents must be integers");
            e.push_back(x.get<int>());
        }
        monos.emplace_back(std::move(e));
    }
    return PolynomialShape(static_cast<std::size_t>(r), std::move(monos));
}

PolynomialShape parse_polynomial(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed polynomial document: ") + e.what());
    }
    return parse_polynomial(doc);
}

PolynomialShape load_polynomial(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_polynomial(std::string_view(ss.str()));
}

nlohmann::json to_json(const PolynomialShape& p) {
    nlohmann::json monos = nlohmann::json::array();
    for (const auto& v : p.monomials())
        monos.push_back(std::vector<int>(v.exponents().begin(), v.exponents().end()));
    return {{"r", p.r()}, {"monomials", monos}};
}

ExponentMatrix exponent_matrix(const PolynomialShape& p) {
    std::vector<int> data;
    data.reserve(p.N() * p.r());
    for (const auto& v : p.monomials()) data.insert(data.end(), v.exponents().begin(), v.exponents().end());
    return ExponentMatrix(p.N(), p.r(), std::move(data));
}

std::vector<std::size_t> senior_form_support(const PolynomialShape& p) {
    std::set<std::size_t> vars;
    for (const auto& v : p.monomials())
        if (v.degree() == p.m())
            for (auto i : v.support()) vars.insert(i);
    return {vars.begin(), vars.end()};
}

Decomposition is_decomposable(const PolynomialShape& p) {
    const std::size_t r = p.r();
    std::vector<std::size_t> parent(r);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<bool> used(r, false);
    for (const auto& v : p.monomials()) {
        auto s = v.support();
        for (auto i : s) used[i] = true;
        for (std::size_t t = 1; t < s.size(); ++t) parent[find(s[t])] = find(s[0]);
    }
    Decomposition d;
    std::vector<std::ptrdiff_t> slot(r, -1);
    for (std::size_t i = 0; i < r; ++i) {
        if (!used[i]) {
            d.unused.push_back(i);
            continue;
        }
        auto root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<std::ptrdiff_t>(d.components.size());
            d.components.emplace_back();
        }
        d.components[static_cast<std::size_t>(slot[root])].push_back(i);
    }
    d.decomposable = d.components.size() > 1;
    return d;
}

}  // namespace tarry
