#include "asymcyc/algebra_module.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace asymcyc::alg {

FiniteAlgebra FiniteAlgebra::diagonal(int d) {
    FiniteAlgebra a;
    a.dim = d;
    a.mult.assign(static_cast<std::size_t>(d) * d * d, Rational(0));
    for (int p = 0; p < d; ++p) a.mult[static_cast<std::size_t>((p * d + p) * d + p)] = 1;
    a.unit.assign(d, Rational(1));
    return a;
}

FiniteAlgebra FiniteAlgebra::dual_numbers() {
    FiniteAlgebra a;
    a.dim = 2;
    a.mult.assign(8, Rational(0));
    auto set = [&](int p, int q, int r) { a.mult[static_cast<std::size_t>((p * 2 + q) * 2 + r)] = 1; };
    set(0, 0, 0);  // 1*1 = 1
    set(0, 1, 1);  // 1*x = x
    set(1, 0, 1);  // x*1 = x
    // x*x = 0
    a.unit = {Rational(1), Rational(0)};
    return a;
}

AlgebraCochain& AlgebraCochain::operator+=(const AlgebraCochain& o) {
    if (values.empty()) { *this = o; return *this; }
    if (o.values.empty()) return *this;
    if (degree != o.degree || values.size() != o.values.size())
        throw std::invalid_argument("AlgebraCochain: degree mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

AlgebraCochain& AlgebraCochain::operator-=(const AlgebraCochain& o) {
    if (values.empty()) { *this = o.scaled(Rational(-1)); return *this; }
    if (o.values.empty()) return *this;
    if (degree != o.degree || values.size() != o.values.size())
        throw std::invalid_argument("AlgebraCochain: degree mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

namespace {
std::size_t table_size(int dim, int degree) {
    std::size_t s = 1;
    for (int k = 0; k <= degree; ++k) s *= static_cast<std::size_t>(dim);
    return s;
}

// little-endian tuple decode/encode: index = sum k_i dim^i
void decode(std::size_t idx, int dim, std::vector<int>& tuple) {
    for (auto& k : tuple) {
        k = static_cast<int>(idx % static_cast<std::size_t>(dim));
        idx /= static_cast<std::size_t>(dim);
    }
}
std::size_t encode(const std::vector<int>& tuple, int dim) {
    std::size_t idx = 0;
    for (std::size_t i = tuple.size(); i-- > 0;)
        idx = idx * static_cast<std::size_t>(dim) + static_cast<std::size_t>(tuple[i]);
    return idx;
}
}  // namespace

AlgebraCochain AlgebraCochainModule::zero(int n) const {
    AlgebraCochain c;
    c.degree = n;
    c.dim = A_.dim;
    c.values.assign(table_size(A_.dim, n), Rational(0));
    return c;
}

AlgebraCochain AlgebraCochainModule::coface(int n, int i, const AlgebraCochain& x) const {
    if (x.degree != n) throw std::invalid_argument("coface: degree mismatch");
    if (i < 0 || i > n + 1) throw std::out_of_range("coface: index out of range");
    const int d = A_.dim;
    AlgebraCochain out = zero(n + 1);
    std::vector<int> tuple(static_cast<std::size_t>(n) + 2);
    std::vector<int> sub(static_cast<std::size_t>(n) + 1);
    for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
        decode(idx, d, tuple);
        Rational v(0);
        if (i <= n) {
            // contract slots (i, i+1) through the product
            for (int r = 0; r < d; ++r) {
                const Rational& s = A_.structure(tuple[i], tuple[i + 1], r);
                if (s == 0) continue;
                for (int k = 0; k <= n; ++k) sub[k] = (k < i) ? tuple[k] : (k == i ? r : tuple[k + 1]);
                v += s * x.values[encode(sub, d)];
            }
        } else {
            // (d_{n+1} f)(a_0..a_{n+1}) = f(a_{n+1} a_0, a_1, ..., a_n)
            for (int r = 0; r < d; ++r) {
                const Rational& s = A_.structure(tuple[n + 1], tuple[0], r);
                if (s == 0) continue;
                sub[0] = r;
                for (int k = 1; k <= n; ++k) sub[k] = tuple[k];
                v += s * x.values[encode(sub, d)];
            }
        }
        out.values[idx] = v;
    }
    return out;
}

AlgebraCochain AlgebraCochainModule::codegeneracy(int n, int j, const AlgebraCochain& x) const {
    if (x.degree != n) throw std::invalid_argument("codegeneracy: degree mismatch");
    if (j < 0 || j > n - 1) throw std::out_of_range("codegeneracy: index out of range");
    const int d = A_.dim;
    AlgebraCochain out = zero(n - 1);
    std::vector<int> tuple(static_cast<std::size_t>(n));
    std::vector<int> sub(static_cast<std::size_t>(n) + 1);
    for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
        decode(idx, d, tuple);
        Rational v(0);
        for (int u = 0; u < d; ++u) {
            if (A_.unit[u] == 0) continue;
            for (int k = 0; k <= n; ++k)
                sub[k] = (k <= j) ? tuple[k] : (k == j + 1 ? u : tuple[k - 1]);
            v += A_.unit[u] * x.values[encode(sub, d)];
        }
        out.values[idx] = v;
    }
    return out;
}

AlgebraCochain AlgebraCochainModule::cyclic(int n, const AlgebraCochain& x) const {
    if (x.degree != n) throw std::invalid_argument("cyclic: degree mismatch");
    const int d = A_.dim;
    AlgebraCochain out = zero(n);
    std::vector<int> tuple(static_cast<std::size_t>(n) + 1);
    std::vector<int> sub(static_cast<std::size_t>(n) + 1);
    for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
        decode(idx, d, tuple);
        // (t f)(a_0,...,a_n) = f(a_n, a_0, ..., a_{n-1})
        sub[0] = tuple[n];
        for (int k = 1; k <= n; ++k) sub[k] = tuple[k - 1];
        out.values[idx] = x.values[encode(sub, d)];
    }
    return out;
}

AlgebraCochain AlgebraCochainModule::sample(int n, std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> coeff(-3, 3);
    AlgebraCochain c = zero(n);
    for (auto& v : c.values) v = Rational(coeff(rng));
    return c;
}

Rational AlgebraCochainModule::exact_norm(int, const AlgebraCochain& x) const {
    Rational m(0);
    for (const auto& v : x.values) {
        Rational a = rat_abs(v);
        if (a > m) m = a;
    }
    return m;
}

std::string AlgebraCochainModule::describe(int n, const AlgebraCochain& x) const {
    std::ostringstream os;
    os << "deg " << n << " cochain [";
    for (std::size_t i = 0; i < x.values.size() && i < 16; ++i) {
        if (i) os << ",";
        os << rat_str(x.values[i]);
    }
    if (x.values.size() > 16) os << ",...";
    os << "]";
    return os.str();
}

}  // namespace asymcyc::alg
