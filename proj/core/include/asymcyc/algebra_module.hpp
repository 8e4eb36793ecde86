#pragma once

#include <string>
#include <vector>

#include "asymcyc/cocyclic.hpp"
#include "asymcyc/rational.hpp"

namespace asymcyc::alg {

/// Finite-dimensional unital associative algebra over the rationals, given by
/// structure constants e_p e_q = sum_r mult[p][q][r] e_r.
struct FiniteAlgebra {
    int dim = 0;
    std::vector<Rational> mult;  // [(p*dim + q)*dim + r]
    std::vector<Rational> unit;  // coordinates of 1

    const Rational& structure(int p, int q, int r) const {
        return mult[static_cast<std::size_t>((p * dim + q) * dim + r)];
    }

    /// k x k componentwise (e_p e_q = delta_pq e_p, 1 = sum e_p)
    static FiniteAlgebra diagonal(int d);
    /// k[x]/(x^2): basis (1, x)
    static FiniteAlgebra dual_numbers();
};

/// Degree-n cochain of the standard cocyclic module of A: a multilinear
/// functional on A^{(n+1)}, stored as its value table on basis tuples
/// (size dim^(n+1), index little-endian in the tuple (k_0,...,k_n)).
struct AlgebraCochain {
    int degree = 0;
    int dim = 0;
    std::vector<Rational> values;

    bool is_zero() const {
        for (const auto& v : values)
            if (v != 0) return false;
        return true;
    }
    AlgebraCochain scaled(const Rational& s) const {
        AlgebraCochain r = *this;
        for (auto& v : r.values) v *= s;
        return r;
    }
    AlgebraCochain& operator+=(const AlgebraCochain& o);
    AlgebraCochain& operator-=(const AlgebraCochain& o);
    friend bool operator==(const AlgebraCochain& a, const AlgebraCochain& b) {
        return a.degree == b.degree && a.values == b.values;
    }
};

/// Standard cocyclic module C^n(A) = Hom(A^{(n+1)}, k):
///   (d_i f)(a_0..a_{n+1}) = f(a_0,..., a_i a_{i+1}, ..., a_{n+1}), i <= n
///   (d_{n+1} f)(a_0..a_{n+1}) = f(a_{n+1} a_0, a_1, ..., a_n)
///   (s_j f)(a_0..a_{n-1}) = f(a_0,..., a_j, 1, a_{j+1}, ..., a_{n-1})
///   (t_n f)(a_0..a_n) = f(a_n, a_0, ..., a_{n-1})
/// Norm: max |value| over basis tuples (for the diagonal algebra the coface
/// norms are exactly 1, matching the normalized-module conventions).
class AlgebraCochainModule : public CocyclicModule<AlgebraCochain> {
public:
    explicit AlgebraCochainModule(FiniteAlgebra a) : A_(std::move(a)) {}

    const FiniteAlgebra& algebra() const { return A_; }

    AlgebraCochain zero(int n) const;
    AlgebraCochain coface(int n, int i, const AlgebraCochain& x) const override;
    AlgebraCochain codegeneracy(int n, int j, const AlgebraCochain& x) const override;
    AlgebraCochain cyclic(int n, const AlgebraCochain& x) const override;
    AlgebraCochain sample(int n, std::mt19937_64& rng) const override;
    bool has_norm() const override { return true; }
    Rational exact_norm(int n, const AlgebraCochain& x) const override;
    std::string describe(int n, const AlgebraCochain& x) const override;

private:
    FiniteAlgebra A_;
};

}  // namespace asymcyc::alg
