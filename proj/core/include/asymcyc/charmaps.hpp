#pragma once

#include <span>
#include <string>
#include <vector>

#include "asymcyc/chain.hpp"
#include "asymcyc/cocyclic.hpp"
#include "asymcyc/fredholm.hpp"
#include "asymcyc/simplex.hpp"

namespace asymcyc::charm {

// ---------------------------------------------------------------------------
// shuffles
// ---------------------------------------------------------------------------

/// A (p,q)-shuffle as a partition of {0,...,p+q-1} into the ascending blocks
/// `first` (|first| = p) and `second` (|second| = q), with the sign of the
/// permutation [first..., second...].
struct Shuffle {
    std::vector<int> first, second;
    int sign = 1;
};

/// All binomial(p+q, p) shuffles, enumerated lexicographically by `first`
/// (ascent positions), deterministic order.
std::vector<Shuffle> shuffles(int p, int q);

// ---------------------------------------------------------------------------
// cup products on the diagonal
// ---------------------------------------------------------------------------

/// One signed term (coefficient, cofaced-u, cofaced-v) of a cup expansion.
template <class E1, class E2>
struct CupTerm {
    Rational coeff;
    E1 left;
    E2 right;
};

/// Shuffle cup (the displayed formula): per shuffle, u receives the cofaces
/// d_{b+1} for b in `second` (ascending, smallest applied first) and v the
/// cofaces d_a for a in `first` (ascending), weighted by the shuffle sign.
/// Exact on rational carriers. This is the verbatim expansion; it is a chain
/// map for b only through total degree 1 (see cup_aw for the on-the-nose
/// chain map representing the same product).
template <class E1, class E2>
std::vector<CupTerm<E1, E2>> cup_shuffle_terms(const CocyclicModule<E1>& mc, int p, const E1& u,
                                               const CocyclicModule<E2>& md, int q, const E2& v) {
    std::vector<CupTerm<E1, E2>> out;
    for (const Shuffle& sh : shuffles(p, q)) {
        E1 du = u;
        int deg_u = p;
        for (int b : sh.second) du = mc.coface(deg_u++, b + 1, du);
        E2 dv = v;
        int deg_v = q;
        for (int a : sh.first) dv = md.coface(deg_v++, a, dv);
        out.push_back({Rational(sh.sign), std::move(du), std::move(dv)});
    }
    return out;
}

/// Alexander-Whitney cup: u gets the back cofaces d_{p+1},...,d_{p+q}
/// (ascending), v gets d_0 p times; single term. Satisfies the b-Leibniz rule
/// exactly in every bidegree.
template <class E1, class E2>
CupTerm<E1, E2> cup_aw_term(const CocyclicModule<E1>& mc, int p, const E1& u,
                            const CocyclicModule<E2>& md, int q, const E2& v) {
    E1 du = u;
    for (int i = p + 1; i <= p + q; ++i) du = mc.coface(i - 1, i, du);
    E2 dv = v;
    for (int k = 0; k < p; ++k) dv = md.coface(q + k, 0, dv);
    return {Rational(1), std::move(du), std::move(dv)};
}

// ---------------------------------------------------------------------------
// diagonal of two free-chain modules (for exact Leibniz checks)
// ---------------------------------------------------------------------------

template <class K1, class K2>
using PairChain = FreeChain<std::pair<K1, K2>>;

template <class K1, class K2>
PairChain<K1, K2> tensor_product(const FreeChain<K1>& a, const FreeChain<K2>& b) {
    PairChain<K1, K2> out;
    for (const auto& [k1, c1] : a.terms())
        for (const auto& [k2, c2] : b.terms()) out.add({k1, k2}, c1 * c2);
    return out;
}

/// Diag(C (x) D): structure maps act coordinatewise (d_i (x) d_i, ...).
template <class K1, class K2>
class DiagModule : public CocyclicModule<PairChain<K1, K2>> {
public:
    DiagModule(const CocyclicModule<FreeChain<K1>>& c, const CocyclicModule<FreeChain<K2>>& d)
        : c_(&c), d_(&d) {}

    using E = PairChain<K1, K2>;

    E coface(int n, int i, const E& x) const override {
        return lift(x, [&](const K1& k1, const K2& k2) {
            return tensor_product(c_->coface(n, i, FreeChain<K1>::basis(k1)),
                                  d_->coface(n, i, FreeChain<K2>::basis(k2)));
        });
    }
    E codegeneracy(int n, int j, const E& x) const override {
        return lift(x, [&](const K1& k1, const K2& k2) {
            return tensor_product(c_->codegeneracy(n, j, FreeChain<K1>::basis(k1)),
                                  d_->codegeneracy(n, j, FreeChain<K2>::basis(k2)));
        });
    }
    E cyclic(int n, const E& x) const override {
        return lift(x, [&](const K1& k1, const K2& k2) {
            return tensor_product(c_->cyclic(n, FreeChain<K1>::basis(k1)),
                                  d_->cyclic(n, FreeChain<K2>::basis(k2)));
        });
    }
    E sample(int n, std::mt19937_64& rng) const override {
        return tensor_product(c_->sample(n, rng), d_->sample(n, rng));
    }

private:
    template <class F>
    E lift(const E& x, F&& f) const {
        E out;
        for (const auto& [k, coeff] : x.terms())
            out.add_scaled(f(k.first, k.second), coeff);
        return out;
    }
    const CocyclicModule<FreeChain<K1>>* c_;
    const CocyclicModule<FreeChain<K2>>* d_;
};

// ---------------------------------------------------------------------------
// the polynomial Hopf algebra C[X] with trivial action
// ---------------------------------------------------------------------------

enum class Letter : unsigned char { Unit, Prim };  // 1 (group-like), X (primitive)

/// Word in the Hopf-cocyclic module of C[X] at MPI (eps, 1): degree = length.
struct HopfWord {
    std::vector<Letter> letters;
    int degree() const { return static_cast<int>(letters.size()); }
    int prim_count() const;
    std::string str() const;
    friend bool operator==(const HopfWord& a, const HopfWord& b) { return a.letters == b.letters; }
    friend bool operator<(const HopfWord& a, const HopfWord& b) { return a.letters < b.letters; }
};

using WordChain = FreeChain<HopfWord>;

/// Hopf-cocyclic structure on words over the alphabet {1, X}:
///   d_0 prepends 1, d_i comultiplies letter i (X -> X(x)1 + 1(x)X),
///   d_{n+1} appends sigma = 1; s_j applies the counit to letter j+1;
///   t_n = Delta^{n-1}(S(h^1)) . (h^2 (x) ... (x) h^n (x) 1), implemented for
///   words with at most one X (the alphabet is not closed beyond that).
class HopfWordModule : public CocyclicModule<WordChain> {
public:
    WordChain coface(int n, int i, const WordChain& x) const override;
    WordChain codegeneracy(int n, int j, const WordChain& x) const override;
    WordChain cyclic(int n, const WordChain& x) const override;
    WordChain sample(int n, std::mt19937_64& rng) const override;
    std::string describe(int n, const WordChain& x) const override;
};

/// I^r = I cup ... cup I with I = 1 (x) 1: the all-unit word of length 2r
/// carrying the signed shuffle multiplicity of the iterated cup.
WordChain fundamental_power(int r);

HopfWord all_unit_word(int length);
HopfWord eta_word(int length);  // X followed by units

// ---------------------------------------------------------------------------
// iota / eta expansions
// ---------------------------------------------------------------------------

/// alpha_0 = 1, alpha_r = 1/(2r)! - 1/(2r-2)! (exact); partial sums telescope
/// to 1/(2n)!.
Rational alpha(int r);
Rational alpha_partial_sum(int n);

struct IotaTerm {
    int r = 0;
    Rational weight;          // alpha_r
    splx::SimplexChain chain; // phi_{2n-2r}
};

struct IotaExpansion {
    int degree = 0;  // 2n
    std::vector<IotaTerm> terms;
    Rational weight_sum() const;  // telescopes to 1/(2n)!
};

/// iota(phi)_{2n} = sum_{r=0}^{n} alpha_r (I^r | phi_{2n-2r})
std::vector<IotaExpansion> iota_expand(const std::vector<splx::SimplexChain>& phi_even_prefix,
                                       int N);

struct EtaTerm {
    int degree = 0;  // 2n+1 after the parity shift
    HopfWord word;   // single letter X
    splx::SimplexChain chain;
};

/// eta(phi)_{2n+i} = (X | phi_{2n+i}); shifts parity by one.
std::vector<EtaTerm> eta_expand(const std::vector<splx::SimplexChain>& phi_prefix, int parity);

// ---------------------------------------------------------------------------
// characteristic map evaluation
// ---------------------------------------------------------------------------

enum class ChiFlavor { Even, Odd };

/// chi(h^1 (x) ... (x) h^n | t_1..t_n)(a_0,...,a_n)
///   = Str(a_0 e(t_1) h^1(a_1) e(t_2-t_1) ... h^n(a_n) e(1-t_n))   (even)
/// with Tr instead of Str in the odd flavor. Letters act as 1 -> identity,
/// X -> a |-> [D,a]; heat kernels at the exact gap times of the point.
fred::cplx chi_evaluate(const fred::HeatCache& heat, const Eigen::VectorXd* gamma_diag,
                        const HopfWord& word, const splx::SimplexPoint& point,
                        std::span<const fred::Mat> args, ChiFlavor flavor);

fred::cplx chi_evaluate(const fred::EvenFredholmModule& fm, const HopfWord& word,
                        const splx::SimplexPoint& point, std::span<const fred::Mat> args);
fred::cplx chi_evaluate(const fred::OddFredholmModule& om, const HopfWord& word,
                        const splx::SimplexPoint& point, std::span<const fred::Mat> args);

}  // namespace asymcyc::charm
