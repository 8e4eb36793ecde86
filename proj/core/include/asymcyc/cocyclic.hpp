#pragma once

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "asymcyc/rational.hpp"

namespace asymcyc {

/// A cocyclic module over exact rationals, given by evaluable structure maps.
/// Element type E must support: default construction (zero), +=, -=,
/// scaled(Rational), ==, is_zero(). Degrees are carried by the caller; every
/// structure map names the degree it acts on.
template <class E>
class CocyclicModule {
public:
    virtual ~CocyclicModule() = default;

    /// d_i : C^n -> C^{n+1}, 0 <= i <= n+1
    virtual E coface(int n, int i, const E& x) const = 0;
    /// s_j : C^n -> C^{n-1}, 0 <= j <= n-1
    virtual E codegeneracy(int n, int j, const E& x) const = 0;
    /// t_n : C^n -> C^n
    virtual E cyclic(int n, const E& x) const = 0;

    /// random rational element of degree n, for identity suites
    virtual E sample(int n, std::mt19937_64& rng) const = 0;

    virtual bool has_norm() const { return false; }
    /// exact norm used by the norm-estimate checks
    virtual Rational exact_norm(int /*n*/, const E& /*x*/) const {
        throw std::logic_error("module has no norm evaluator");
    }
    /// short printable form of an element, for failure witnesses
    virtual std::string describe(int /*n*/, const E& /*x*/) const { return {}; }
};

// ---------------------------------------------------------------------------
// derived operators
// ---------------------------------------------------------------------------

/// t_n^k; positive powers apply literally (so torsion checks stay honest),
/// negative powers use the cyclic order n+1.
template <class E>
E cyclic_pow(const CocyclicModule<E>& m, int n, int k, E x) {
    if (k < 0) {
        int order = n + 1;
        k = order - ((-k) % order);
        if (k == order) k = 0;
    }
    for (int i = 0; i < k; ++i) x = m.cyclic(n, x);
    return x;
}

/// b_n = sum_{i=0}^{n+1} (-1)^i d_i : C^n -> C^{n+1}
template <class E>
E hochschild_b(const CocyclicModule<E>& m, int n, const E& x) {
    E out;
    for (int i = 0; i <= n + 1; ++i) {
        E t = m.coface(n, i, x);
        if (i % 2 == 0) out += t; else out -= t;
    }
    return out;
}

/// b'_n = sum_{i=0}^{n} (-1)^i d_i : C^n -> C^{n+1}
template <class E>
E bar_b_prime(const CocyclicModule<E>& m, int n, const E& x) {
    E out;
    for (int i = 0; i <= n; ++i) {
        E t = m.coface(n, i, x);
        if (i % 2 == 0) out += t; else out -= t;
    }
    return out;
}

/// N_n = sum_{i=0}^{n} (-1)^{ni} t_n^i : C^n -> C^n
template <class E>
E cyclic_N(const CocyclicModule<E>& m, int n, const E& x) {
    E out;
    E cur = x;
    for (int i = 0; i <= n; ++i) {
        if ((n * i) % 2 == 0) out += cur; else out -= cur;
        if (i < n) cur = m.cyclic(n, cur);
    }
    return out;
}

/// (1 - lambda) with lambda = (-1)^n t_n; the row operator paired with N_n.
template <class E>
E one_minus_lambda(const CocyclicModule<E>& m, int n, const E& x) {
    E out = x;
    E tx = m.cyclic(n, x);
    if (n % 2 == 0) out -= tx; else out += tx;
    return out;
}

/// B_n = N_{n-1} s^n_{n-1} t_n (Id - (-1)^n t_n) : C^n -> C^{n-1}, n >= 1
template <class E>
E connes_B(const CocyclicModule<E>& m, int n, const E& x) {
    if (n < 1) throw std::invalid_argument("connes_B: degree >= 1 required");
    E y = x;
    E tx = m.cyclic(n, x);
    if (n % 2 == 0) y -= tx; else y += tx;
    y = m.cyclic(n, y);
    y = m.codegeneracy(n, n - 1, y);
    return cyclic_N(m, n - 1, y);
}

// ---------------------------------------------------------------------------
// identity suite
// ---------------------------------------------------------------------------

struct IdentityCheck {
    std::string name;
    int degree = 0;
    bool pass = true;
    std::string witness;  // failing element, when available
};

struct IdentityReport {
    bool all_pass = true;
    int max_degree = 0;
    int samples = 0;
    std::vector<IdentityCheck> checks;
    std::vector<IdentityCheck> failures() const {
        std::vector<IdentityCheck> f;
        for (const auto& c : checks)
            if (!c.pass) f.push_back(c);
        return f;
    }
};

namespace detail {
template <class E>
void record(IdentityReport& rep, const CocyclicModule<E>& m, int n, const std::string& name,
            const E& lhs, const E& rhs, const E& input) {
    IdentityCheck c;
    c.name = name;
    c.degree = n;
    E diff = lhs;
    diff -= rhs;
    c.pass = diff.is_zero();
    if (!c.pass) {
        c.witness = m.describe(n, input);
        rep.all_pass = false;
    }
    rep.checks.push_back(std::move(c));
}
}  // namespace detail

/// Verifies the full cocyclic identity suite on random rational elements:
/// cosimplicial relations, cyclic compatibilities, t^{n+1} = Id, and the
/// conjugation relations d_i = t^{-i} d_0 t^i, s_j = t^{-j} s_0 t^j.
/// Exact equality; failures carry the identity name and a witness.
template <class E>
IdentityReport check_identities(const CocyclicModule<E>& m, int max_degree, int samples,
                                std::mt19937_64& rng) {
    if (max_degree < 1) throw std::invalid_argument("check_identities: max_degree >= 1");
    IdentityReport rep;
    rep.max_degree = max_degree;
    rep.samples = samples;
    for (int n = 0; n <= max_degree; ++n) {
        for (int s = 0; s < samples; ++s) {
            E x = m.sample(n, rng);

            // d_j d_i = d_i d_{j-1}, i < j
            for (int i = 0; i <= n + 1; ++i)
                for (int j = i + 1; j <= n + 2; ++j)
                    detail::record(rep, m, n, "d_" + std::to_string(j) + " d_" + std::to_string(i),
                                   m.coface(n + 1, j, m.coface(n, i, x)),
                                   m.coface(n + 1, i, m.coface(n, j - 1, x)), x);
            // s_j s_i = s_i s_{j+1}, i <= j (composites C^n -> C^{n-2})
            for (int j = 0; j <= n - 2; ++j)
                for (int i = 0; i <= j; ++i)
                    detail::record(rep, m, n, "s_" + std::to_string(j) + " s_" + std::to_string(i),
                                   m.codegeneracy(n - 1, j, m.codegeneracy(n, i, x)),
                                   m.codegeneracy(n - 1, i, m.codegeneracy(n, j + 1, x)), x);
            // mixed s_j d_i
            for (int i = 0; i <= n + 1; ++i)
                for (int j = 0; j <= n - 1 + 1 && j <= n; ++j) {
                    if (j > n + 1 - 1) continue;  // s_j defined on C^{n+1} needs j <= n
                    E sd = m.codegeneracy(n + 1, j, m.coface(n, i, x));
                    if (i < j)
                        detail::record(rep, m, n,
                                       "s_" + std::to_string(j) + " d_" + std::to_string(i),
                                       sd, m.coface(n - 1, i, m.codegeneracy(n, j - 1, x)), x);
                    else if (i == j || i == j + 1)
                        detail::record(rep, m, n,
                                       "s_" + std::to_string(j) + " d_" + std::to_string(i) + "=Id",
                                       sd, x, x);
                    else
                        detail::record(rep, m, n,
                                       "s_" + std::to_string(j) + " d_" + std::to_string(i),
                                       sd, m.coface(n - 1, i - 1, m.codegeneracy(n, j, x)), x);
                }
            // cyclic compatibilities
            for (int i = 0; i <= n + 1; ++i) {
                E lhs = m.cyclic(n + 1, m.coface(n, i, x));
                E rhs = (i == 0) ? m.coface(n, n + 1, x)
                                 : m.coface(n, i - 1, m.cyclic(n, x));
                detail::record(rep, m, n, "t d_" + std::to_string(i), lhs, rhs, x);
            }
            for (int j = 0; j <= n - 1; ++j) {
                E lhs = m.cyclic(n - 1, m.codegeneracy(n, j, x));
                E rhs = (j == 0) ? m.codegeneracy(n, n - 1, cyclic_pow(m, n, 2, x))
                                 : m.codegeneracy(n, j - 1, m.cyclic(n, x));
                detail::record(rep, m, n, "t s_" + std::to_string(j), lhs, rhs, x);
            }
            // t^{n+1} = Id
            detail::record(rep, m, n, "t^" + std::to_string(n + 1) + "=Id",
                           cyclic_pow(m, n, n + 1, x), x, x);
            // conjugation relations
            for (int i = 0; i <= n + 1; ++i)
                detail::record(rep, m, n, "d_" + std::to_string(i) + "=t^-i d_0 t^i",
                               m.coface(n, i, x),
                               cyclic_pow(m, n + 1, -i, m.coface(n, 0, cyclic_pow(m, n, i, x))), x);
            for (int j = 0; j <= n - 1; ++j)
                detail::record(rep, m, n, "s_" + std::to_string(j) + "=t^-j s_0 t^j",
                               m.codegeneracy(n, j, x),
                               cyclic_pow(m, n - 1, -j, m.codegeneracy(n, 0, cyclic_pow(m, n, j, x))),
                               x);
        }
    }
    return rep;
}

/// Mixed-complex identities on random elements: b^2, b'^2, B^2, bB + Bb,
/// (1-lambda)N, N(1-lambda); exact.
template <class E>
IdentityReport check_mixed_identities(const CocyclicModule<E>& m, int max_degree, int samples,
                                      std::mt19937_64& rng) {
    IdentityReport rep;
    rep.max_degree = max_degree;
    rep.samples = samples;
    E zero;
    for (int n = 1; n <= max_degree; ++n) {
        for (int s = 0; s < samples; ++s) {
            E x = m.sample(n, rng);
            detail::record(rep, m, n, "b b = 0", hochschild_b(m, n + 1, hochschild_b(m, n, x)),
                           zero, x);
            detail::record(rep, m, n, "b' b' = 0", bar_b_prime(m, n + 1, bar_b_prime(m, n, x)),
                           zero, x);
            if (n >= 2)
                detail::record(rep, m, n, "B B = 0", connes_B(m, n - 1, connes_B(m, n, x)), zero, x);
            E anti = hochschild_b(m, n - 1, connes_B(m, n, x));
            anti += connes_B(m, n + 1, hochschild_b(m, n, x));
            detail::record(rep, m, n, "bB + Bb = 0", anti, zero, x);
            detail::record(rep, m, n, "(1-lambda)N = 0",
                           one_minus_lambda(m, n, cyclic_N(m, n, x)), zero, x);
            detail::record(rep, m, n, "N(1-lambda) = 0",
                           cyclic_N(m, n, one_minus_lambda(m, n, x)), zero, x);
        }
    }
    return rep;
}

/// Norm bounds from the normalization conventions: |b phi| <= (n+2)|phi|,
/// |b' phi| <= (n+1)|phi|, |N phi| <= (n+1)|phi|, |t phi| = |phi|.
template <class E>
IdentityReport norm_estimate_check(const CocyclicModule<E>& m, int degree, int samples,
                                   std::mt19937_64& rng) {
    if (!m.has_norm()) throw std::logic_error("norm_estimate_check: module has no norm evaluator");
    IdentityReport rep;
    rep.max_degree = degree;
    rep.samples = samples;
    for (int s = 0; s < samples; ++s) {
        E x = m.sample(degree, rng);
        Rational nx = m.exact_norm(degree, x);
        auto expect = [&](const std::string& name, const Rational& lhs, const Rational& bound,
                          bool equality) {
            IdentityCheck c;
            c.name = name;
            c.degree = degree;
            c.pass = equality ? (lhs == bound) : (lhs <= bound);
            if (!c.pass) {
                c.witness = m.describe(degree, x);
                rep.all_pass = false;
            }
            rep.checks.push_back(std::move(c));
        };
        expect("|b phi| <= (n+2)|phi|", m.exact_norm(degree + 1, hochschild_b(m, degree, x)),
               Rational(degree + 2) * nx, false);
        expect("|b' phi| <= (n+1)|phi|", m.exact_norm(degree + 1, bar_b_prime(m, degree, x)),
               Rational(degree + 1) * nx, false);
        expect("|N phi| <= (n+1)|phi|", m.exact_norm(degree, cyclic_N(m, degree, x)),
               Rational(degree + 1) * nx, false);
        expect("|t phi| = |phi|", m.exact_norm(degree, m.cyclic(degree, x)), nx, true);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// truncated infinite-support cochains and the periodic differential
// ---------------------------------------------------------------------------

/// Finite prefix (phi_i, phi_{i+2}, ..., phi_{i+2N}) of an infinite-support
/// cochain; component k lives in degree parity + 2k.
template <class E>
struct TruncatedCochain {
    int parity = 0;
    std::vector<E> components;
    int truncation() const { return static_cast<int>(components.size()) - 1; }
    int degree_of(int k) const { return parity + 2 * k; }
};

template <class E>
struct PeriodicDifferentialResult {
    TruncatedCochain<E> value;      // opposite parity
    int boundary_truncated_degree;  // top output degree, excluded from closure claims
};

/// (b+B) on a truncated cochain: output component at degree m collects
/// b(phi_{m-1}) + B(phi_{m+1}). The top output degree only sees the b-leg,
/// so it is flagged boundary-truncated.
template <class E>
PeriodicDifferentialResult<E> periodic_differential(const CocyclicModule<E>& m,
                                                    const TruncatedCochain<E>& c) {
    if (c.components.empty()) throw std::invalid_argument("periodic_differential: empty prefix");
    PeriodicDifferentialResult<E> res;
    res.value.parity = 1 - c.parity;
    int topdeg = c.degree_of(c.truncation()) + 1;  // highest output degree
    for (int mdeg = res.value.parity; mdeg <= topdeg; mdeg += 2) {
        E out;
        int klow = (mdeg - 1 - c.parity) / 2;  // component of degree mdeg-1
        if (mdeg >= 1 && klow >= 0 && klow <= c.truncation())
            out += hochschild_b(m, mdeg - 1, c.components[klow]);
        int khigh = (mdeg + 1 - c.parity) / 2;  // component of degree mdeg+1
        if (khigh >= 0 && khigh <= c.truncation() && mdeg + 1 >= 1)
            out += connes_B(m, mdeg + 1, c.components[khigh]);
        res.value.components.push_back(std::move(out));
    }
    res.boundary_truncated_degree = topdeg;
    return res;
}

// ---------------------------------------------------------------------------
// Tsygan (cyclic) bicomplex total differential
// ---------------------------------------------------------------------------

/// Column-indexed finite cochain prefix: (column p, module degree q) -> element.
template <class E>
using BigradedCochain = std::map<std::pair<int, int>, E>;

/// Total differential of the cyclic bicomplex: columns b (p even) / b' (p odd),
/// rows (1 - lambda) (p even) / N (p odd) with lambda = (-1)^q t_q, horizontal
/// sign (-1)^q. total( total(x) ) = 0 on bidegrees whose inputs are present.
template <class E>
BigradedCochain<E> tsygan_total_differential(const CocyclicModule<E>& m,
                                             const BigradedCochain<E>& phi) {
    BigradedCochain<E> out;
    auto acc = [&out](std::pair<int, int> key, E val) {
        if (val.is_zero()) return;
        auto [it, inserted] = out.try_emplace(key, val);
        if (!inserted) it->second += val;
    };
    for (const auto& [pq, x] : phi) {
        auto [p, q] = pq;
        E vert = (p % 2 == 0) ? hochschild_b(m, q, x) : bar_b_prime(m, q, x);
        acc({p, q + 1}, std::move(vert));
        E horiz = (p % 2 == 0) ? one_minus_lambda(m, q, x) : cyclic_N(m, q, x);
        if (q % 2 != 0) horiz = horiz.scaled(Rational(-1));
        acc({p + 1, q}, std::move(horiz));
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// ---------------------------------------------------------------------------
// asymptotic normalization
// ---------------------------------------------------------------------------

/// Structure maps rescaled by the degreewise norms of d_0 and s_0:
/// delta_i = d_i / |d_0^n|, sigma_j = s_j / |s_0^n|. The defect automorphism
/// psi_n = |d_0^n||s_0^n| Id recovers sigma_j delta_i = psi_n^{-1} at i = j, j+1.
template <class E>
class RescaledModule : public CocyclicModule<E> {
public:
    RescaledModule(const CocyclicModule<E>& base, std::vector<Rational> d0_norms,
                   std::vector<Rational> s0_norms)
        : base_(&base), d0_(std::move(d0_norms)), s0_(std::move(s0_norms)) {
        for (const auto& v : d0_)
            if (v <= 0) throw std::invalid_argument("asymptotic_normalize: nonpositive |d_0| norm");
        for (const auto& v : s0_)
            if (v <= 0) throw std::invalid_argument("asymptotic_normalize: nonpositive |s_0| norm");
    }

    E coface(int n, int i, const E& x) const override {
        return base_->coface(n, i, x).scaled(Rational(1) / d_at(n));
    }
    E codegeneracy(int n, int j, const E& x) const override {
        return base_->codegeneracy(n, j, x).scaled(Rational(1) / s_at(n));
    }
    E cyclic(int n, const E& x) const override { return base_->cyclic(n, x); }
    E sample(int n, std::mt19937_64& rng) const override { return base_->sample(n, rng); }
    std::string describe(int n, const E& x) const override { return base_->describe(n, x); }

    /// psi_n = |d_0^n| |s_0^n|
    Rational psi(int n) const { return d_at(n) * s_at(n); }
    bool constant_tables() const {
        for (const auto& v : d0_)
            if (v != d0_.front()) return false;
        for (const auto& v : s0_)
            if (v != s0_.front()) return false;
        return true;
    }

private:
    Rational d_at(int n) const { return d0_.at(static_cast<std::size_t>(n)); }
    Rational s_at(int n) const { return s0_.at(static_cast<std::size_t>(n)); }
    const CocyclicModule<E>* base_;
    std::vector<Rational> d0_, s0_;
};

template <class E>
RescaledModule<E> asymptotic_normalize(const CocyclicModule<E>& base,
                                       std::vector<Rational> d0_norms,
                                       std::vector<Rational> s0_norms) {
    return RescaledModule<E>(base, std::move(d0_norms), std::move(s0_norms));
}

/// Checks the rescaled module: sigma_j delta_i = psi_n^{-1} Id for i = j, j+1
/// exactly; all other cocyclic identities unchanged by the rescaling; for
/// degree-constant norm tables also psi-intertwining and b~B~ + B~b~ = 0.
template <class E>
IdentityReport check_normalized(const RescaledModule<E>& rm, int max_degree, int samples,
                                std::mt19937_64& rng) {
    IdentityReport rep;
    rep.max_degree = max_degree;
    rep.samples = samples;
    E zero;
    for (int n = 1; n <= max_degree; ++n) {
        for (int s = 0; s < samples; ++s) {
            E x = rm.sample(n, rng);
            // sigma delta defect
            for (int j = 0; j <= n; ++j)
                for (int i : {j, j + 1})
                    detail::record(rep, rm, n,
                                   "sigma_" + std::to_string(j) + " delta_" + std::to_string(i) +
                                       " = psi^-1",
                                   rm.codegeneracy(n + 1, j, rm.coface(n, i, x)),
                                   x.scaled(Rational(1) / rm.psi(n)), x);
            if (rm.constant_tables()) {
                // psi commutes with the structure maps
                Rational p = rm.psi(n);
                detail::record(rep, rm, n, "psi d_0 = d_0 psi",
                               rm.coface(n, 0, x.scaled(p)), rm.coface(n, 0, x).scaled(p), x);
                // rescaled mixed complex still anticommutes
                E anti = hochschild_b(rm, n - 1, connes_B(rm, n, x));
                anti += connes_B(rm, n + 1, hochschild_b(rm, n, x));
                detail::record(rep, rm, n, "b~B~ + B~b~ = 0", anti, zero, x);
            }
        }
    }
    return rep;
}

}  // namespace asymcyc
