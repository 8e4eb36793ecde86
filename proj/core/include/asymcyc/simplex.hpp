#pragma once

#include <compare>
#include <string>
#include <vector>

#include "asymcyc/chain.hpp"
#include "asymcyc/cocyclic.hpp"
#include "asymcyc/growth.hpp"

namespace asymcyc::splx {

/// Point of the geometric n-simplex in the first coordinate system, with
/// t_0 = 0 and t_{n+1} = 1 dropped: coordinates t_1 <= ... <= t_n in [0,1],
/// exact rationals. The unique degree-0 point (empty coordinate list) is the
/// basepoint and prints as "*".
struct SimplexPoint {
    std::vector<Rational> t;

    int degree() const { return static_cast<int>(t.size()); }
    bool monotone() const;
    std::string str() const;

    friend bool operator==(const SimplexPoint& a, const SimplexPoint& b) { return a.t == b.t; }
    friend bool operator<(const SimplexPoint& a, const SimplexPoint& b) {
        if (a.t.size() != b.t.size()) return a.t.size() < b.t.size();
        return a.t < b.t;
    }
};

using SimplexChain = FreeChain<SimplexPoint>;

SimplexPoint basepoint();

// structure maps on points (exact coordinate formulas)
SimplexPoint coface_point(int i, const SimplexPoint& p);
SimplexPoint codegeneracy_point(int j, const SimplexPoint& p);
SimplexPoint cyclic_point(const SimplexPoint& p);

/// The cocyclic module Delta^bullet of geometric simplices over exact
/// rationals; structure maps extend the point formulas linearly.
class SimplexModule : public CocyclicModule<SimplexChain> {
public:
    SimplexChain coface(int n, int i, const SimplexChain& x) const override;
    SimplexChain codegeneracy(int n, int j, const SimplexChain& x) const override;
    SimplexChain cyclic(int n, const SimplexChain& x) const override;
    SimplexChain sample(int n, std::mt19937_64& rng) const override;
    bool has_norm() const override { return true; }
    Rational exact_norm(int n, const SimplexChain& x) const override;
    std::string describe(int n, const SimplexChain& x) const override;
};

/// l1 chain norm (unit weight per basis point).
Rational chain_norm(const SimplexChain& c);

std::string chain_str(const SimplexChain& c);

/// Chain serialization: a JSON list of { "coords": ["p/q", ...], "coeff": "p/q" }.
std::string chain_to_json(const SimplexChain& c);
SimplexChain chain_from_json(const std::string& text);

/// phi_0 = *, phi_{2n} = ((-1)^n / (2^n n!)) sum_{r=0}^n tau^{2r} delta_0^{2n}(*).
/// Supported on the n+1 cone/rotated points (0,...,0,1,...,1) with 2r trailing
/// ones, each with coefficient (-1)^n/(2^n n!).
SimplexChain universal_cocycle(int n);

/// delta_0^{2n}(*) = (0,...,0), 2n zeros.
SimplexPoint cone_point(int n2);

struct CocycleWindowEntry {
    int n = 0;               // checks b(phi_{2n}) + B(phi_{2n+2}) = 0
    bool closure_pass = false;
    bool intermediates_pass = false;  // B(tau^{2r} d0^{2n+2} *) identities, r <= n+1
    std::string residue;              // nonzero residue chain, when failing
};

struct CocycleWindowReport {
    bool pass = true;
    std::vector<CocycleWindowEntry> entries;
};

/// Exact verification of (b+B)-closure of the universal cocycle for
/// 0 <= n < N, plus the proof's intermediate identities
/// B(tau^{2r} delta_0^{2m}(*)) = 2 N_{2m-1} delta_0^{2m-1}(*) for r < m and = 0
/// for r = m.
CocycleWindowReport verify_cocycle_window(int N);

struct CocycleGrowthReport {
    bool e1_consistent = false;        // E(1) membership evidence on the prefix
    bool entire_consistent = false;    // should be FALSE for the universal cocycle
    double radius_estimate = 0.0;      // ~ 1/2
    std::vector<double> root_profile;  // |phi_{2n}|^{1/n}
    std::vector<double> norm_profile;  // (n+1)/(2^n n!)
    growth::GrowthVerdict e1_verdict;
};

/// Feeds |phi_{2n}| = (n+1)/(2^n n!) into the growth module: nth-root profile,
/// E(1) probes, and the entire test (radius ~ 1/2, hence not entire).
CocycleGrowthReport classify_cocycle_growth(int N, const growth::Config& cfg = {});

}  // namespace asymcyc::splx
