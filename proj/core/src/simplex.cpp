#include "asymcyc/simplex.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>

namespace asymcyc::splx {

bool SimplexPoint::monotone() const {
    Rational prev(0);
    for (const auto& v : t) {
        if (v < prev || v > 1) return false;
        prev = v;
    }
    return true;
}

std::string SimplexPoint::str() const {
    if (t.empty()) return "*";
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) os << ",";
        os << rat_str(t[i]);
    }
    os << ")";
    return os.str();
}

SimplexPoint basepoint() { return SimplexPoint{}; }

SimplexPoint coface_point(int i, const SimplexPoint& p) {
    int n = p.degree();
    if (i < 0 || i > n + 1) throw std::out_of_range("coface: index out of range");
    SimplexPoint q;
    q.t.reserve(n + 1);
    if (i == 0) {
        q.t.push_back(Rational(0));
        q.t.insert(q.t.end(), p.t.begin(), p.t.end());
    } else if (i == n + 1) {
        q.t = p.t;
        q.t.push_back(Rational(1));
    } else {
        // duplicate t_i (1-based)
        q.t.assign(p.t.begin(), p.t.begin() + i);
        q.t.push_back(p.t[i - 1]);
        q.t.insert(q.t.end(), p.t.begin() + i, p.t.end());
    }
    return q;
}

SimplexPoint codegeneracy_point(int j, const SimplexPoint& p) {
    int n = p.degree();
    if (j < 0 || j > n - 1) throw std::out_of_range("codegeneracy: index out of range");
    SimplexPoint q;
    q.t.reserve(n - 1);
    for (int k = 0; k < n; ++k)
        if (k != j) q.t.push_back(p.t[k]);  // delete t_{j+1} (1-based)
    return q;
}

SimplexPoint cyclic_point(const SimplexPoint& p) {
    int n = p.degree();
    if (n == 0) return p;
    SimplexPoint q;
    q.t.reserve(n);
    const Rational& t1 = p.t[0];
    for (int k = 1; k < n; ++k) q.t.push_back(p.t[k] - t1);
    q.t.push_back(Rational(1) - t1);
    return q;
}

namespace {
template <class F>
SimplexChain lift(const SimplexChain& x, F&& f) {
    SimplexChain out;
    for (const auto& [p, c] : x.terms()) out.add(f(p), c);
    return out;
}
}  // namespace

SimplexChain SimplexModule::coface(int n, int i, const SimplexChain& x) const {
    return lift(x, [&](const SimplexPoint& p) {
        if (p.degree() != n) throw std::invalid_argument("coface: degree mismatch");
        return coface_point(i, p);
    });
}

SimplexChain SimplexModule::codegeneracy(int n, int j, const SimplexChain& x) const {
    return lift(x, [&](const SimplexPoint& p) {
        if (p.degree() != n) throw std::invalid_argument("codegeneracy: degree mismatch");
        return codegeneracy_point(j, p);
    });
}

SimplexChain SimplexModule::cyclic(int n, const SimplexChain& x) const {
    return lift(x, [&](const SimplexPoint& p) {
        if (p.degree() != n) throw std::invalid_argument("cyclic: degree mismatch");
        return cyclic_point(p);
    });
}

SimplexChain SimplexModule::sample(int n, std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> num(0, 12);
    std::uniform_int_distribution<int> coeff(-4, 4);
    SimplexChain out;
    for (int term = 0; term < 3; ++term) {
        std::vector<Rational> vals;
        vals.reserve(n);
        for (int k = 0; k < n; ++k) vals.emplace_back(Rational(num(rng), 12));
        std::sort(vals.begin(), vals.end());
        int c = 0;
        while (c == 0) c = coeff(rng);
        out.add(SimplexPoint{std::move(vals)}, Rational(c));
    }
    return out;
}

Rational SimplexModule::exact_norm(int, const SimplexChain& x) const { return x.l1_norm(); }

std::string SimplexModule::describe(int, const SimplexChain& x) const { return chain_str(x); }

Rational chain_norm(const SimplexChain& c) { return c.l1_norm(); }

std::string chain_str(const SimplexChain& c) {
    if (c.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, coeff] : c.terms()) {
        if (!first) os << " + ";
        os << rat_str(coeff) << "*" << p.str();
        first = false;
    }
    return os.str();
}

std::string chain_to_json(const SimplexChain& c) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [p, coeff] : c.terms()) {
        nlohmann::ordered_json term;
        nlohmann::ordered_json coords = nlohmann::ordered_json::array();
        for (const auto& t : p.t) coords.push_back(rat_str(t));
        term["coords"] = coords;
        term["coeff"] = rat_str(coeff);
        arr.push_back(term);
    }
    return arr.dump();
}

SimplexChain chain_from_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    SimplexChain c;
    for (const auto& term : arr) {
        SimplexPoint p;
        for (const auto& s : term.at("coords")) p.t.push_back(parse_rational(s.get<std::string>()));
        if (!p.monotone()) throw std::invalid_argument("chain_from_json: non-monotone point");
        c.add(std::move(p), parse_rational(term.at("coeff").get<std::string>()));
    }
    return c;
}

SimplexPoint cone_point(int n2) {
    SimplexPoint p;
    p.t.assign(n2, Rational(0));
    return p;
}

SimplexChain universal_cocycle(int n) {
    if (n < 0) throw std::invalid_argument("universal_cocycle: n >= 0");
    if (n == 0) return SimplexChain::basis(basepoint());
    SimplexModule m;
    Rational coeff(BigInt((n % 2 == 0) ? 1 : -1), BigInt(1) << n);
    coeff /= Rational(factorial_big(static_cast<unsigned>(n)));
    SimplexChain sum;
    SimplexChain cur = SimplexChain::basis(cone_point(2 * n));
    for (int r = 0; r <= n; ++r) {
        sum += cur;
        if (r < n) cur = m.cyclic(2 * n, m.cyclic(2 * n, cur));
    }
    return sum.scaled(coeff);
}

CocycleWindowReport verify_cocycle_window(int N) {
    if (N < 1) throw std::invalid_argument("verify_cocycle_window: N >= 1");
    SimplexModule m;
    CocycleWindowReport rep;
    for (int n = 0; n < N; ++n) {
        CocycleWindowEntry e;
        e.n = n;
        SimplexChain residue = hochschild_b(m, 2 * n, universal_cocycle(n));
        residue += connes_B(m, 2 * n + 2, universal_cocycle(n + 1));
        e.closure_pass = residue.is_zero();
        if (!e.closure_pass) e.residue = chain_str(residue);

        // proof intermediates at degree 2m with m = n+1:
        // B(tau^{2r} d0^{2m} *) = 2 N_{2m-1} d0^{2m-1} * for r < m, and 0 for r = m
        int mm = n + 1;
        SimplexChain target =
            cyclic_N(m, 2 * mm - 1, SimplexChain::basis(cone_point(2 * mm - 1))).scaled(Rational(2));
        e.intermediates_pass = true;
        SimplexChain rotated = SimplexChain::basis(cone_point(2 * mm));
        for (int r = 0; r <= mm; ++r) {
            SimplexChain val = connes_B(m, 2 * mm, rotated);
            if (r < mm) {
                if (!(val - target).is_zero()) e.intermediates_pass = false;
            } else {
                if (!val.is_zero()) e.intermediates_pass = false;
            }
            if (r < mm) rotated = m.cyclic(2 * mm, m.cyclic(2 * mm, rotated));
        }
        if (!e.closure_pass || !e.intermediates_pass) rep.pass = false;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

CocycleGrowthReport classify_cocycle_growth(int N, const growth::Config& cfg) {
    if (N < 16) throw std::invalid_argument("classify_cocycle_growth: N >= 16");
    CocycleGrowthReport rep;
    rep.norm_profile.reserve(N + 1);
    for (int n = 0; n <= N; ++n)
        rep.norm_profile.push_back(to_double(chain_norm(universal_cocycle(n))));

    growth::GrowthSequence norms = growth::GrowthSequence::tabulated("|phi_2n|", rep.norm_profile);
    growth::GeneratorSpec one{"1", {}, {}};
    growth::GrowthSequence ones = growth::make_generated(one, N);

    rep.root_profile = growth::nth_root_profile(norms, ones, N);
    rep.e1_verdict = growth::precedes_prefix(norms, ones, {1.0, 2.0, 4.0, 8.0}, N, cfg);
    rep.e1_consistent = rep.e1_verdict.relation == growth::Relation::HoldsOnPrefix;

    auto entire = growth::entire_test(rep.norm_profile, 0, N, cfg);
    rep.entire_consistent = entire.entire_consistent;
    rep.radius_estimate = entire.radius;
    return rep;
}

}  // namespace asymcyc::splx
