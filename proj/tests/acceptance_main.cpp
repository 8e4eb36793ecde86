// Acceptance suite: one pass/fail line per criterion, exit nonzero on any
// failure. Every tolerance is pinned here, in code.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "asymcyc/algebra_module.hpp"
#include "asymcyc/charmaps.hpp"
#include "asymcyc/cocyclic.hpp"
#include "asymcyc/fredholm.hpp"
#include "asymcyc/growth.hpp"
#include "asymcyc/module_io.hpp"
#include "asymcyc/simplex.hpp"

using namespace asymcyc;

namespace {
int g_failures = 0;

void report(int criterion, bool pass, const char* what) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what);
    if (!pass) ++g_failures;
}

// 1. Universal cocycle closure, exact, 0 <= n < 8, with proof intermediates,
//    under 5 seconds.
void criterion1() {
    auto start = std::chrono::steady_clock::now();
    auto rep = splx::verify_cocycle_window(8);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = rep.pass && rep.entries.size() == 8 && secs < 5.0;
    for (const auto& e : rep.entries) pass = pass && e.closure_pass && e.intermediates_pass;
    report(1, pass, "b(phi_2n) + B(phi_2n+2) = 0 exactly for n < 8, intermediates exact, < 5 s");
}

// 2. Norm law |phi_2n| = (n+1)/(2^n n!) exactly for n <= 12; root profile
//    below 0.5 from n = 4 and monotonically decreasing toward 0.
void criterion2() {
    bool pass = true;
    for (int n = 0; n <= 12; ++n) {
        Rational expect(BigInt(n + 1), (BigInt(1) << n) * factorial_big(static_cast<unsigned>(n)));
        pass = pass && (splx::chain_norm(splx::universal_cocycle(n)) == expect);
    }
    auto rep = splx::classify_cocycle_growth(16);
    for (std::size_t i = 1; i < rep.root_profile.size(); ++i)
        pass = pass && rep.root_profile[i] < rep.root_profile[i - 1];
    for (int n = 4; n <= 16; ++n)
        pass = pass && rep.root_profile[static_cast<std::size_t>(n - 1)] < 0.5;
    report(2, pass, "norm law exact through n = 12; nth-root profile < 0.5 from n = 4, decreasing");
}

// 3. Non-entireness: radius estimate of sum (2n)! |phi_2n| / n! z^n in
//    [0.45, 0.55] using 40 terms.
void criterion3() {
    auto rep = splx::classify_cocycle_growth(40);
    bool pass = rep.radius_estimate >= 0.45 && rep.radius_estimate <= 0.55 &&
                !rep.entire_consistent;
    report(3, pass, "entire-test radius estimate in [0.45, 0.55] at 40 terms (not entire)");
}

// 4. Even index theorem at desk scale: bundled index-1 module and a random
//    commuting-projection module; pairing/ind equals the independent series to
//    1e-10; series oracle at N = 8 is 2.2019446 +- 1e-6; tail bound checked.
void criterion4() {
    bool pass = true;
    for (const char* name : {"index1", "random-commuting"}) {
        auto fm = io::builtin_even(name, 2026);
        auto rep = fred::even_index_cochain_pairing(fm, io::builtin_idempotent(fm), 8);
        pass = pass && rep.mckean_singer != 0;
        pass = pass && std::abs(rep.ratio - rep.series_partial) <= 1e-10;
    }
    auto fm = io::builtin_even("index1");
    auto rep = fred::even_index_cochain_pairing(fm, io::builtin_idempotent(fm), 8);
    pass = pass && std::abs(rep.series_partial - 2.2019446) <= 1e-6;
    // the paper's constant is an infinite series: bound the tail instead of
    // running to infinity (terms decay faster than geometrically with ratio 1/2)
    double next = 10.0 / (std::pow(2.0, 9) * std::pow(std::tgamma(10.0), 2));
    pass = pass && 2.0 * next < 1e-10;
    report(4, pass, "even index: pairing/ind = series partial sum (1e-10); oracle 2.2019446 +- 1e-6");
}

// 5. McKean-Singer t-independence within 1e-10 and integer within 0.1 on all
//    bundled even modules.
void criterion5() {
    bool pass = true;
    for (const char* name : {"index1", "index0", "random-commuting"}) {
        auto fm = io::builtin_even(name, 2026);
        try {
            auto r = fred::mckean_singer_index(fm, io::builtin_idempotent(fm), 1e-10, 1e-10);
            pass = pass && r.spread <= 1e-10;
            double v = r.supertraces.front();
            pass = pass && std::abs(v - std::round(v)) <= 0.1;
        } catch (const std::exception&) {
            pass = false;
        }
    }
    report(5, pass, "Str(p e^{-t D_p^2} p) constant in t {0.25,0.5,1,2} within 1e-10, integer within 0.1");
}

// 6. JLO cross-validation: exact vs quadrature within 1e-6 on 50 random
//    instances, n <= 3, dim <= 6; constant integrand 1/n! within 1e-6, n <= 4.
void criterion6() {
    std::mt19937_64 rng(424242);
    std::normal_distribution<double> gauss(0.0, 1.0);
    bool pass = true;
    auto random_module = [&](int dp, int dm) {
        fred::EvenFredholmModule m;
        m.dim_plus = dp;
        m.dim_minus = dm;
        fred::Mat block(dp, dm);
        for (int i = 0; i < dp; ++i)
            for (int j = 0; j < dm; ++j) block(i, j) = fred::cplx(gauss(rng), gauss(rng));
        m.D = fred::Mat::Zero(dp + dm, dp + dm);
        m.D.topRightCorner(dp, dm) = block;
        m.D.bottomLeftCorner(dm, dp) = block.adjoint();
        m.validate();
        return m;
    };
    auto random_even = [&](const fred::EvenFredholmModule& m) {
        fred::Mat a = fred::Mat::Zero(m.dim(), m.dim());
        for (int i = 0; i < m.dim(); ++i)
            for (int j = 0; j < m.dim(); ++j)
                if ((i < m.dim_plus) == (j < m.dim_plus))
                    a(i, j) = fred::cplx(gauss(rng), gauss(rng));
        return a;
    };
    std::uniform_int_distribution<int> dpd(1, 3), dmd(1, 3), degd(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        auto fm = random_module(dpd(rng), dmd(rng));
        int n = degd(rng);
        std::vector<fred::Mat> args;
        for (int k = 0; k <= n; ++k) args.push_back(random_even(fm));
        auto exact = fred::jlo_bracket(fm, args, fred::JloMode::Exact);
        auto quad = fred::jlo_bracket(fm, args, fred::JloMode::Quadrature);
        pass = pass && std::abs(exact.value - quad.value) <= 1e-6;
    }
    double fact = 1.0;
    for (int n = 0; n <= 4; ++n) {
        if (n > 0) fact *= n;
        double vol = fred::simplex_integral(n, [](std::span<const double>) { return 1.0; });
        pass = pass && std::abs(vol - 1.0 / fact) <= 1e-6;
    }
    report(6, pass, "JLO exact vs quadrature within 1e-6 (50 random, n <= 3, dim <= 6); volume 1/n!");
}

// 7. Vanishing Chern tail: Ch^{2n}(p,...,p) <= 1e-10 for 1 <= n <= 4 when [D,p] = 0.
void criterion7() {
    bool pass = true;
    for (const char* name : {"index1", "random-commuting"}) {
        auto fm = io::builtin_even(name, 2026);
        const fred::Mat p = io::builtin_idempotent(fm);
        for (int n = 1; n <= 4; ++n) {
            std::vector<fred::Mat> args(static_cast<std::size_t>(2 * n) + 1, p);
            pass = pass && std::abs(fred::chern_component(fm, n, args).value) <= 1e-10;
        }
    }
    report(7, pass, "Ch^{2n}(p,...,p) <= 1e-10 for 1 <= n <= 4 whenever [D,p] = 0");
}

// 8. Spectral flow: crossings = #neg(A0) - #neg(A1) on 100 random invertible
//    paths; conjugation paths 0 with |integral| <= 1e-8 at t = 1; generic path
//    +1 matched by the t = 100 integral within 0.05.
void criterion8() {
    std::mt19937_64 rng(777);
    std::normal_distribution<double> gauss(0.0, 1.0);
    bool pass = true;
    int done = 0;
    for (int trial = 0; trial < 140 && done < 100; ++trial) {
        int d = 2 + trial % 3;
        fred::Mat a(d, d), b(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                a(i, j) = fred::cplx(gauss(rng), gauss(rng));
                b(i, j) = fred::cplx(gauss(rng), gauss(rng));
            }
        fred::Mat A0 = (a + a.adjoint()) / 2.0, A1 = (b + b.adjoint()) / 2.0;
        auto negs = [](const fred::Mat& m) {
            Eigen::SelfAdjointEigenSolver<fred::Mat> es(m);
            int c = 0;
            double margin = 1e18;
            for (int i = 0; i < es.eigenvalues().size(); ++i) {
                if (es.eigenvalues()(i) < 0) ++c;
                margin = std::min(margin, std::abs(es.eigenvalues()(i)));
            }
            return std::pair<int, double>(c, margin);
        };
        auto [n0, m0] = negs(A0);
        auto [n1, m1] = negs(A1);
        if (m0 < 1e-6 || m1 < 1e-6) continue;
        auto path = [&](double u) { return fred::Mat((1.0 - u) * A0 + u * A1); };
        auto r = fred::spectral_flow_crossings(path, 8);
        pass = pass && (r.flow == n0 - n1);
        ++done;
    }
    pass = pass && done == 100;

    auto om = io::builtin_odd("odd-conj");
    auto conj_path = [&](double u) { return om.dirac_path(u); };
    pass = pass && fred::spectral_flow_crossings(conj_path, 8).flow == 0;
    pass = pass && std::abs(fred::spectral_flow_integral(om, 1.0)) <= 1e-8;

    auto ps = io::builtin_path("generic");
    auto gen_path = [&](double u) { return fred::Mat((1.0 - u) * ps.A0 + u * ps.A1); };
    int flow = fred::spectral_flow_crossings(gen_path, 8).flow;
    pass = pass && flow == 1;
    fred::OddFredholmModule raw;  // scaled integral on the raw path via the sweep formula
    {
        fred::Mat V = ps.A1 - ps.A0;
        double t = 100.0;
        auto f = [&](double u) {
            fred::Mat Au = (1.0 - u) * ps.A0 + u * ps.A1;
            Eigen::SelfAdjointEigenSolver<fred::Mat> es(Au);
            Eigen::VectorXd w = (-t * es.eigenvalues().array().square()).exp();
            fred::Mat heat = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
            return (V * heat).trace().real();
        };
        double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, 0.0, 1.0, 15, 1e-10);
        double scaled = std::sqrt(t) / std::sqrt(std::numbers::pi) * integral;
        pass = pass && std::abs(scaled - flow) <= 0.05;
    }
    report(8, pass, "spectral flow: 100-path #neg oracle exact; conjugation 0 (<= 1e-8); generic +1 (0.05)");
}

// 9. Odd constant: partial sums reach 3 within 2.3e-5 at N = 20; odd pairing
//    vanishes identically when [D,g] = 0.
void criterion9() {
    bool pass = std::abs(3.0 - fred::odd_series_partial(20)) <= 2.3e-5;
    auto om = io::builtin_odd("odd-commuting");
    auto rep = fred::odd_eta_pairing(om, 20);
    pass = pass && std::abs(rep.n0_term) <= 1e-12;
    for (const auto& t : rep.terms) pass = pass && std::abs(t.value) <= 1e-12;
    pass = pass && std::abs(rep.pairing_with_branch) <= 1e-12;
    report(9, pass, "odd series partial reaches 3 within 2.3e-5 at N = 20; [D,g] = 0 pairing vanishes");
}

// 10. Structure suites: identities exact through degree 10 on the simplex;
//     mixed operator identities exact; shuffle cardinalities; telescoping
//     alpha sums; norm bounds on 100 random algebra cochains per degree <= 6.
void criterion10() {
    bool pass = true;
    std::mt19937_64 rng(5150);
    splx::SimplexModule sm;
    pass = pass && check_identities<splx::SimplexChain>(sm, 10, 1, rng).all_pass;
    pass = pass && check_mixed_identities<splx::SimplexChain>(sm, 10, 1, rng).all_pass;
    for (int n = 1; n <= 6; ++n) {
        splx::SimplexChain x = sm.sample(n, rng);
        pass = pass && one_minus_lambda(sm, n, cyclic_N(sm, n, x)).is_zero();
        pass = pass && cyclic_N(sm, n, one_minus_lambda(sm, n, x)).is_zero();
    }
    for (int p = 0; p <= 10; ++p)
        for (int q = 0; p + q <= 10; ++q)
            pass = pass && (BigInt(charm::shuffles(p, q).size()) ==
                            binomial_big(static_cast<unsigned>(p + q), static_cast<unsigned>(p)));
    for (int n = 0; n <= 20; ++n)
        pass = pass && (charm::alpha_partial_sum(n) ==
                        Rational(BigInt(1), factorial_big(static_cast<unsigned>(2 * n))));
    alg::AlgebraCochainModule am(alg::FiniteAlgebra::diagonal(2));
    for (int degree = 1; degree <= 6; ++degree) {
        auto rep = norm_estimate_check<alg::AlgebraCochain>(am, degree, 100, rng);
        pass = pass && rep.all_pass;
    }
    report(10, pass, "identity suites exact (degree 10); shuffles = binomials; telescoping; norm bounds");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures == 0) {
        std::printf("acceptance: all 10 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
}
