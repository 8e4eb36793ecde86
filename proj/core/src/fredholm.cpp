#include "asymcyc/fredholm.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "asymcyc/charmaps.hpp"
#include "asymcyc/simplex.hpp"

namespace asymcyc::fred {

namespace {
constexpr std::size_t kHeatCacheLimit = 4096;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}
}  // namespace

// ---------------------------------------------------------------------------
// HeatCache
// ---------------------------------------------------------------------------

HeatCache::HeatCache(Mat D, double hermitian_tol) : D_(std::move(D)) {
    require(D_.rows() == D_.cols(), "HeatCache: square matrix required");
    require((D_ - D_.adjoint()).norm() <= hermitian_tol * (1.0 + D_.norm()),
            "HeatCache: non-Hermitian Dirac operator");
    Eigen::SelfAdjointEigenSolver<Mat> es(D_);
    require(es.info() == Eigen::Success, "HeatCache: eigendecomposition failed");
    evals_ = es.eigenvalues();
    U_ = es.eigenvectors();
    mu_ = evals_.array().square();
}

Mat HeatCache::heat(double t) const {
    require(t >= 0.0, "heat: t >= 0 required");
    if (t == 0.0) return Mat::Identity(dim(), dim());
    {
        std::shared_lock lock(mutex_);
        auto it = cache_.find(t);
        if (it != cache_.end()) return it->second;
    }
    Eigen::VectorXd w = (-t * mu_.array()).exp();
    Mat result = U_ * w.asDiagonal() * U_.adjoint();
    std::unique_lock lock(mutex_);
    if (cache_.size() < kHeatCacheLimit) cache_.emplace(t, result);
    return result;
}

// ---------------------------------------------------------------------------
// modules
// ---------------------------------------------------------------------------

Eigen::VectorXd EvenFredholmModule::gamma_diag() const {
    Eigen::VectorXd g(dim());
    g.head(dim_plus).setOnes();
    g.tail(dim_minus).setConstant(-1.0);
    return g;
}

Mat EvenFredholmModule::gamma() const {
    return gamma_diag().cast<cplx>().asDiagonal();
}

double EvenFredholmModule::boundedness_constant() const {
    double best = 1.0;
    for (const auto& [name, a] : algebra) {
        double na = a.operatorNorm();
        if (na == 0.0) continue;
        double c = (na + commutator(D, a).operatorNorm()) / na;
        best = std::max(best, c);
    }
    return best;
}

void EvenFredholmModule::validate(double tol) const {
    require(dim_plus >= 0 && dim_minus >= 0 && dim() > 0, "even module: empty space");
    require(D.rows() == dim() && D.cols() == dim(), "even module: D dimension mismatch");
    require((D - D.adjoint()).norm() <= tol * (1.0 + D.norm()), "even module: D not self-adjoint");
    Mat g = gamma();
    require((g * D + D * g).norm() <= tol * (1.0 + D.norm()), "even module: D not odd");
    for (const auto& [name, a] : algebra) {
        require(a.rows() == dim() && a.cols() == dim(),
                "even module: algebra element '" + name + "' dimension mismatch");
        require((g * a - a * g).norm() <= tol * (1.0 + a.norm()),
                "even module: algebra element '" + name + "' not even");
    }
    require(epsilon > 0.0, "even module: theta margin must be positive");
}

void OddFredholmModule::validate(double tol) const {
    require(dim_ > 0, "odd module: empty space");
    require(D.rows() == dim_ && D.cols() == dim_, "odd module: D dimension mismatch");
    require((D - D.adjoint()).norm() <= tol * (1.0 + D.norm()), "odd module: D not self-adjoint");
    require(g.rows() == dim_ && g.cols() == dim_, "odd module: g dimension mismatch");
    require((g.adjoint() * g - Mat::Identity(dim_, dim_)).norm() <= tol * dim_,
            "odd module: g not unitary");
}

Mat OddFredholmModule::dirac_path(double u) const {
    require(u >= 0.0 && u <= 1.0, "dirac_path: u in [0,1]");
    return (1.0 - u) * D + u * (g.inverse() * D * g);
}

Mat OddFredholmModule::velocity() const { return g.inverse() * D * g - D; }

cplx supertrace(const EvenFredholmModule& fm, const Mat& a) {
    require(a.rows() == fm.dim() && a.cols() == fm.dim(), "supertrace: dimension mismatch");
    Eigen::VectorXd g = fm.gamma_diag();
    cplx s{};
    for (int i = 0; i < fm.dim(); ++i) s += g(i) * a(i, i);
    return s;
}

Mat commutator(const Mat& D, const Mat& a) { return D * a - a * D; }

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes (Newton on the Legendre recurrence)
// ---------------------------------------------------------------------------

namespace {
struct GaussRule {
    std::vector<double> x, w;  // on [0,1]
};

GaussRule gauss_rule(int m) {
    GaussRule r;
    r.x.resize(m);
    r.w.resize(m);
    for (int i = 0; i < m; ++i) {
        // initial guess on [-1,1]
        double t = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double p0, p1;
        for (int iter = 0; iter < 100; ++iter) {
            p0 = 1.0;
            p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            double dp = m * (t * p0 - p1) / (t * t - 1.0);
            double dt = p0 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = 0.0;
        for (int j = 0; j < m; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
        }
        double dp = m * (t * p0 - p1) / (t * t - 1.0);
        r.x[i] = 0.5 * (1.0 - t);  // map to [0,1]; reversed order is harmless
        r.w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
    return r;
}

// iterate f over the ordered simplex via t_j = prod_{k>=j} x_k, |J| = prod x_k^{k-1}
template <class F>
double iterated_gauss_simplex(int n, int nodes, F&& f) {
    if (n == 0) {
        std::vector<double> none;
        return f(std::span<const double>(none));
    }
    GaussRule g = gauss_rule(nodes);
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    std::vector<double> t(static_cast<std::size_t>(n));
    double total = 0.0;
    while (true) {
        double wj = 1.0;
        for (int k = 1; k <= n; ++k) {
            double xk = g.x[static_cast<std::size_t>(idx[static_cast<std::size_t>(k - 1)])];
            wj *= g.w[static_cast<std::size_t>(idx[static_cast<std::size_t>(k - 1)])];
            wj *= std::pow(xk, k - 1);
        }
        double prod = 1.0;
        for (int j = n; j >= 1; --j) {
            prod *= g.x[static_cast<std::size_t>(idx[static_cast<std::size_t>(j - 1)])];
            t[static_cast<std::size_t>(j - 1)] = prod;
        }
        // t is built as t_j = x_j x_{j+1} ... x_n which is decreasing in j; reorder
        std::vector<double> ts(t.begin(), t.end());
        std::sort(ts.begin(), ts.end());
        total += wj * f(std::span<const double>(ts));
        int pos = 0;
        while (pos < n && ++idx[static_cast<std::size_t>(pos)] == nodes) {
            idx[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return total;
}
}  // namespace

double simplex_integral(int n, const std::function<double(std::span<const double>)>& f,
                        const QuadratureSpec& spec) {
    if (spec.method == QuadratureSpec::Method::IteratedGauss)
        return iterated_gauss_simplex(n, spec.nodes_per_axis, f);
    // Monte Carlo: sorted uniforms are uniform on the ordered simplex of volume 1/n!
    std::mt19937_64 rng(spec.mc_seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double acc = 0.0;
    std::vector<double> t(static_cast<std::size_t>(n));
    for (long s = 0; s < spec.mc_samples; ++s) {
        for (auto& v : t) v = uni(rng);
        std::sort(t.begin(), t.end());
        acc += f(std::span<const double>(t));
    }
    double volume = 1.0;
    for (int k = 2; k <= n; ++k) volume /= k;
    return acc / static_cast<double>(spec.mc_samples) * volume;
}

// ---------------------------------------------------------------------------
// divided differences of exp
// ---------------------------------------------------------------------------

double exp_divided_difference(std::span<const double> points) {
    const int m = static_cast<int>(points.size());
    require(m >= 1, "exp_divided_difference: need at least one point");
    std::vector<long double> x(points.begin(), points.end());
    std::sort(x.begin(), x.end());
    // table[i] holds f[x_i..x_{i+len}] as len grows
    std::vector<long double> table(x.size());
    for (int i = 0; i < m; ++i) table[static_cast<std::size_t>(i)] = std::exp(x[static_cast<std::size_t>(i)]);
    const long double conf_tol = 1e-10L;
    std::vector<long double> fact(static_cast<std::size_t>(m), 1.0L);
    for (int k = 1; k < m; ++k) fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k - 1)] * k;
    for (int len = 1; len < m; ++len) {
        for (int i = 0; i + len < m; ++i) {
            long double lo = x[static_cast<std::size_t>(i)];
            long double hi = x[static_cast<std::size_t>(i + len)];
            if (hi - lo < conf_tol * (1.0L + std::abs(lo))) {
                // confluent cell: all points in [i, i+len] coincide (sorted)
                table[static_cast<std::size_t>(i)] =
                    std::exp((lo + hi) / 2.0L) / fact[static_cast<std::size_t>(len)];
            } else {
                table[static_cast<std::size_t>(i)] =
                    (table[static_cast<std::size_t>(i + 1)] - table[static_cast<std::size_t>(i)]) /
                    (hi - lo);
            }
        }
    }
    return static_cast<double>(table[0]);
}

// ---------------------------------------------------------------------------
// JLO brackets
// ---------------------------------------------------------------------------

namespace {
// common core: weight = gamma diag (Str) or nullptr (Tr)
JloResult jlo_core(const HeatCache& heat, const Eigen::VectorXd* gamma,
                   std::span<const Mat> args, JloMode mode, const QuadratureSpec& spec) {
    const int n = static_cast<int>(args.size()) - 1;
    require(n >= 0, "jlo_bracket: at least one argument");
    const int d = heat.dim();
    for (const auto& a : args) require(a.rows() == d && a.cols() == d, "jlo_bracket: dimensions");

    JloResult res;
    res.mode = mode;
    if (mode == JloMode::Quadrature) {
        auto integrand = [&](std::span<const double> t) {
            Mat prod = args[0];
            double prev = 0.0;
            for (int k = 1; k <= n; ++k) {
                prod = prod * heat.heat(t[static_cast<std::size_t>(k - 1)] - prev) *
                       args[static_cast<std::size_t>(k)];
                prev = t[static_cast<std::size_t>(k - 1)];
            }
            prod = prod * heat.heat(1.0 - prev);
            if (!gamma) return prod.trace().real();
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += (*gamma)(i)*prod(i, i).real();
            return s;
        };
        auto integrand_imag = [&](std::span<const double> t) {
            Mat prod = args[0];
            double prev = 0.0;
            for (int k = 1; k <= n; ++k) {
                prod = prod * heat.heat(t[static_cast<std::size_t>(k - 1)] - prev) *
                       args[static_cast<std::size_t>(k)];
                prev = t[static_cast<std::size_t>(k - 1)];
            }
            prod = prod * heat.heat(1.0 - prev);
            if (!gamma) return prod.trace().imag();
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += (*gamma)(i)*prod(i, i).imag();
            return s;
        };
        QuadratureSpec use = spec;
        if (spec.method == QuadratureSpec::Method::IteratedGauss && n >= 5)
            use.method = QuadratureSpec::Method::MonteCarlo;  // high-degree fallback
        double re = simplex_integral(n, integrand, use);
        double im = simplex_integral(n, integrand_imag, use);
        res.value = {re, im};
        res.error_estimate = spec.tol;
        return res;
    }

    // exact mode: eigenbasis expansion, simplex integral = divided difference of
    // exp at the negated squared eigenvalues
    const Mat& U = heat.eigenvectors();
    const Eigen::VectorXd& mu = heat.squared_eigenvalues();
    std::vector<Mat> tilde;
    tilde.reserve(args.size());
    {
        Mat first = args[0];
        if (gamma) first = gamma->cast<cplx>().asDiagonal() * first;
        tilde.push_back(U.adjoint() * first * U);
    }
    for (std::size_t k = 1; k < args.size(); ++k) tilde.push_back(U.adjoint() * args[k] * U);

    std::map<std::vector<int>, double> dd_cache;
    auto dd = [&](std::vector<int> key) {
        std::sort(key.begin(), key.end());
        auto it = dd_cache.find(key);
        if (it != dd_cache.end()) return it->second;
        std::vector<double> pts;
        pts.reserve(key.size());
        for (int i : key) pts.push_back(-mu(i));
        double v = exp_divided_difference(pts);
        dd_cache.emplace(std::move(key), v);
        return v;
    };

    cplx total{};
    std::vector<int> tuple(static_cast<std::size_t>(n) + 1, 0);
    // choose i_0, then fold factors tilde[k](i_k, i_{k+1}); the final factor
    // tilde[n](i_n, i_0) closes the cycle inside the leaf. The gap times pair
    // with the exponents (i_1, ..., i_n, i_0) = the whole tuple as a multiset.
    std::function<void(int, cplx)> rec2 = [&](int pos, cplx partial) {
        if (partial == cplx{}) return;
        if (pos == n + 1) {
            cplx closing = tilde[static_cast<std::size_t>(n)](
                tuple[static_cast<std::size_t>(n)], tuple[0]);
            if (closing == cplx{}) return;
            std::vector<int> key(tuple.begin(), tuple.end());
            total += partial * closing * dd(std::move(key));
            return;
        }
        for (int i = 0; i < d; ++i) {
            tuple[static_cast<std::size_t>(pos)] = i;
            cplx factor = tilde[static_cast<std::size_t>(pos - 1)](
                tuple[static_cast<std::size_t>(pos - 1)], i);
            rec2(pos + 1, partial * factor);
        }
    };
    for (int i0 = 0; i0 < d; ++i0) {
        tuple[0] = i0;
        if (n == 0) {
            cplx closing = tilde[0](i0, i0);
            if (closing != cplx{}) {
                total += closing * dd(std::vector<int>{i0});
            }
            continue;
        }
        rec2(1, cplx{1.0, 0.0});
    }
    res.value = total;
    return res;
}
}  // namespace

JloResult jlo_bracket(const EvenFredholmModule& fm, std::span<const Mat> args, JloMode mode,
                      const QuadratureSpec& spec) {
    Eigen::VectorXd g = fm.gamma_diag();
    return jlo_core(fm.heat_cache(), &g, args, mode, spec);
}

JloResult jlo_bracket_tr(const HeatCache& heat, std::span<const Mat> args, JloMode mode,
                         const QuadratureSpec& spec) {
    return jlo_core(heat, nullptr, args, mode, spec);
}

JloResult chern_component(const EvenFredholmModule& fm, int n, std::span<const Mat> args,
                          JloMode mode, const QuadratureSpec& spec) {
    require(static_cast<int>(args.size()) == 2 * n + 1, "chern_component: need 2n+1 arguments");
    std::vector<Mat> sub;
    sub.reserve(args.size());
    sub.push_back(args[0]);
    for (std::size_t k = 1; k < args.size(); ++k) sub.push_back(commutator(fm.D, args[k]));
    return jlo_bracket(fm, sub, mode, spec);
}

// ---------------------------------------------------------------------------
// pairings
// ---------------------------------------------------------------------------

namespace {
double pairing_weight_even(int n) {
    // (2n)!/n! as double (exact for the desk-scale range)
    double w = 1.0;
    for (int k = n + 1; k <= 2 * n; ++k) w *= k;
    return (n % 2 == 0) ? w : -w;
}
}  // namespace

cplx pair_even_K0(const EvenCochainEvaluator& psi, const Mat& p, int N, double idem_tol) {
    require((p * p - p).norm() <= idem_tol * (1.0 + p.norm()), "pair_even_K0: p not idempotent");
    cplx sum{};
    for (int n = 0; n <= N; ++n) {
        std::vector<Mat> args(static_cast<std::size_t>(2 * n) + 1, p);
        sum += pairing_weight_even(n) * psi(n, args);
    }
    return sum;
}

McKeanSingerResult mckean_singer_index(const EvenFredholmModule& fm, const Mat& p,
                                       double commute_tol, double const_tol) {
    require(p.rows() == fm.dim() && p.cols() == fm.dim(), "mckean_singer: dimension mismatch");
    require((p - p.adjoint()).norm() <= 1e-12 * (1.0 + p.norm()),
            "mckean_singer: p not self-adjoint");
    require((p * p - p).norm() <= 1e-12 * (1.0 + p.norm()), "mckean_singer: p not idempotent");
    if (commutator(fm.D, p).norm() > commute_tol * (1.0 + fm.D.norm()))
        throw std::domain_error("mckean_singer: [D,p] != 0, theorem hypotheses unmet");
    Mat Dp = p * fm.D * p;
    HeatCache hc(Dp);
    McKeanSingerResult res;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    Eigen::VectorXd g = fm.gamma_diag();
    for (double t : {0.25, 0.5, 1.0, 2.0}) {
        Mat m = p * hc.heat(t) * p;
        double v = 0.0;
        for (int i = 0; i < fm.dim(); ++i) v += g(i) * m(i, i).real();
        res.supertraces.push_back(v);
        lo = first ? v : std::min(lo, v);
        hi = first ? v : std::max(hi, v);
        first = false;
    }
    res.spread = hi - lo;
    if (res.spread > const_tol)
        throw std::domain_error("mckean_singer: supertrace varies with t; not an index situation");
    double v = res.supertraces.front();
    double rounded = std::round(v);
    if (std::abs(v - rounded) > 0.1)
        throw std::domain_error("mckean_singer: value not within guard band of an integer");
    res.index = static_cast<int>(rounded);
    return res;
}

EvenIndexReport even_index_cochain_pairing(const EvenFredholmModule& fm, const Mat& p, int N,
                                           double commute_tol) {
    EvenIndexReport rep;
    rep.mckean_singer = mckean_singer_index(fm, p, commute_tol).index;

    cplx str_factor = supertrace(fm, p * fm.heat_cache().heat(1.0));

    double series = 0.0;
    for (int n = 0; n <= N; ++n) {
        // independently summed oracle series (n+1)/(2^n (n!)^2)
        Rational t(BigInt(n + 1), (BigInt(1) << n) * factorial_big(static_cast<unsigned>(n)) *
                                      factorial_big(static_cast<unsigned>(n)));
        series += to_double(t);
    }
    rep.series_partial = series;

    for (int n = 0; n <= N; ++n) {
        EvenIndexTerm term;
        term.n = n;
        term.pairing_weight = pairing_weight_even(n);
        splx::SimplexChain phi = splx::universal_cocycle(n);
        term.point_count = static_cast<int>(phi.support_size());
        term.cocycle_coefficient = to_double(phi.terms().begin()->second);
        term.iota_weight = to_double(charm::alpha_partial_sum(n));
        term.str_factor = str_factor;
        term.value = term.pairing_weight * term.cocycle_coefficient *
                     static_cast<double>(term.point_count) * term.iota_weight * str_factor;
        rep.pairing += term.value;
        rep.terms.push_back(term);
    }

    // general cup-then-chi evaluation, both cup conventions, reported verbatim
    charm::HopfWordModule hopf;
    splx::SimplexModule smod;
    Eigen::VectorXd gdiag = fm.gamma_diag();
    const HeatCache& hc = fm.heat_cache();
    for (int n = 0; n <= N; ++n) {
        cplx gen_sh{}, gen_aw{};
        for (int r = 0; r <= n; ++r) {
            double ar = to_double(charm::alpha(r));
            charm::WordChain ir = charm::fundamental_power(r);
            splx::SimplexChain phi = splx::universal_cocycle(n - r);
            std::vector<Mat> args(static_cast<std::size_t>(2 * n) + 1, p);
            auto eval_terms = [&](const auto& terms, cplx& acc) {
                for (const auto& t : terms) {
                    for (const auto& [w, cw] : t.left.terms())
                        for (const auto& [pt, cp] : t.right.terms()) {
                            cplx chi = charm::chi_evaluate(hc, &gdiag, w, pt, args,
                                                           charm::ChiFlavor::Even);
                            acc += ar * to_double(t.coeff * cw * cp) * chi;
                        }
                }
            };
            eval_terms(charm::cup_shuffle_terms(hopf, 2 * r, ir, smod, 2 * (n - r), phi), gen_sh);
            std::vector<charm::CupTerm<charm::WordChain, splx::SimplexChain>> aw{
                charm::cup_aw_term(hopf, 2 * r, ir, smod, 2 * (n - r), phi)};
            eval_terms(aw, gen_aw);
        }
        gen_sh *= pairing_weight_even(n);
        gen_aw *= pairing_weight_even(n);
        rep.general_terms_shuffle.push_back(gen_sh);
        rep.general_terms_aw.push_back(gen_aw);
        rep.general_pairing_shuffle += gen_sh;
        rep.general_pairing_aw += gen_aw;
    }
    rep.general_matches_collapsed =
        std::abs(rep.general_pairing_shuffle - rep.pairing) <= 1e-9 * (1.0 + std::abs(rep.pairing));

    rep.ratio = (rep.mckean_singer != 0) ? rep.pairing.real() / rep.mckean_singer : 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// spectral flow
// ---------------------------------------------------------------------------

namespace {
struct SpectrumProbe {
    int negatives = 0;
    double margin = 0.0;  // min |eigenvalue|
};

SpectrumProbe probe(const std::function<Mat(double)>& path, double u) {
    Eigen::SelfAdjointEigenSolver<Mat> es(path(u));
    SpectrumProbe p;
    p.margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double ev = es.eigenvalues()(i);
        if (ev < 0.0) ++p.negatives;
        p.margin = std::min(p.margin, std::abs(ev));
    }
    return p;
}
}  // namespace

SpectralFlowResult spectral_flow_crossings(const std::function<Mat(double)>& path, int K,
                                           double kernel_tol) {
    require(K >= 1, "spectral_flow_crossings: K >= 1");
    SpectrumProbe left = probe(path, 0.0);
    SpectrumProbe right = probe(path, 1.0);
    if (left.margin <= kernel_tol || right.margin <= kernel_tol)
        throw std::domain_error("spectral_flow_crossings: endpoint has (near-)kernel");

    SpectralFlowResult res;
    const double locate_tol = 1e-9;
    struct Seg {
        double a, b;
        SpectrumProbe pa, pb;
        int depth;
    };
    std::vector<Seg> stack;
    double h = 1.0 / K;
    SpectrumProbe prev = left;
    for (int k = 0; k < K; ++k) {
        double a = k * h, b = (k + 1) * h;
        SpectrumProbe pb = (k == K - 1) ? right : probe(path, b);
        stack.push_back({a, b, prev, pb, 0});
        prev = pb;
    }
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        ++res.refinement_steps;
        int delta = s.pa.negatives - s.pb.negatives;
        double width = s.b - s.a;
        // refine while an eigenvalue could sneak through: the step must stay
        // below half the smaller spectral margin (eigenvalues are 1-Lipschitz
        // in the operator norm along the path)
        double step_norm = (path(s.b) - path(s.a)).norm();
        bool too_coarse = step_norm > 0.5 * std::min(s.pa.margin, s.pb.margin);
        if ((delta != 0 || too_coarse) && width > locate_tol && s.depth < 60) {
            double mid = 0.5 * (s.a + s.b);
            SpectrumProbe pm = probe(path, mid);
            stack.push_back({s.a, mid, s.pa, pm, s.depth + 1});
            stack.push_back({mid, s.b, pm, s.pb, s.depth + 1});
            continue;
        }
        if (delta != 0) {
            int sign = (delta > 0) ? +1 : -1;  // fewer negatives to the right = up-crossing
            for (int c = 0; c < std::abs(delta); ++c)
                res.crossings.push_back({0.5 * (s.a + s.b), sign});
            res.flow += delta;
        }
    }
    std::sort(res.crossings.begin(), res.crossings.end(),
              [](const Crossing& x, const Crossing& y) { return x.u < y.u; });
    return res;
}

double spectral_flow_integral(const OddFredholmModule& om, double t_scale, double tol) {
    require(t_scale > 0.0, "spectral_flow_integral: scale t > 0");
    Mat V = om.velocity();
    auto f = [&](double u) {
        Mat Du = om.dirac_path(u);
        Eigen::SelfAdjointEigenSolver<Mat> es(Du);
        Eigen::VectorXd w = (-t_scale * es.eigenvalues().array().square()).exp();
        Mat heat = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
        return (V * heat).trace().real();
    };
    double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, 0.0, 1.0, 15, tol);
    return std::sqrt(t_scale) / std::sqrt(std::numbers::pi) * integral;
}

cplx sqrt_2pii() {
    // principal branch: sqrt(2 pi) * e^{i pi/4}
    double r = std::sqrt(2.0 * std::numbers::pi);
    return {r * std::cos(std::numbers::pi / 4.0), r * std::sin(std::numbers::pi / 4.0)};
}

cplx sqrt_2i() {
    double r = std::sqrt(2.0);
    return {r * std::cos(std::numbers::pi / 4.0), r * std::sin(std::numbers::pi / 4.0)};
}

cplx pair_odd_K1(const OddCochainEvaluator& psi, const Mat& g, int N) {
    Mat ginv = g.inverse();
    cplx sum{};
    double nfact = 1.0;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) nfact *= n;
        std::vector<Mat> args;
        args.reserve(static_cast<std::size_t>(2 * n) + 2);
        for (int k = 0; k <= n; ++k) {
            args.push_back(ginv);
            args.push_back(g);
        }
        double w = (n % 2 == 0) ? nfact : -nfact;
        sum += w * psi(n, args);
    }
    return sum / sqrt_2pii();
}

double odd_series_partial(int N) {
    double s = 0.0;
    for (int n = 1; n <= N; ++n) s += (n + 1) / std::pow(2.0, n);
    return s;
}

cplx odd_index_constant(int N) {
    require(N >= 1, "odd_index_constant: N >= 1");
    return odd_series_partial(N) / sqrt_2i();
}

OddPairingReport odd_eta_pairing(const OddFredholmModule& om, int N) {
    OddPairingReport rep;
    const HeatCache& hc = om.heat_cache();
    Mat ginv = om.g.inverse();
    rep.trace_factor = (ginv * commutator(om.D, om.g) * hc.heat(1.0)).trace();

    auto psi_collapsed = [&](int n) {
        // sum over the points of phi_{2n}, word X in slot 1, point delta_0-lifted
        splx::SimplexChain phi = splx::universal_cocycle(n);
        charm::HopfWord w = charm::eta_word(2 * n + 1);
        std::vector<Mat> args;
        args.reserve(static_cast<std::size_t>(2 * n) + 2);
        for (int k = 0; k <= n; ++k) {
            args.push_back(ginv);
            args.push_back(om.g);
        }
        cplx acc{};
        for (const auto& [pt, c] : phi.terms()) {
            splx::SimplexPoint lifted = splx::coface_point(0, pt);
            acc += to_double(c) *
                   charm::chi_evaluate(hc, nullptr, w, lifted, args, charm::ChiFlavor::Odd);
        }
        return acc;
    };

    rep.n0_term = psi_collapsed(0);  // pairing weight (-1)^0 0! = 1
    cplx total = rep.n0_term;
    double nfact = 1.0;
    for (int n = 1; n <= N; ++n) {
        nfact *= n;
        OddPairingTerm term;
        term.n = n;
        term.pairing_weight = (n % 2 == 0) ? nfact : -nfact;
        splx::SimplexChain phi = splx::universal_cocycle(n);
        term.point_count = static_cast<int>(phi.support_size());
        term.cocycle_coefficient = to_double(phi.terms().begin()->second);
        term.trace_factor = rep.trace_factor;
        term.value = term.pairing_weight * psi_collapsed(n);
        total += term.value;
        rep.terms.push_back(term);
    }
    rep.pairing_with_branch = total / sqrt_2pii();
    rep.series_partial = odd_series_partial(N);
    rep.odd_constant = odd_index_constant(std::max(N, 1));
    return rep;
}

}  // namespace asymcyc::fred
