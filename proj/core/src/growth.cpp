#include "asymcyc/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asymcyc::growth {

GrowthSequence::GrowthSequence(std::string label, std::function<long double(int)> log_term,
                               int max_index)
    : label_(std::move(label)), log_term_(std::move(log_term)), max_index_(max_index) {
    if (max_index_ < 0) throw std::invalid_argument("GrowthSequence: negative max_index");
}

GrowthSequence GrowthSequence::tabulated(std::string label, const std::vector<double>& terms) {
    if (terms.empty()) throw std::invalid_argument("GrowthSequence: empty table");
    std::vector<long double> logs(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!(terms[i] > 0.0)) throw std::invalid_argument("GrowthSequence: nonpositive term");
        logs[i] = std::log(static_cast<long double>(terms[i]));
    }
    int mx = static_cast<int>(terms.size()) - 1;
    return GrowthSequence(std::move(label), [logs](int n) { return logs.at(n); }, mx);
}

long double GrowthSequence::log_term(int n) const {
    if (n < 0 || n > max_index_) throw std::out_of_range("GrowthSequence: index out of range");
    return log_term_(n);
}

double GrowthSequence::term(int n) const { return std::exp(static_cast<double>(log_term(n))); }

GrowthSequence GrowthSequence::absorbed(double lambda, double a) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("absorbed: lambda must be positive");
    auto base = log_term_;
    long double ll = std::log(static_cast<long double>(lambda));
    return GrowthSequence(label_ + "*" + std::to_string(lambda) + "^n*n^" + std::to_string(a),
                          [base, ll, a](int n) {
                              long double extra = n * ll;
                              if (n >= 1) extra += a * std::log(static_cast<long double>(n));
                              return base(n) + extra;
                          },
                          max_index_);
}

static long double atom_log(const GeneratorAtom& at, int n) {
    switch (at.kind) {
        case GeneratorAtom::Kind::Factorial: {
            long double arg = at.a * n + at.b;
            if (arg < 0) throw std::invalid_argument("generator: negative factorial argument");
            return std::lgamma(arg + 1.0L);
        }
        case GeneratorAtom::Kind::Power:
            if (!(at.a > 0)) throw std::invalid_argument("generator: nonpositive power base");
            return n * std::log(static_cast<long double>(at.a));
        case GeneratorAtom::Kind::Linear: {
            long double v = at.a * n + at.b;
            if (!(v > 0)) throw std::invalid_argument("generator: nonpositive linear value");
            return std::log(v);
        }
        case GeneratorAtom::Kind::Constant:
            if (!(at.a > 0)) throw std::invalid_argument("generator: nonpositive constant");
            return std::log(static_cast<long double>(at.a));
    }
    throw std::logic_error("unreachable");
}

GrowthSequence make_generated(const GeneratorSpec& spec, int max_index) {
    auto num = spec.num;
    auto den = spec.den;
    return GrowthSequence(spec.label,
                          [num, den](int n) {
                              long double l = 0.0L;
                              for (const auto& at : num) l += atom_log(at, n);
                              for (const auto& at : den) l -= atom_log(at, n);
                              return l;
                          },
                          max_index);
}

GrowthVerdict precedes_prefix(const GrowthSequence& x, const GrowthSequence& y,
                              const std::vector<double>& radii, int N, const Config& cfg) {
    if (radii.empty()) throw std::invalid_argument("precedes_prefix: empty radii");
    if (N > x.max_index() || N > y.max_index())
        throw std::invalid_argument("precedes_prefix: N exceeds sequence length");

    GrowthVerdict v;
    v.probe_radii = radii;
    v.prefix_length = N;

    const long double log_thresh = std::log(static_cast<long double>(cfg.divergence_threshold));
    bool all_hold = true;
    bool any_inconclusive = false;

    for (double r : radii) {
        if (!(r > 0)) throw std::invalid_argument("precedes_prefix: nonpositive radius");
        RadiusProbe probe;
        probe.r = r;
        const long double lr = std::log(static_cast<long double>(r));
        std::vector<long double> u(N + 1);
        for (int n = 0; n <= N; ++n) u[n] = n * lr + x.log_term(n) - y.log_term(n);

        // tail suprema, reported for audit
        probe.tail_sup.resize(N + 1);
        long double run = -std::numeric_limits<long double>::infinity();
        for (int n = N; n >= 0; --n) {
            run = std::max(run, u[n]);
            probe.tail_sup[n] = static_cast<double>(std::exp(run));
        }

        // divergence witness, anchored at the end of the prefix: the tail value
        // exceeds the threshold and the last W values are strictly increasing
        // (a transient mid-prefix peak that has already turned around is not
        // divergence evidence). The reported index is the start of the final
        // excursion above the threshold.
        int W = cfg.divergence_window;
        probe.relation = Relation::Inconclusive;
        if (N + 1 >= W && u[N] > log_thresh) {
            bool increasing = true;
            for (int k = N - W + 1; k < N; ++k)
                if (!(u[k] < u[k + 1])) { increasing = false; break; }
            if (increasing) {
                int n0 = N;
                while (n0 > 0 && u[n0 - 1] > log_thresh) --n0;
                probe.relation = Relation::ViolatedAt;
                probe.witness_index = n0;
                probe.witness_value = static_cast<double>(std::exp(u[n0]));
            }
        }
        if (probe.relation != Relation::ViolatedAt) {
            // decay evidence: strictly decreasing last W values, all < 1
            int W2 = cfg.decay_window;
            bool decaying = N + 1 >= W2;
            for (int k = N - W2 + 1; decaying && k <= N; ++k) {
                if (!(u[k] < 0.0L)) decaying = false;
                if (k < N && !(u[k] > u[k + 1])) decaying = false;
            }
            probe.relation = decaying ? Relation::HoldsOnPrefix : Relation::Inconclusive;
        }

        if (probe.relation == Relation::ViolatedAt && v.relation != Relation::ViolatedAt) {
            v.relation = Relation::ViolatedAt;
            v.violated_r = r;
            v.violated_n = probe.witness_index;
        }
        if (probe.relation != Relation::HoldsOnPrefix) all_hold = false;
        if (probe.relation == Relation::Inconclusive) any_inconclusive = true;
        v.probes.push_back(std::move(probe));
    }

    if (v.relation != Relation::ViolatedAt)
        v.relation = all_hold ? Relation::HoldsOnPrefix
                              : (any_inconclusive ? Relation::Inconclusive : Relation::HoldsOnPrefix);
    return v;
}

std::vector<double> nth_root_profile(const GrowthSequence& x, const GrowthSequence& y, int N) {
    if (N < 1) throw std::invalid_argument("nth_root_profile: N >= 1 required");
    std::vector<double> out;
    out.reserve(N);
    for (int n = 1; n <= N; ++n) {
        long double l = (x.log_term(n) - y.log_term(n)) / n;
        out.push_back(static_cast<double>(std::exp(l)));
    }
    return out;
}

double radius_estimate(const GrowthSequence& coeffs, int N, const Config& cfg) {
    if (N < 8) throw std::invalid_argument("radius_estimate: N >= 8 required");
    long double best = -std::numeric_limits<long double>::infinity();
    for (int n = N / 2; n <= N; ++n) {
        if (n < 1) continue;
        best = std::max(best, coeffs.log_term(n) / n);
    }
    double root = static_cast<double>(std::exp(best));
    if (root < cfg.root_floor) return std::numeric_limits<double>::infinity();
    return 1.0 / root;
}

EntireVerdict entire_test(const std::vector<double>& norms, int parity, int N, const Config& cfg) {
    if (parity != 0 && parity != 1) throw std::invalid_argument("entire_test: parity must be 0 or 1");
    if (static_cast<int>(norms.size()) <= N) throw std::invalid_argument("entire_test: norms too short");
    std::vector<long double> lognorm(N + 1);
    for (int n = 0; n <= N; ++n) {
        if (!(norms[n] > 0.0)) throw std::invalid_argument("entire_test: nonpositive norm");
        lognorm[n] = std::log(static_cast<long double>(norms[n]));
    }
    GrowthSequence coeffs(
        "entire-coefficients",
        [lognorm, parity](int n) {
            return std::lgamma(static_cast<long double>(2 * n + parity) + 1.0L) + lognorm.at(n) -
                   std::lgamma(static_cast<long double>(n) + 1.0L);
        },
        N);
    EntireVerdict verdict;
    verdict.radius = radius_estimate(coeffs, N, cfg);
    verdict.entire_consistent =
        is_infinite_radius(verdict.radius) || verdict.radius > cfg.entire_threshold;
    verdict.coefficient_roots.reserve(N);
    for (int n = 1; n <= N; ++n)
        verdict.coefficient_roots.push_back(static_cast<double>(std::exp(coeffs.log_term(n) / n)));
    return verdict;
}

}  // namespace asymcyc::growth
