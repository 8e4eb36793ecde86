#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace asymcyc::growth {

/// A positive real sequence (x_n)_{n>=0} carried in log space. Closed-form
/// generators re-evaluate deterministically; tabulated sequences store their
/// terms. Terms are strictly positive by construction (enforced on input).
class GrowthSequence {
public:
    GrowthSequence(std::string label, std::function<long double(int)> log_term, int max_index);
    static GrowthSequence tabulated(std::string label, const std::vector<double>& terms);

    const std::string& label() const { return label_; }
    int max_index() const { return max_index_; }

    long double log_term(int n) const;
    double term(int n) const;

    /// pointwise transform x_n -> x_n * lambda^n * n^a (absorption tests)
    GrowthSequence absorbed(double lambda, double a) const;

private:
    std::string label_;
    std::function<long double(int)> log_term_;
    int max_index_ = 0;
};

// -- closed-form generator family -------------------------------------------
// term(n) = prod(numerator atoms) / prod(denominator atoms), with atoms
//   factorial(scale, shift)  -> (scale*n + shift)!
//   power(base)              -> base^n
//   linear(scale, shift)     -> (scale*n + shift)
//   constant(value)          -> value
struct GeneratorAtom {
    enum class Kind { Factorial, Power, Linear, Constant } kind;
    double a = 1.0;  // scale or base or value
    double b = 0.0;  // shift
};
struct GeneratorSpec {
    std::string label;
    std::vector<GeneratorAtom> num;
    std::vector<GeneratorAtom> den;
};
GrowthSequence make_generated(const GeneratorSpec& spec, int max_index);

struct Config {
    double divergence_threshold = 1e6;  // violated_at fires above this ...
    int divergence_window = 5;          // ... with strictly increasing last-W values
    int decay_window = 5;               // holds requires strictly decreasing last-W, all < 1
    double root_floor = 0.1;            // radius_estimate returns +inf below this
    double entire_threshold = 1e3;      // entire-consistent iff estimate exceeds this
};

enum class Relation { HoldsOnPrefix, ViolatedAt, Inconclusive };

struct RadiusProbe {
    double r;
    Relation relation;
    int witness_index = -1;        // for ViolatedAt
    double witness_value = 0.0;    // r^n x_n / y_n at the witness
    std::vector<double> tail_sup;  // sup_{m>=n} r^m x_m/y_m for n = 0..N
};

struct GrowthVerdict {
    Relation relation = Relation::Inconclusive;
    double violated_r = 0.0;
    int violated_n = -1;
    std::vector<double> probe_radii;
    int prefix_length = 0;
    std::vector<RadiusProbe> probes;
};

/// Finite-prefix surrogate for (x_n) < (y_n): checks r^n x_n / y_n for each
/// probe radius. Never claims a limit; the verdict names the prefix.
GrowthVerdict precedes_prefix(const GrowthSequence& x, const GrowthSequence& y,
                              const std::vector<double>& radii, int N, const Config& cfg = {});

/// ((x_n/y_n)^{1/n})_{1<=n<=N}, computed in log space.
std::vector<double> nth_root_profile(const GrowthSequence& x, const GrowthSequence& y, int N);

/// 1 / (max of coeffs_n^{1/n} over the tail n in [N/2, N]); +infinity when that
/// max falls below cfg.root_floor. Requires N >= 8.
double radius_estimate(const GrowthSequence& coeffs, int N, const Config& cfg = {});

inline bool is_infinite_radius(double r) { return r == std::numeric_limits<double>::infinity(); }

struct EntireVerdict {
    bool entire_consistent = false;
    double radius = 0.0;
    std::vector<double> coefficient_roots;  // ((2n+i)! |phi| / n!)^{1/n} profile
};

/// Entire test on a truncated norm profile: norms[k] = |phi_{2k+parity}|.
/// Weighted coefficients (2n+parity)! * norms[n] / n! feed radius_estimate.
EntireVerdict entire_test(const std::vector<double>& norms, int parity, int N, const Config& cfg = {});

}  // namespace asymcyc::growth
