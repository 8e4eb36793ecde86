#include "asymcyc/charmaps.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace asymcyc::charm {

std::vector<Shuffle> shuffles(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("shuffles: negative block size");
    std::vector<Shuffle> out;
    const int n = p + q;
    std::vector<int> first(p);
    for (int i = 0; i < p; ++i) first[i] = i;
    auto emit = [&]() {
        Shuffle sh;
        sh.first = first;
        std::vector<bool> used(n, false);
        for (int a : first) used[a] = true;
        for (int b = 0; b < n; ++b)
            if (!used[b]) sh.second.push_back(b);
        // sign of [first..., second...]: inversions only occur across blocks
        int inv = 0;
        for (int a : first)
            for (int b : sh.second)
                if (a > b) ++inv;
        sh.sign = (inv % 2 == 0) ? 1 : -1;
        out.push_back(std::move(sh));
    };
    if (p == 0) {
        Shuffle sh;
        for (int b = 0; b < n; ++b) sh.second.push_back(b);
        sh.sign = 1;
        out.push_back(std::move(sh));
        return out;
    }
    // lexicographic enumeration of p-subsets of {0..n-1}
    while (true) {
        emit();
        int i = p - 1;
        while (i >= 0 && first[i] == n - p + i) --i;
        if (i < 0) break;
        ++first[i];
        for (int k = i + 1; k < p; ++k) first[k] = first[k - 1] + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hopf words
// ---------------------------------------------------------------------------

int HopfWord::prim_count() const {
    int c = 0;
    for (auto l : letters)
        if (l == Letter::Prim) ++c;
    return c;
}

std::string HopfWord::str() const {
    if (letters.empty()) return "()";
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) s += "(x)";
        s += (letters[i] == Letter::Unit) ? "1" : "X";
    }
    return s;
}

HopfWord all_unit_word(int length) {
    HopfWord w;
    w.letters.assign(static_cast<std::size_t>(length), Letter::Unit);
    return w;
}

HopfWord eta_word(int length) {
    HopfWord w = all_unit_word(length);
    if (length >= 1) w.letters[0] = Letter::Prim;
    return w;
}

WordChain HopfWordModule::coface(int n, int i, const WordChain& x) const {
    if (i < 0 || i > n + 1) throw std::out_of_range("HopfWordModule::coface: index");
    WordChain out;
    for (const auto& [w, c] : x.terms()) {
        if (w.degree() != n) throw std::invalid_argument("HopfWordModule::coface: degree mismatch");
        if (i == 0) {
            HopfWord v;
            v.letters.reserve(n + 1);
            v.letters.push_back(Letter::Unit);
            v.letters.insert(v.letters.end(), w.letters.begin(), w.letters.end());
            out.add(std::move(v), c);
        } else if (i == n + 1) {
            HopfWord v = w;
            v.letters.push_back(Letter::Unit);  // sigma = 1
            out.add(std::move(v), c);
        } else {
            // comultiply letter i (1-based): 1 -> 1(x)1; X -> X(x)1 + 1(x)X
            Letter li = w.letters[static_cast<std::size_t>(i - 1)];
            auto make = [&](Letter a, Letter b) {
                HopfWord v;
                v.letters.reserve(n + 1);
                v.letters.assign(w.letters.begin(), w.letters.begin() + (i - 1));
                v.letters.push_back(a);
                v.letters.push_back(b);
                v.letters.insert(v.letters.end(), w.letters.begin() + i, w.letters.end());
                return v;
            };
            if (li == Letter::Unit) {
                out.add(make(Letter::Unit, Letter::Unit), c);
            } else {
                out.add(make(Letter::Prim, Letter::Unit), c);
                out.add(make(Letter::Unit, Letter::Prim), c);
            }
        }
    }
    return out;
}

WordChain HopfWordModule::codegeneracy(int n, int j, const WordChain& x) const {
    if (j < 0 || j > n - 1) throw std::out_of_range("HopfWordModule::codegeneracy: index");
    WordChain out;
    for (const auto& [w, c] : x.terms()) {
        Letter lj = w.letters[static_cast<std::size_t>(j)];
        if (lj == Letter::Prim) continue;  // eps(X) = 0
        HopfWord v;
        v.letters.reserve(n - 1);
        for (int k = 0; k < n; ++k)
            if (k != j) v.letters.push_back(w.letters[static_cast<std::size_t>(k)]);
        out.add(std::move(v), c);
    }
    return out;
}

WordChain HopfWordModule::cyclic(int n, const WordChain& x) const {
    WordChain out;
    for (const auto& [w, c] : x.terms()) {
        if (w.prim_count() > 1)
            throw std::logic_error(
                "HopfWordModule::cyclic: implemented for words with at most one X "
                "(the {1,X} alphabet is not closed otherwise)");
        // t(h^1 (x) ... (x) h^n) = Delta^{n-1}(S(h^1)) . (h^2 (x) ... (x) h^n (x) 1)
        HopfWord rot;
        rot.letters.assign(w.letters.begin() + 1, w.letters.end());
        rot.letters.push_back(Letter::Unit);
        if (w.letters[0] == Letter::Unit) {
            out.add(std::move(rot), c);
        } else {
            // S(X) = -X, Delta^{n-1}(X) = sum of X in one slot; X.1 = X, X.X leaves
            // the alphabet (guarded above: rot is all units when prim_count == 1)
            for (int slot = 0; slot < n; ++slot) {
                HopfWord v = rot;
                v.letters[static_cast<std::size_t>(slot)] = Letter::Prim;
                out.add(std::move(v), -c);
            }
        }
    }
    return out;
}

WordChain HopfWordModule::sample(int n, std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> coin(0, n);
    HopfWord w = all_unit_word(n);
    int pos = coin(rng);
    if (pos < n) w.letters[static_cast<std::size_t>(pos)] = Letter::Prim;
    std::uniform_int_distribution<int> coeffd(1, 3);
    return WordChain::basis(std::move(w), Rational(coeffd(rng)));
}

std::string HopfWordModule::describe(int, const WordChain& x) const {
    std::ostringstream os;
    bool fst = true;
    for (const auto& [w, c] : x.terms()) {
        if (!fst) os << " + ";
        os << rat_str(c) << "*" << w.str();
        fst = false;
    }
    return fst ? "0" : os.str();
}

WordChain fundamental_power(int r) {
    if (r < 0) throw std::invalid_argument("fundamental_power: r >= 0");
    HopfWordModule m;
    WordChain acc = WordChain::basis(all_unit_word(0));
    int deg = 0;
    for (int k = 0; k < r; ++k) {
        WordChain eye = WordChain::basis(all_unit_word(2));
        WordChain next;
        for (auto& term : cup_shuffle_terms(m, deg, acc, m, 2, eye)) {
            // all-unit words stay all-unit under every coface: the cup collapses
            // to a signed multiplicity on the single word of length deg+2
            WordChain prod;
            for (const auto& [w1, c1] : term.left.terms())
                for (const auto& [w2, c2] : term.right.terms()) {
                    if (w1.prim_count() || w2.prim_count())
                        throw std::logic_error("fundamental_power: unexpected primitive letter");
                    prod.add(all_unit_word(deg + 2), c1 * c2);
                }
            next.add_scaled(prod, term.coeff);
        }
        acc = std::move(next);
        deg += 2;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// alpha weights and expansions
// ---------------------------------------------------------------------------

Rational alpha(int r) {
    if (r < 0) throw std::invalid_argument("alpha: r >= 0");
    if (r == 0) return Rational(1);
    Rational a(BigInt(1), factorial_big(static_cast<unsigned>(2 * r)));
    a -= Rational(BigInt(1), factorial_big(static_cast<unsigned>(2 * r - 2)));
    return a;
}

Rational alpha_partial_sum(int n) {
    Rational s(0);
    for (int r = 0; r <= n; ++r) s += alpha(r);
    return s;
}

Rational IotaExpansion::weight_sum() const {
    Rational s(0);
    for (const auto& t : terms) s += t.weight;
    return s;
}

std::vector<IotaExpansion> iota_expand(const std::vector<splx::SimplexChain>& phi_even_prefix,
                                       int N) {
    if (static_cast<int>(phi_even_prefix.size()) <= N)
        throw std::invalid_argument("iota_expand: prefix too short");
    std::vector<IotaExpansion> out;
    for (int n = 0; n <= N; ++n) {
        IotaExpansion e;
        e.degree = 2 * n;
        for (int r = 0; r <= n; ++r)
            e.terms.push_back({r, alpha(r), phi_even_prefix[static_cast<std::size_t>(n - r)]});
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<EtaTerm> eta_expand(const std::vector<splx::SimplexChain>& phi_prefix, int parity) {
    std::vector<EtaTerm> out;
    for (std::size_t k = 0; k < phi_prefix.size(); ++k) {
        EtaTerm t;
        t.degree = parity + 2 * static_cast<int>(k) + 1;
        t.word = eta_word(1);
        t.chain = phi_prefix[k];
        out.push_back(std::move(t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// chi evaluation
// ---------------------------------------------------------------------------

fred::cplx chi_evaluate(const fred::HeatCache& heat, const Eigen::VectorXd* gamma_diag,
                        const HopfWord& word, const splx::SimplexPoint& point,
                        std::span<const fred::Mat> args, ChiFlavor flavor) {
    const int n = word.degree();
    if (point.degree() != n)
        throw std::invalid_argument("chi_evaluate: word length must equal point degree");
    if (static_cast<int>(args.size()) != n + 1)
        throw std::invalid_argument("chi_evaluate: expected n+1 algebra arguments");
    if (!point.monotone()) throw std::invalid_argument("chi_evaluate: non-monotone point");
    const int d = heat.dim();
    for (const auto& a : args)
        if (a.rows() != d || a.cols() != d)
            throw std::invalid_argument("chi_evaluate: dimension mismatch");
    if ((flavor == ChiFlavor::Even) != (gamma_diag != nullptr))
        throw std::invalid_argument("chi_evaluate: grading must accompany the even flavor");

    // gap times t_1, t_2 - t_1, ..., 1 - t_n (exact rationals -> double)
    std::vector<double> gaps(static_cast<std::size_t>(n) + 1);
    Rational prev(0);
    for (int k = 0; k < n; ++k) {
        gaps[static_cast<std::size_t>(k)] = to_double(point.t[static_cast<std::size_t>(k)] - prev);
        prev = point.t[static_cast<std::size_t>(k)];
    }
    gaps[static_cast<std::size_t>(n)] = to_double(Rational(1) - prev);

    fred::Mat prod = args[0] * heat.heat(gaps[0]);
    for (int k = 1; k <= n; ++k) {
        const fred::Mat& a = args[static_cast<std::size_t>(k)];
        fred::Mat acted = (word.letters[static_cast<std::size_t>(k - 1)] == Letter::Unit)
                              ? a
                              : fred::commutator(heat.dirac(), a);
        prod = prod * acted * heat.heat(gaps[static_cast<std::size_t>(k)]);
    }
    if (flavor == ChiFlavor::Odd) return prod.trace();
    fred::cplx s{};
    for (int i = 0; i < d; ++i) s += (*gamma_diag)(i)*prod(i, i);
    return s;
}

fred::cplx chi_evaluate(const fred::EvenFredholmModule& fm, const HopfWord& word,
                        const splx::SimplexPoint& point, std::span<const fred::Mat> args) {
    Eigen::VectorXd g = fm.gamma_diag();
    return chi_evaluate(fm.heat_cache(), &g, word, point, args, ChiFlavor::Even);
}

fred::cplx chi_evaluate(const fred::OddFredholmModule& om, const HopfWord& word,
                        const splx::SimplexPoint& point, std::span<const fred::Mat> args) {
    return chi_evaluate(om.heat_cache(), nullptr, word, point, args, ChiFlavor::Odd);
}

}  // namespace asymcyc::charm
