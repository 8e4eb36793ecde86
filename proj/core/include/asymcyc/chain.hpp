#pragma once

#include <map>
#include <utility>

#include "asymcyc/rational.hpp"

namespace asymcyc {

/// Finitely supported map Key -> Rational. Zero coefficients are never stored,
/// so operator== is support-wise exact equality. The ordered map keeps
/// iteration (and therefore serialization) deterministic.
template <class Key>
class FreeChain {
public:
    using map_type = std::map<Key, Rational>;

    FreeChain() = default;

    static FreeChain basis(Key k, Rational c = Rational(1)) {
        FreeChain ch;
        ch.add(std::move(k), std::move(c));
        return ch;
    }

    void add(Key k, Rational c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(k), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    void add_scaled(const FreeChain& other, const Rational& s) {
        if (s == 0) return;
        for (const auto& [k, c] : other.terms_) add(k, c * s);
    }

    FreeChain& operator+=(const FreeChain& o) {
        add_scaled(o, Rational(1));
        return *this;
    }
    FreeChain& operator-=(const FreeChain& o) {
        add_scaled(o, Rational(-1));
        return *this;
    }
    friend FreeChain operator+(FreeChain a, const FreeChain& b) { return a += b; }
    friend FreeChain operator-(FreeChain a, const FreeChain& b) { return a -= b; }

    FreeChain scaled(const Rational& s) const {
        FreeChain r;
        if (s == 0) return r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }
    const map_type& terms() const { return terms_; }

    Rational coefficient(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// l1 norm on coefficients, each basis element weighted 1.
    Rational l1_norm() const {
        Rational s(0);
        for (const auto& [k, c] : terms_) s += rat_abs(c);
        return s;
    }

    Rational linf_norm() const {
        Rational m(0);
        for (const auto& [k, c] : terms_) {
            Rational a = rat_abs(c);
            if (a > m) m = a;
        }
        return m;
    }

    friend bool operator==(const FreeChain& a, const FreeChain& b) { return a.terms_ == b.terms_; }

private:
    map_type terms_;
};

}  // namespace asymcyc
