#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace extdiv {

enum class MonomialOrder { grevlex, lex };

/// Exponent vector over a fixed variable list. The ambient ring fixes the length.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}

    std::size_t nvars() const { return exps_.size(); }
    unsigned operator[](std::size_t i) const { return exps_[i]; }
    unsigned& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<unsigned>& exponents() const { return exps_; }

    unsigned degree() const {
        return std::accumulate(exps_.begin(), exps_.end(), 0u);
    }
    bool is_one() const {
        return std::all_of(exps_.begin(), exps_.end(), [](unsigned e) { return e == 0; });
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
        return r;
    }
    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > o.exps_[i]) return false;
        return true;
    }
    // Quotient o / this; caller guarantees divisibility.
    Monomial quotient_of(const Monomial& o) const {
        Monomial r(o);
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (exps_[i] > r.exps_[i]) throw std::invalid_argument("monomial quotient: not divisible");
            r.exps_[i] -= exps_[i];
        }
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
        return r;
    }
    friend Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
        return r;
    }
    friend bool coprime(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < a.exps_.size(); ++i)
            if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
        return true;
    }

    bool operator==(const Monomial& o) const = default;

private:
    std::vector<unsigned> exps_;
};

// Returns <0, 0, >0 like a three-way comparison, with "greater" = larger monomial.
inline int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
    switch (order) {
        case MonomialOrder::lex: {
            for (std::size_t i = 0; i < a.nvars(); ++i) {
                if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
            }
            return 0;
        }
        case MonomialOrder::grevlex: {
            unsigned da = a.degree(), db = b.degree();
            if (da != db) return da > db ? 1 : -1;
            // Equal degree: smaller exponent in the last differing variable wins.
            for (std::size_t i = a.nvars(); i-- > 0;) {
                if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
            }
            return 0;
        }
    }
    return 0;
}

}  // namespace extdiv
