#pragma once

#include <map>
#include <span>

#include "groebner.hpp"

namespace extdiv {

/// Strictly increasing tuple of 1-based indices labeling a basis element of
/// an exterior power. The empty tuple labels the scalar 1.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> idx) : idx_(std::move(idx)) {
        for (std::size_t i = 0; i < idx_.size(); ++i) {
            if (idx_[i] < 1) throw std::invalid_argument("multiindex entries are 1-based");
            if (i > 0 && idx_[i - 1] >= idx_[i])
                throw std::invalid_argument("multiindex not strictly increasing");
        }
    }
    MultiIndex(std::initializer_list<int> idx) : MultiIndex(std::vector<int>(idx)) {}

    std::size_t length() const { return idx_.size(); }
    int operator[](std::size_t i) const { return idx_[i]; }
    const std::vector<int>& indices() const { return idx_; }
    bool empty() const { return idx_.empty(); }
    int max_index() const { return idx_.empty() ? 0 : idx_.back(); }

    bool contains(int i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

    MultiIndex erased(std::size_t at) const {
        std::vector<int> v = idx_;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(at));
        return MultiIndex(std::move(v));
    }

    auto operator<=>(const MultiIndex&) const = default;

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < idx_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(idx_[i]);
        }
        return s + "]";
    }

private:
    std::vector<int> idx_;
};

/// Merge two strictly increasing index tuples. Returns the merged tuple and
/// the sign (-1)^inversions, or sign 0 when an index repeats.
inline std::pair<MultiIndex, int> merge_indices(const MultiIndex& a, const MultiIndex& b) {
    std::vector<int> merged;
    merged.reserve(a.length() + b.length());
    std::size_t i = 0, j = 0;
    long inversions = 0;
    while (i < a.length() && j < b.length()) {
        if (a[i] == b[j]) return {MultiIndex{}, 0};
        if (a[i] < b[j]) {
            merged.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a
            inversions += static_cast<long>(a.length() - i);
            merged.push_back(b[j++]);
        }
    }
    while (i < a.length()) merged.push_back(a[i++]);
    while (j < b.length()) merged.push_back(b[j++]);
    return {MultiIndex(std::move(merged)), inversions % 2 == 0 ? 1 : -1};
}

/// All strictly monotone multiindices of length q over 1..m, lexicographically.
inline std::vector<MultiIndex> multiindices(std::size_t q, std::size_t m) {
    std::vector<MultiIndex> out;
    if (q > m) return out;
    std::vector<int> cur(q);
    for (std::size_t i = 0; i < q; ++i) cur[i] = static_cast<int>(i + 1);
    while (true) {
        out.push_back(MultiIndex(cur));
        // next combination
        std::size_t i = q;
        while (i > 0) {
            --i;
            if (cur[i] < static_cast<int>(m - (q - 1 - i))) break;
            if (i == 0) return out;
        }
        if (q == 0) return out;
        ++cur[i];
        for (std::size_t j = i + 1; j < q; ++j) cur[j] = cur[j - 1] + 1;
    }
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// Element of an exterior power of R^m: a finite map from strictly monotone
/// multiindices to nonzero polynomial coefficients. Degrees outside 0..m have
/// no terms.
class ExtElement {
public:
    ExtElement() = default;
    ExtElement(Ring ring, std::size_t rank_m, int degree)
        : ring_(std::move(ring)), rank_(rank_m), degree_(degree) {}

    static ExtElement scalar(const Ring& ring, std::size_t rank_m, Poly value) {
        ExtElement e(ring, rank_m, 0);
        e.set_term(MultiIndex{}, std::move(value));
        return e;
    }
    static ExtElement basis(const Ring& ring, std::size_t rank_m, MultiIndex idx) {
        ExtElement e(ring, rank_m, static_cast<int>(idx.length()));
        e.set_term(std::move(idx), Poly::constant(ring, 1));
        return e;
    }

    const Ring& ring() const { return ring_; }
    std::size_t rank_m() const { return rank_; }
    int degree() const { return degree_; }
    const std::map<MultiIndex, Poly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Poly coeff(const MultiIndex& idx) const {
        auto it = terms_.find(idx);
        return it == terms_.end() ? Poly(ring_) : it->second;
    }

    void set_term(MultiIndex idx, Poly c) {
        if (static_cast<int>(idx.length()) != degree_)
            throw std::invalid_argument("term length does not match element degree");
        if (idx.max_index() > static_cast<int>(rank_))
            throw std::invalid_argument("multiindex exceeds module rank");
        if (c.is_zero())
            terms_.erase(idx);
        else
            terms_[std::move(idx)] = std::move(c);
    }

    ExtElement operator+(const ExtElement& o) const { return combined(o, 1); }
    ExtElement operator-(const ExtElement& o) const { return combined(o, -1); }
    ExtElement operator-() const {
        ExtElement r(*this);
        for (auto& [k, v] : r.terms_) v = -v;
        return r;
    }
    ExtElement operator*(const Poly& p) const {
        ExtElement r(ring_, rank_, degree_);
        for (const auto& [k, v] : terms_) r.set_term(k, v * p);
        return r;
    }
    ExtElement operator*(const Rational& c) const {
        ExtElement r(ring_, rank_, degree_);
        for (const auto& [k, v] : terms_) r.set_term(k, v * c);
        return r;
    }

    bool operator==(const ExtElement& o) const {
        if (rank_ != o.rank_) return false;
        if (terms_.empty() && o.terms_.empty()) return true;
        return degree_ == o.degree_ && terms_ == o.terms_;
    }

    /// Coordinates in the lexicographic multiindex basis of this degree.
    FreeVector flatten() const {
        auto idxs = multiindices(static_cast<std::size_t>(std::max(degree_, 0)), rank_);
        if (degree_ < 0 || degree_ > static_cast<int>(rank_)) return FreeVector(ring_, 0);
        FreeVector v(ring_, idxs.size());
        for (std::size_t i = 0; i < idxs.size(); ++i) v[i] = coeff(idxs[i]);
        return v;
    }
    static ExtElement unflatten(const Ring& ring, std::size_t rank_m, int degree,
                                const FreeVector& v) {
        ExtElement e(ring, rank_m, degree);
        auto idxs = multiindices(static_cast<std::size_t>(degree), rank_m);
        if (v.rank() != idxs.size()) throw std::invalid_argument("unflatten: rank mismatch");
        for (std::size_t i = 0; i < idxs.size(); ++i)
            if (!v[i].is_zero()) e.set_term(idxs[i], v[i]);
        return e;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [idx, c] : terms_) {
            if (!first) s += " + ";
            first = false;
            if (idx.empty()) {
                s += c.str();
                continue;
            }
            if (c.is_one()) {
                s += "e" + idx.str();
            } else if (c.terms().size() == 1) {
                s += c.str() + "*e" + idx.str();
            } else {
                s += "(" + c.str() + ")*e" + idx.str();
            }
        }
        return s;
    }

private:
    ExtElement combined(const ExtElement& o, int sign) const {
        if (rank_ != o.rank_) throw std::invalid_argument("exterior rank mismatch");
        if (degree_ != o.degree_ && !is_zero() && !o.is_zero())
            throw std::invalid_argument("exterior degree mismatch");
        ExtElement r(ring_ ? ring_ : o.ring_, rank_, is_zero() ? o.degree_ : degree_);
        for (const auto& [k, v] : terms_)
            if (static_cast<int>(k.length()) == r.degree_) r.set_term(k, v);
        for (const auto& [k, v] : o.terms_) {
            Poly s = r.coeff(k) + (sign > 0 ? v : -v);
            r.set_term(k, std::move(s));
        }
        return r;
    }

    Ring ring_;
    std::size_t rank_ = 0;
    int degree_ = 0;
    std::map<MultiIndex, Poly> terms_;
};

inline ExtElement operator*(const Poly& p, const ExtElement& e) { return e * p; }

/// Exterior product. Degrees add; a degree above the module rank gives the
/// zero element of that degree.
inline ExtElement wedge(const ExtElement& a, const ExtElement& b) {
    if (a.rank_m() != b.rank_m()) throw std::invalid_argument("wedge: rank mismatch");
    int degree = a.degree() + b.degree();
    ExtElement r(a.ring() ? a.ring() : b.ring(), a.rank_m(), degree);
    if (degree > static_cast<int>(a.rank_m())) return r;
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            auto [merged, sign] = merge_indices(ia, ib);
            if (sign == 0) continue;
            Poly c = r.coeff(merged) + ca * cb * Rational(sign);
            r.set_term(merged, std::move(c));
        }
    }
    return r;
}

/// Element of the dual module, acting on basis vectors by <g, e_i> = g_i.
class DualVector {
public:
    DualVector(Ring ring, std::vector<Poly> entries)
        : ring_(std::move(ring)), entries_(std::move(entries)) {}
    DualVector(Ring ring, std::size_t m) : ring_(std::move(ring)), entries_(m, Poly(ring_)) {}

    static DualVector dual_basis(const Ring& ring, std::size_t m, std::size_t i) {
        DualVector d(ring, m);
        d.entries_[i - 1] = Poly::constant(ring, 1);  // 1-based like multiindices
        return d;
    }

    std::size_t rank_m() const { return entries_.size(); }
    const Poly& operator[](std::size_t i) const { return entries_[i]; }
    Poly& operator[](std::size_t i) { return entries_[i]; }
    const Ring& ring() const { return ring_; }
    const std::vector<Poly>& entries() const { return entries_; }

    // pairing with a 1-based basis index
    const Poly& on_basis(int i) const { return entries_[static_cast<std::size_t>(i - 1)]; }

private:
    Ring ring_;
    std::vector<Poly> entries_;
};

/// Interior product (contraction) by a dual vector: a degree-lowering
/// anti-derivation.
inline ExtElement interior(const DualVector& alpha, const ExtElement& eta) {
    if (eta.degree() < 1) throw std::invalid_argument("cannot contract scalar");
    if (alpha.rank_m() != eta.rank_m()) throw std::invalid_argument("interior: rank mismatch");
    ExtElement r(eta.ring(), eta.rank_m(), eta.degree() - 1);
    for (const auto& [idx, c] : eta.terms()) {
        for (std::size_t t = 0; t < idx.length(); ++t) {
            const Poly& pairing = alpha.on_basis(idx[t]);
            if (pairing.is_zero()) continue;
            int sign = t % 2 == 0 ? 1 : -1;
            MultiIndex rest = idx.erased(t);
            Poly v = r.coeff(rest) + c * pairing * Rational(sign);
            r.set_term(std::move(rest), std::move(v));
        }
    }
    return r;
}

/// The tuple omega_1,...,omega_k of module elements with the cached product
/// Omega = omega_1 ^ ... ^ omega_k and its coefficient ideal.
class OmegaSystem {
public:
    OmegaSystem(Ring ring, std::size_t m, std::vector<ExtElement> omegas)
        : ring_(std::move(ring)), m_(m), omegas_(std::move(omegas)) {
        if (omegas_.empty()) throw std::invalid_argument("empty omega system");
        if (omegas_.size() > m_) throw std::invalid_argument("more omegas than the module rank");
        for (const auto& w : omegas_) {
            if (w.rank_m() != m_) throw std::invalid_argument("omega rank mismatch");
            if (w.degree() != 1 && !w.is_zero())
                throw std::invalid_argument("omegas must have degree 1");
        }
    }

    const Ring& ring() const { return ring_; }
    std::size_t m() const { return m_; }
    std::size_t k() const { return omegas_.size(); }
    const std::vector<ExtElement>& omegas() const { return omegas_; }
    const ExtElement& omega(std::size_t i) const { return omegas_[i]; }  // 0-based

    const ExtElement& Omega() const {
        return omega_.get([this] {
            ExtElement prod = ExtElement::scalar(ring_, m_, Poly::constant(ring_, 1));
            for (const auto& w : omegas_) prod = wedge(prod, w);
            return prod;
        });
    }

    const Ideal& coefficient_ideal_of_Omega() const {
        return iomega_.get([this] { return coefficient_ideal(Omega()); });
    }

    bool omega_is_zero() const { return Omega().is_zero(); }

    /// Ideal generated by the stored coefficients of an exterior element.
    static Ideal coefficient_ideal(const ExtElement& eta) {
        std::vector<Poly> gens;
        for (const auto& [idx, c] : eta.terms()) gens.push_back(c);
        return Ideal(eta.ring(), std::move(gens));
    }

private:
    Ring ring_;
    std::size_t m_;
    std::vector<ExtElement> omegas_;
    detail::Lazy<ExtElement> omega_;
    detail::Lazy<Ideal> iomega_;
};

inline Ideal coefficient_ideal(const ExtElement& eta) {
    return OmegaSystem::coefficient_ideal(eta);
}

/// omega_J = omega_{j_1} ^ ... ^ omega_{j_r}; the empty selection gives 1.
inline ExtElement omega_J(const OmegaSystem& sys, const MultiIndex& J) {
    if (J.max_index() > static_cast<int>(sys.k()))
        throw std::invalid_argument("omega_J: index outside 1..k");
    ExtElement prod = ExtElement::scalar(sys.ring(), sys.m(), Poly::constant(sys.ring(), 1));
    for (std::size_t t = 0; t < J.length(); ++t)
        prod = wedge(prod, sys.omega(static_cast<std::size_t>(J[t] - 1)));
    return prod;
}

/// Complement J' of J inside {1..k} with the sign making e_J ^ e_J' equal
/// sign * e_{1..k}.
inline std::pair<MultiIndex, int> multiindex_complement(const MultiIndex& J, std::size_t k) {
    if (J.max_index() > static_cast<int>(k))
        throw std::invalid_argument("complement: index outside 1..k");
    std::vector<int> rest;
    for (int i = 1; i <= static_cast<int>(k); ++i)
        if (!J.contains(i)) rest.push_back(i);
    MultiIndex Jp(std::move(rest));
    auto [merged, sign] = merge_indices(J, Jp);
    return {std::move(Jp), sign};
}

}  // namespace extdiv
