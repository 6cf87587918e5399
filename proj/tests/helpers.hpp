#pragma once

#include <extdiv/exterior.hpp>
#include <extdiv/ring.hpp>

#include <random>
#include <vector>

// Deterministic generation utilities shared by the test suites. All draws go
// through Rng::below so results do not depend on the standard library's
// distribution implementations.
namespace testgen {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return eng_() % n; }
    int in_range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool coin() { return below(2) == 0; }

private:
    std::mt19937_64 eng_;
};

inline extdiv::Rational random_rational(Rng& rng, bool allow_zero = true) {
    int num = rng.in_range(allow_zero ? -3 : 1, 3);
    if (!allow_zero && num == 0) num = 1;
    int den = rng.in_range(1, 2);
    return extdiv::Rational(num, den);
}

inline extdiv::Monomial random_monomial(Rng& rng, std::size_t nvars, unsigned max_deg) {
    extdiv::Monomial m(nvars);
    unsigned deg = static_cast<unsigned>(rng.below(max_deg + 1));
    for (unsigned d = 0; d < deg; ++d) m[rng.below(nvars)] += 1;
    return m;
}

inline extdiv::Poly random_poly(Rng& rng, const extdiv::Ring& ring, unsigned max_deg,
                                unsigned max_terms = 3, bool allow_zero = true) {
    extdiv::Poly p(ring);
    unsigned nterms = static_cast<unsigned>(rng.below(max_terms + 1));
    if (!allow_zero && nterms == 0) nterms = 1;
    for (unsigned t = 0; t < nterms; ++t) {
        auto c = random_rational(rng, false);
        p += extdiv::Poly::monomial_term(ring, random_monomial(rng, ring->nvars(), max_deg), c);
    }
    if (!allow_zero && p.is_zero()) p = extdiv::Poly::constant(ring, 1);
    return p;
}

inline extdiv::ExtElement random_ext_element(Rng& rng, const extdiv::Ring& ring, std::size_t m,
                                             int degree, unsigned max_deg = 2,
                                             unsigned max_terms = 2) {
    extdiv::ExtElement e(ring, m, degree);
    if (degree < 0 || degree > static_cast<int>(m)) return e;
    auto idxs = extdiv::multiindices(static_cast<std::size_t>(degree), m);
    unsigned nterms = 1 + static_cast<unsigned>(rng.below(max_terms));
    for (unsigned t = 0; t < nterms; ++t) {
        const auto& idx = idxs[rng.below(idxs.size())];
        e.set_term(idx, e.coeff(idx) + random_poly(rng, ring, max_deg, 2, false));
    }
    return e;
}

inline extdiv::ExtElement random_one_form(Rng& rng, const extdiv::Ring& ring, std::size_t m,
                                          unsigned max_deg = 1) {
    extdiv::ExtElement w(ring, m, 1);
    for (std::size_t i = 1; i <= m; ++i) {
        if (rng.below(3) == 0) continue;
        w.set_term(extdiv::MultiIndex{static_cast<int>(i)},
                   random_poly(rng, ring, max_deg, 2, true));
    }
    if (w.is_zero())
        w.set_term(extdiv::MultiIndex{1}, extdiv::Poly::constant(ring, 1));
    return w;
}

// Invertible k x k rational matrix, built as a product of elementary row
// operations so invertibility holds by construction.
inline std::vector<std::vector<extdiv::Rational>> random_invertible_matrix(Rng& rng,
                                                                           std::size_t k) {
    using extdiv::Rational;
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k, Rational(0)));
    for (std::size_t i = 0; i < k; ++i) a[i][i] = 1;
    for (int step = 0; step < 8; ++step) {
        std::size_t i = rng.below(k), j = rng.below(k);
        switch (rng.below(3)) {
            case 0:  // scale row by a nonzero rational
                for (auto& v : a[i]) v *= Rational(rng.coin() ? 2 : -1, rng.coin() ? 1 : 3);
                break;
            case 1:  // add a multiple of another row
                if (i != j) {
                    Rational c(rng.in_range(-2, 2));
                    for (std::size_t t = 0; t < k; ++t) a[i][t] += c * a[j][t];
                }
                break;
            case 2:
                std::swap(a[i], a[j]);
                break;
        }
    }
    return a;
}

}  // namespace testgen
