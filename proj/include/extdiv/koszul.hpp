#pragma once

#include "exterior.hpp"

namespace extdiv {

class koszul_domain_error : public std::domain_error {
public:
    enum class Kind { unit_ideal, zero_ideal };
    koszul_domain_error(Kind kind, const std::string& what)
        : std::domain_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct PolyMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<Poly>> entries;  // row-major

    static PolyMatrix zero(const Ring& ring, std::size_t rows, std::size_t cols) {
        PolyMatrix m{rows, cols, {}};
        m.entries.assign(rows, std::vector<Poly>(cols, Poly(ring)));
        return m;
    }

    std::vector<FreeVector> columns(const Ring& ring) const {
        std::vector<FreeVector> out;
        for (std::size_t c = 0; c < cols; ++c) {
            FreeVector v(ring, rows);
            for (std::size_t r = 0; r < rows; ++r) v[r] = entries[r][c];
            out.push_back(std::move(v));
        }
        return out;
    }

    PolyMatrix operator*(const PolyMatrix& o) const {
        if (cols != o.rows) throw std::invalid_argument("matrix shape mismatch");
        PolyMatrix r{rows, o.cols, {}};
        r.entries.assign(rows, std::vector<Poly>(o.cols));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < o.cols; ++j) {
                Poly acc = entries[i].empty() ? Poly() : Poly(entries[i][0].ring());
                for (std::size_t t = 0; t < cols; ++t) acc += entries[i][t] * o.entries[t][j];
                r.entries[i][j] = std::move(acc);
            }
        return r;
    }

    bool is_zero() const {
        for (const auto& row : entries)
            for (const auto& p : row)
                if (!p.is_zero()) return false;
        return true;
    }
};

namespace detail {

inline ExtElement sequence_as_one_form(const FreeVector& omega) {
    ExtElement w(omega.ring(), omega.rank(), 1);
    for (std::size_t t = 0; t < omega.rank(); ++t)
        w.set_term(MultiIndex{static_cast<int>(t + 1)}, omega[t]);
    return w;
}

}  // namespace detail

/// Matrix of wedging by omega from degree i to degree i+1 over R^r, in the
/// lexicographic multiindex bases. Column K is the image of e_K.
inline PolyMatrix boundary_matrix(const FreeVector& omega, unsigned i) {
    std::size_t r = omega.rank();
    if (i >= r) throw std::out_of_range("boundary index outside 0..r-1");
    ExtElement w = detail::sequence_as_one_form(omega);
    auto domain = multiindices(i, r);
    std::size_t rows = binomial(r, i + 1);
    PolyMatrix m = PolyMatrix::zero(omega.ring(), rows, domain.size());
    for (std::size_t c = 0; c < domain.size(); ++c) {
        FreeVector img = wedge(w, ExtElement::basis(omega.ring(), r, domain[c])).flatten();
        for (std::size_t row = 0; row < rows; ++row) m.entries[row][c] = img[row];
    }
    return m;
}

/// The chain of wedge-by-omega maps on the exterior powers of R^r; every
/// composite of consecutive boundaries is zero.
struct KoszulComplex {
    FreeVector omega;
    std::vector<PolyMatrix> boundaries;  // index i holds degree i -> i+1

    static KoszulComplex build(const FreeVector& omega) {
        KoszulComplex k{omega, {}};
        for (unsigned i = 0; i < omega.rank(); ++i) k.boundaries.push_back(boundary_matrix(omega, i));
        return k;
    }
};

/// Every kernel generator of the degree-i boundary lies in the image of the
/// previous one (for i = 0: the kernel is zero).
inline bool cohomology_vanishes(const FreeVector& omega, unsigned i) {
    std::size_t r = omega.rank();
    if (i >= r) throw std::out_of_range("cohomology index outside 0..r-1");
    const Ring& ring = omega.ring();
    std::vector<FreeVector> kernel;
    if (i == 0) {
        kernel = syzygy_basis({omega}, ring);
    } else {
        kernel = syzygy_basis(boundary_matrix(omega, i).columns(ring), ring);
    }
    std::erase_if(kernel, [](const FreeVector& v) { return v.is_zero(); });
    if (kernel.empty()) return true;
    if (i == 0) return false;
    LiftSolver image(ring, boundary_matrix(omega, i - 1).columns(ring));
    for (const auto& ker : kernel)
        if (!image.lift(ker)) return false;
    return true;
}

/// Longest initial run of vanishing cohomology, capped; equals the depth of
/// the entry ideal when the cap is at least the sequence length.
inline unsigned koszul_depth(const FreeVector& omega, unsigned cap) {
    Ideal entries(omega.ring(), omega.entries());
    if (entries.is_unit())
        throw koszul_domain_error(koszul_domain_error::Kind::unit_ideal,
                                  "koszul_depth: unit entry ideal");
    if (entries.is_zero_ideal())
        throw koszul_domain_error(koszul_domain_error::Kind::zero_ideal,
                                  "koszul_depth: zero entry ideal");
    unsigned limit = std::min<unsigned>(cap, static_cast<unsigned>(omega.rank()));
    unsigned d = 0;
    while (d < limit && cohomology_vanishes(omega, d)) ++d;
    return d;
}

inline unsigned koszul_depth(const FreeVector& omega) {
    return koszul_depth(omega, static_cast<unsigned>(omega.rank()));
}

/// Sequential regularity: the generated ideal (on top of an optional base
/// ideal) stays proper and each element is a non-zero-divisor modulo its
/// predecessors.
inline bool is_regular_sequence(const std::vector<Poly>& seq, const Ring& ring,
                                const std::optional<Ideal>& modulo = std::nullopt) {
    Ideal base = modulo ? *modulo : Ideal::zero(ring);
    if (base.with_extra(seq).is_unit()) return false;
    Ideal cur = base;
    for (const auto& a : seq) {
        if (!is_nzd_mod(a, cur)) return false;
        cur = cur.with_extra({a});
    }
    return true;
}

}  // namespace extdiv
