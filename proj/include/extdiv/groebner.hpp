#pragma once

#include <bit>
#include <mutex>
#include <optional>
#include <set>
#include <utility>

#include "ring.hpp"

namespace extdiv {

namespace detail {

/// Compute-once cache: the value is computed at most once and published under
/// a lock; copies snapshot the already-computed value.
template <class T>
class Lazy {
public:
    Lazy() = default;
    Lazy(const Lazy& o) : val_(o.snapshot()) {}
    Lazy(Lazy&& o) noexcept : val_(o.snapshot()) {}
    Lazy& operator=(const Lazy& o) {
        if (this != &o) {
            auto v = o.snapshot();
            std::scoped_lock l(mu_);
            val_ = std::move(v);
        }
        return *this;
    }
    Lazy& operator=(Lazy&& o) noexcept { return *this = o; }

    template <class F>
    const T& get(F&& compute) const {
        std::scoped_lock l(mu_);
        if (!val_) val_ = std::make_shared<const T>(compute());
        return *val_;
    }

private:
    std::shared_ptr<const T> snapshot() const {
        std::scoped_lock l(mu_);
        return val_;
    }

    mutable std::mutex mu_;
    mutable std::shared_ptr<const T> val_;
};

/// Position-over-term leading term of a module element: the leading term of
/// the first nonzero component. Lower position dominates.
struct ModLead {
    std::size_t pos = 0;
    Monomial mono;
    Rational coeff;
};

inline std::optional<ModLead> mod_lead(const FreeVector& v) {
    for (std::size_t i = 0; i < v.rank(); ++i) {
        if (!v[i].is_zero()) {
            const Term& t = v[i].leading_term();
            return ModLead{i, t.mono, t.coeff};
        }
    }
    return std::nullopt;
}

inline int mod_lead_compare(const ModLead& a, const ModLead& b, MonomialOrder ord) {
    if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;
    return compare(a.mono, b.mono, ord);
}

/// Module element together with a passive expression of it in terms of the
/// original generators. The invariant real == sum_i tag[i] * gens[i] is
/// preserved by every reduction step.
struct TrackedVec {
    FreeVector real;
    FreeVector tag;
    ModLead lead;  // valid while real != 0

    void refresh_lead() {
        if (auto l = mod_lead(real)) lead = std::move(*l);
    }
};

struct GBOptions {
    bool track_tags = false;
    bool assume_reduced = false;  // inputs already form a reduced basis
};

class ModuleGB {
public:
    // gens: elements of R^rank; track_tags enables expression tracking.
    ModuleGB(Ring ring, const std::vector<FreeVector>& gens, GBOptions opts = {})
        : ring_(std::move(ring)), order_(ring_->order), opts_(opts) {
        std::size_t t = opts_.track_tags ? gens.size() : 0;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            TrackedVec v{gens[i], FreeVector(ring_, t), {}};
            if (opts_.track_tags) v.tag[i] = Poly::constant(ring_, 1);
            if (v.real.is_zero()) continue;
            v.refresh_lead();
            basis_.push_back(std::move(v));
        }
        if (!opts_.assume_reduced) {
            run();
            reduce_basis();
        }
    }

    const std::vector<TrackedVec>& basis() const { return basis_; }
    Ring ring() const { return ring_; }

    // Full normal form; the returned tag accumulates the division (remainder
    // invariant: input.real == nf.real + sum_i (-nf.tag[i]) * gens[i] when the
    // input tag is zero).
    TrackedVec normal_form(const FreeVector& target, FreeVector tag) const {
        std::size_t n = target.rank();
        TrackedVec work{target, std::move(tag), {}};
        FreeVector rem(ring_, n);
        while (!work.real.is_zero()) {
            work.refresh_lead();
            const TrackedVec* red = find_reducer(work.lead);
            if (red) {
                Monomial q = red->lead.mono.quotient_of(work.lead.mono);
                Rational c = work.lead.coeff / red->lead.coeff;
                work.real = work.real - red->real.scaled_by(q, c);
                if (opts_.track_tags) work.tag = work.tag - red->tag.scaled_by(q, c);
            } else {
                rem[work.lead.pos].append_term(work.lead.mono, work.lead.coeff);
                work.real[work.lead.pos].pop_leading();
            }
        }
        work.real = std::move(rem);
        return work;
    }

private:
    struct Pair {
        std::size_t i, j;
        Monomial lcm_mono;
        std::size_t pos;
    };

    const TrackedVec* find_reducer(const ModLead& lead) const {
        for (const auto& g : basis_) {
            if (g.lead.pos == lead.pos && g.lead.mono.divides(lead.mono)) return &g;
        }
        return nullptr;
    }

    void push_pairs_for(std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (basis_[i].lead.pos != basis_[j].lead.pos) continue;
            // Product criterion; only valid over an ideal (module rank 1).
            if (basis_[i].real.rank() == 1 && coprime(basis_[i].lead.mono, basis_[j].lead.mono))
                continue;
            pairs_.push_back({i, j, lcm(basis_[i].lead.mono, basis_[j].lead.mono),
                              basis_[i].lead.pos});
            pending_.insert({i, j});
        }
    }

    std::size_t select_pair() const {
        std::size_t best = 0;
        for (std::size_t t = 1; t < pairs_.size(); ++t) {
            const Pair &a = pairs_[t], &b = pairs_[best];
            int c = a.pos != b.pos ? (a.pos < b.pos ? 1 : -1) : -compare(a.lcm_mono, b.lcm_mono, order_);
            if (c > 0 || (c == 0 && (a.i < b.i || (a.i == b.i && a.j < b.j)))) best = t;
        }
        return best;
    }

    bool chain_criterion(const Pair& p) const {
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            if (k == p.i || k == p.j) continue;
            if (basis_[k].lead.pos != p.pos) continue;
            if (!basis_[k].lead.mono.divides(p.lcm_mono)) continue;
            auto key = [](std::size_t a, std::size_t b) {
                return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            };
            if (!pending_.count(key(p.i, k)) && !pending_.count(key(k, p.j))) return true;
        }
        return false;
    }

    void run() {
        for (std::size_t j = 0; j < basis_.size(); ++j) push_pairs_for(j);
        while (!pairs_.empty()) {
            std::size_t at = select_pair();
            Pair p = pairs_[at];
            pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(at));
            pending_.erase({p.i, p.j});
            if (chain_criterion(p)) continue;

            const TrackedVec &f = basis_[p.i], &g = basis_[p.j];
            Monomial qf = f.lead.mono.quotient_of(p.lcm_mono);
            Monomial qg = g.lead.mono.quotient_of(p.lcm_mono);
            TrackedVec s{f.real.scaled_by(qf, Rational(1) / f.lead.coeff) -
                             g.real.scaled_by(qg, Rational(1) / g.lead.coeff),
                         opts_.track_tags
                             ? f.tag.scaled_by(qf, Rational(1) / f.lead.coeff) -
                                   g.tag.scaled_by(qg, Rational(1) / g.lead.coeff)
                             : FreeVector(ring_, 0),
                         {}};
            TrackedVec red = normal_form(s.real, std::move(s.tag));
            if (red.real.is_zero()) continue;
            red.refresh_lead();
            basis_.push_back(std::move(red));
            push_pairs_for(basis_.size() - 1);
        }
    }

    void make_monic(TrackedVec& v) const {
        Rational c = Rational(1) / v.lead.coeff;
        for (std::size_t i = 0; i < v.real.rank(); ++i)
            v.real[i] = v.real[i] * c;
        for (std::size_t i = 0; i < v.tag.rank(); ++i) v.tag[i] = v.tag[i] * c;
        v.lead.coeff = 1;
    }

    void reduce_basis() {
        // Minimalize: drop elements whose lead is divisible by another lead.
        std::vector<bool> keep(basis_.size(), true);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            for (std::size_t j = 0; j < basis_.size() && keep[i]; ++j) {
                if (i == j) continue;
                const ModLead &li = basis_[i].lead, &lj = basis_[j].lead;
                if (lj.pos != li.pos || !lj.mono.divides(li.mono)) continue;
                // Equal leads: keep the earlier element.
                if (lj.mono == li.mono && j > i) continue;
                keep[i] = false;
            }
        }
        std::vector<TrackedVec> kept;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (keep[i]) kept.push_back(std::move(basis_[i]));
        basis_ = std::move(kept);
        // Tail-reduce each element against the others and normalize.
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            TrackedVec self = std::move(basis_[i]);
            std::vector<TrackedVec> others;
            others.reserve(basis_.size() - 1);
            for (std::size_t j = 0; j < basis_.size(); ++j)
                if (j != i) others.push_back(basis_[j]);
            std::swap(basis_, others);
            TrackedVec red = normal_form(self.real, std::move(self.tag));
            std::swap(basis_, others);
            red.refresh_lead();
            make_monic(red);
            basis_[i] = std::move(red);
        }
        std::sort(basis_.begin(), basis_.end(), [&](const TrackedVec& a, const TrackedVec& b) {
            return mod_lead_compare(a.lead, b.lead, order_) > 0;
        });
    }

    Ring ring_;
    MonomialOrder order_;
    GBOptions opts_;
    std::vector<TrackedVec> basis_;
    std::vector<Pair> pairs_;
    std::set<std::pair<std::size_t, std::size_t>> pending_;
};

inline FreeVector as_rank1(const Poly& p) {
    return FreeVector(p.ring(), std::vector<Poly>{p});
}

}  // namespace detail

// ---- ideal-level operations ----

/// Reduced Groebner basis of the ideal generated by gens, sorted with the
/// largest leading monomial first. Unit ideal yields [1], zero ideal [].
inline std::vector<Poly> groebner(const std::vector<Poly>& gens, const Ring& ring) {
    std::vector<FreeVector> vecs;
    for (const auto& g : gens)
        if (!g.is_zero()) vecs.push_back(detail::as_rank1(g));
    detail::ModuleGB gb(ring, vecs);
    std::vector<Poly> out;
    out.reserve(gb.basis().size());
    for (const auto& v : gb.basis()) out.push_back(v.real[0]);
    return out;
}

/// Ideal with a lazily computed reduced Groebner basis. Value type; the cache
/// is computed at most once and shared between copies.
class Ideal {
public:
    Ideal(Ring ring, std::vector<Poly> gens) : ring_(std::move(ring)), gens_(std::move(gens)) {}

    static Ideal zero(const Ring& ring) { return Ideal(ring, {}); }

    const Ring& ring() const { return ring_; }
    const std::vector<Poly>& generators() const { return gens_; }

    const std::vector<Poly>& groebner_basis() const {
        return gb_.get([this] { return groebner(gens_, ring_); });
    }

    bool is_zero_ideal() const { return groebner_basis().empty(); }
    bool is_unit() const {
        const auto& gb = groebner_basis();
        return gb.size() == 1 && gb[0].is_one();
    }
    bool is_proper() const { return !is_unit(); }

    Ideal with_extra(std::vector<Poly> more) const {
        std::vector<Poly> g = gens_;
        for (auto& p : more) g.push_back(std::move(p));
        return Ideal(ring_, std::move(g));
    }

private:
    Ring ring_;
    std::vector<Poly> gens_;
    detail::Lazy<std::vector<Poly>> gb_;
};

/// Unique remainder of f under multivariate division by the reduced basis of I.
inline Poly normal_form(const Poly& f, const Ideal& I) {
    const auto& gb = I.groebner_basis();
    if (gb.empty() || f.is_zero()) return f;
    std::vector<FreeVector> vecs;
    vecs.reserve(gb.size());
    for (const auto& g : gb) vecs.push_back(detail::as_rank1(g));
    detail::ModuleGB engine(I.ring(), vecs, detail::GBOptions{.assume_reduced = true});
    return engine.normal_form(detail::as_rank1(f), FreeVector(I.ring(), 0)).real[0];
}

inline bool ideal_contains(const Ideal& I, const Poly& f) { return normal_form(f, I).is_zero(); }

inline bool equal_ideals(const Ideal& a, const Ideal& b) {
    return a.groebner_basis() == b.groebner_basis();
}

/// Generators of the full syzygy module {(c_1,...,c_t) : sum c_i gens[i] = 0},
/// via a position-over-term elimination basis of span{gens[i] (+) e_i}.
inline std::vector<FreeVector> syzygy_basis(const std::vector<FreeVector>& gens, const Ring& ring) {
    if (gens.empty()) return {};
    std::size_t n = gens[0].rank();
    for (const auto& g : gens)
        if (g.rank() != n) throw std::invalid_argument("syzygy_basis: rank mismatch");
    std::size_t t = gens.size();
    std::vector<FreeVector> embedded;
    embedded.reserve(t);
    for (std::size_t i = 0; i < t; ++i) {
        FreeVector v(ring, n + t);
        for (std::size_t a = 0; a < n; ++a) v[a] = gens[i][a];
        v[n + i] = Poly::constant(ring, 1);
        embedded.push_back(std::move(v));
    }
    detail::ModuleGB gb(ring, embedded);
    std::vector<FreeVector> out;
    for (const auto& e : gb.basis()) {
        bool head_zero = true;
        for (std::size_t a = 0; a < n && head_zero; ++a) head_zero = e.real[a].is_zero();
        if (!head_zero) continue;
        FreeVector s(ring, t);
        for (std::size_t i = 0; i < t; ++i) s[i] = e.real[n + i];
        out.push_back(std::move(s));
    }
    return out;
}

/// Repeated-lift engine: fixes the generator set once so several targets can
/// be expressed against it.
class LiftSolver {
public:
    LiftSolver(Ring ring, std::vector<FreeVector> gens)
        : ring_(std::move(ring)), count_(gens.size()),
          rank_(gens.empty() ? 0 : gens[0].rank()) {
        for (const auto& g : gens)
            if (g.rank() != rank_) throw std::invalid_argument("module_lift: rank mismatch");
        engine_.emplace(ring_, gens, detail::GBOptions{.track_tags = true});
    }

    // Coefficients c with sum c_i gens[i] == target, or nullopt.
    std::optional<std::vector<Poly>> lift(const FreeVector& target) const {
        if (target.rank() != rank_ && count_ > 0)
            throw std::invalid_argument("module_lift: rank mismatch");
        if (target.is_zero()) return std::vector<Poly>(count_, Poly(ring_));
        if (count_ == 0) return std::nullopt;
        detail::TrackedVec nf = engine_->normal_form(target, FreeVector(ring_, count_));
        if (!nf.real.is_zero()) return std::nullopt;
        std::vector<Poly> out;
        out.reserve(count_);
        for (std::size_t i = 0; i < count_; ++i) out.push_back(-nf.tag[i]);
        return out;
    }

private:
    Ring ring_;
    std::size_t count_;
    std::size_t rank_;
    std::optional<detail::ModuleGB> engine_;
};

inline std::optional<std::vector<Poly>> module_lift(const FreeVector& target,
                                                    const std::vector<FreeVector>& gens,
                                                    const Ring& ring) {
    return LiftSolver(ring, gens).lift(target);
}

/// Colon ideal (I : f) = {g : g*f in I}, extracted from the syzygies of
/// [f, generators of I].
inline Ideal ideal_quotient(const Ideal& I, const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("zero divisor query");
    std::vector<FreeVector> vecs;
    vecs.push_back(detail::as_rank1(f));
    for (const auto& g : I.generators())
        if (!g.is_zero()) vecs.push_back(detail::as_rank1(g));
    std::vector<Poly> quot;
    for (const auto& s : syzygy_basis(vecs, I.ring()))
        if (!s[0].is_zero()) quot.push_back(s[0]);
    return Ideal(I.ring(), std::move(quot));
}

/// f is a non-zero-divisor on R/I: I proper, f outside I, and (I : f) = I.
inline bool is_nzd_mod(const Poly& f, const Ideal& I) {
    if (I.is_unit()) return false;
    if (ideal_contains(I, f)) return false;
    return equal_ideals(ideal_quotient(I, f), I);
}

/// Krull dimension of R/I from the leading-term ideal: the largest set of
/// variables supporting no leading monomial. nullopt encodes the empty
/// spectrum of the unit ideal.
inline std::optional<unsigned> krull_dimension(const Ideal& I) {
    if (I.is_unit()) return std::nullopt;
    std::size_t n = I.ring()->nvars();
    std::vector<std::vector<std::size_t>> supports;
    for (const auto& g : I.groebner_basis()) {
        std::vector<std::size_t> sup;
        const Monomial& m = g.leading_term().mono;
        for (std::size_t i = 0; i < n; ++i)
            if (m[i] > 0) sup.push_back(i);
        supports.push_back(std::move(sup));
    }
    unsigned best = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        bool independent = true;
        for (const auto& sup : supports) {
            bool contained = true;
            for (std::size_t v : sup)
                if (!(mask & (std::size_t{1} << v))) {
                    contained = false;
                    break;
                }
            if (contained) {
                independent = false;
                break;
            }
        }
        if (independent) best = std::max<unsigned>(best, static_cast<unsigned>(std::popcount(mask)));
    }
    return best;
}

}  // namespace extdiv
