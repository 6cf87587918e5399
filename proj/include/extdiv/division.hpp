#pragma once

#include "exterior.hpp"
#include "linsolve.hpp"

namespace extdiv {

/// Decide whether eta in Lambda^p can be written sum_J omega_J ^ gamma_J with
/// J running over the strictly monotone selections of r of the k one-forms.
class DivisionProblem {
public:
    DivisionProblem(OmegaSystem sys, ExtElement eta, unsigned r)
        : sys_(std::move(sys)), eta_(std::move(eta)), r_(r) {
        if (r_ < 1 || r_ > k()) throw std::invalid_argument("need 1 <= r <= k");
        if (eta_.rank_m() != sys_.m()) throw std::invalid_argument("eta rank differs from module rank");
        if (eta_.degree() < static_cast<int>(r_)) throw std::invalid_argument("need p >= r");
        if (eta_.degree() > static_cast<int>(sys_.m()))
            throw std::invalid_argument("degree exceeds module rank");
    }

    const OmegaSystem& sys() const { return sys_; }
    const ExtElement& eta() const { return eta_; }
    const Ring& ring() const { return sys_.ring(); }
    std::size_t m() const { return sys_.m(); }
    unsigned k() const { return static_cast<unsigned>(sys_.k()); }
    unsigned r() const { return r_; }
    unsigned s() const { return k() + 1 - r_; }
    unsigned p() const { return static_cast<unsigned>(eta_.degree()); }

    DivisionProblem with_eta(ExtElement eta) const { return {sys_, std::move(eta), r_}; }

private:
    OmegaSystem sys_;
    ExtElement eta_;
    unsigned r_;
};

/// Solved data a^n * eta = sum_J omega_J ^ gamma_J. n = 0 with a = 1 encodes
/// the plain representation.
struct Representation {
    std::map<MultiIndex, ExtElement> gammas;
    Poly scalar_a;
    unsigned exponent_n = 0;
};

struct ConditionBWitness {
    MultiIndex index;        // the failing I in J(s,k)
    ExtElement product;      // the nonzero omega_I ^ eta
};

struct ConditionBReport {
    bool holds = false;
    bool vacuous = false;  // s + p > m: all products live in a vanishing degree
    std::vector<ConditionBWitness> witnesses;
};

struct DepthReport {
    enum class Method { codim, koszul };
    Ideal ideal;
    std::optional<unsigned> depth_value;  // nullopt encodes infinite depth
    Method method = Method::codim;
    std::optional<bool> dc_holds;
    // p - r == depth - 1 with s + p > m: representability may hold there but
    // the implemented criterion does not certify it.
    bool uncertified_window = false;
};

enum class SolveStatus { solved, no_representation, inconclusive, degenerate };

struct SolveResult {
    SolveStatus status = SolveStatus::no_representation;
    std::optional<Representation> representation;
    bool a_in_ideal = true;  // power solver only: a was inside the coefficient ideal

    bool found() const { return status == SolveStatus::solved; }
};

/// omega_I ^ eta for every I in J(s,k); holds iff all products vanish.
inline ConditionBReport check_condition_b(const DivisionProblem& prob) {
    ConditionBReport report;
    report.vacuous = prob.s() + prob.p() > prob.m();
    report.holds = true;
    for (const auto& I : multiindices(prob.s(), prob.k())) {
        ExtElement prod = wedge(omega_J(prob.sys(), I), prob.eta());
        if (!prod.is_zero()) {
            report.holds = false;
            report.witnesses.push_back({I, std::move(prod)});
        }
    }
    return report;
}

/// Depth of an ideal of the polynomial ring, computed as the codimension
/// n - dim(R/I); the unit ideal has infinite depth by convention.
inline DepthReport depth(const Ideal& I) {
    DepthReport rep{.ideal = I};
    auto dim = krull_dimension(I);
    if (dim)
        rep.depth_value = static_cast<unsigned>(I.ring()->nvars()) - *dim;
    return rep;
}

/// Depth condition p - r <= dpt I(Omega) - 2 gating the equivalence of the
/// vanishing test and representability.
inline DepthReport depth_condition_holds(const DivisionProblem& prob) {
    DepthReport rep = depth(prob.sys().coefficient_ideal_of_Omega());
    long gap = static_cast<long>(prob.p()) - static_cast<long>(prob.r());
    if (!rep.depth_value) {
        rep.dc_holds = true;
    } else {
        rep.dc_holds = gap <= static_cast<long>(*rep.depth_value) - 2;
        rep.uncertified_window = gap == static_cast<long>(*rep.depth_value) - 1 &&
                                 prob.s() + prob.p() > prob.m();
    }
    return rep;
}

namespace detail {

/// Generator table for the representation search: one flattened generator
/// omega_J ^ e_K per (J in J(r,k), K in J(p-r,m)), zero generators skipped
/// but kept addressable.
struct SolveBasis {
    std::vector<MultiIndex> js;
    std::vector<MultiIndex> ks;
    std::vector<std::pair<std::size_t, std::size_t>> source;  // generator -> (j,k) table entry
    std::vector<FreeVector> gens;

    SolveBasis(const DivisionProblem& prob) {
        js = multiindices(prob.r(), prob.k());
        ks = multiindices(prob.p() - prob.r(), prob.m());
        for (std::size_t j = 0; j < js.size(); ++j) {
            ExtElement wj = omega_J(prob.sys(), js[j]);
            for (std::size_t t = 0; t < ks.size(); ++t) {
                ExtElement gen =
                    wedge(wj, ExtElement::basis(prob.ring(), prob.m(), ks[t]));
                if (gen.is_zero()) continue;
                source.emplace_back(j, t);
                gens.push_back(gen.flatten());
            }
        }
    }

    std::map<MultiIndex, ExtElement> assemble(const DivisionProblem& prob,
                                              const std::vector<Poly>& coeffs) const {
        std::map<MultiIndex, ExtElement> gammas;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (coeffs[g].is_zero()) continue;
            auto [j, t] = source[g];
            auto it = gammas.find(js[j]);
            if (it == gammas.end())
                it = gammas
                         .emplace(js[j], ExtElement(prob.ring(), prob.m(),
                                                    static_cast<int>(prob.p() - prob.r())))
                         .first;
            it->second.set_term(ks[t], it->second.coeff(ks[t]) + coeffs[g]);
        }
        return gammas;
    }
};

}  // namespace detail

inline bool verify_representation(const DivisionProblem& prob, const Representation& rep);

/// Representability search via an exact module lift over R^C(m,p). The lift
/// is attempted regardless of the depth condition: it decides membership
/// outright, so a failed lift proves no representation exists.
inline SolveResult solve_a(const DivisionProblem& prob) {
    if (prob.sys().omega_is_zero()) return {SolveStatus::degenerate, std::nullopt};
    detail::SolveBasis basis(prob);
    LiftSolver solver(prob.ring(), basis.gens);
    auto coeffs = solver.lift(prob.eta().flatten());
    if (!coeffs) return {SolveStatus::no_representation, std::nullopt};
    Representation rep{basis.assemble(prob, *coeffs), Poly::constant(prob.ring(), 1), 0};
    if (!verify_representation(prob, rep))
        throw std::logic_error("internal: lift produced a non-verifying representation");
    return {SolveStatus::solved, std::move(rep)};
}

/// Power variant: find the least n <= n_max with a^n * eta representable.
/// A failure at every n is conclusive only when the vanishing test already
/// fails (a nonzero scalar cannot repair it); otherwise it is reported as
/// inconclusive since no bound on n is available.
inline SolveResult solve_a_prime(const DivisionProblem& prob, const Poly& a, unsigned n_max) {
    if (a.is_zero()) throw std::invalid_argument("solve_a_prime: a must be nonzero");
    if (prob.sys().omega_is_zero()) return {SolveStatus::degenerate, std::nullopt};
    bool a_inside = ideal_contains(prob.sys().coefficient_ideal_of_Omega(), a);

    detail::SolveBasis basis(prob);
    LiftSolver solver(prob.ring(), basis.gens);
    Poly power = Poly::constant(prob.ring(), 1);
    for (unsigned n = 0; n <= n_max; ++n) {
        auto coeffs = solver.lift((prob.eta() * power).flatten());
        if (coeffs) {
            Representation rep{basis.assemble(prob, *coeffs), a, n};
            if (!verify_representation(prob, rep))
                throw std::logic_error("internal: lift produced a non-verifying representation");
            return {SolveStatus::solved, std::move(rep), a_inside};
        }
        power *= a;
    }
    SolveStatus status = check_condition_b(prob).holds ? SolveStatus::inconclusive
                                                       : SolveStatus::no_representation;
    return {status, std::nullopt, a_inside};
}

/// Recompute a^n * eta - sum_J omega_J ^ gamma_J and test for the zero element.
inline bool verify_representation(const DivisionProblem& prob, const Representation& rep) {
    ExtElement acc = prob.eta() * rep.scalar_a.pow(rep.exponent_n);
    for (const auto& [J, gamma] : rep.gammas) {
        if (J.length() != prob.r() || J.max_index() > static_cast<int>(prob.k()))
            throw std::invalid_argument("representation key outside J(r,k)");
        if (!gamma.is_zero() && gamma.degree() != static_cast<int>(prob.p() - prob.r()))
            throw std::invalid_argument("gamma degree mismatch");
        acc = acc - wedge(omega_J(prob.sys(), J), gamma);
    }
    return acc.is_zero();
}

/// Generators of K = ker omega_1 cap ... cap ker omega_k inside the dual
/// module: the kernel of the coefficient matrix of the system.
inline std::vector<DualVector> common_kernel(const OmegaSystem& sys) {
    std::vector<FreeVector> columns;
    for (std::size_t t = 1; t <= sys.m(); ++t) {
        FreeVector col(sys.ring(), sys.k());
        for (std::size_t i = 0; i < sys.k(); ++i)
            col[i] = sys.omega(i).coeff(MultiIndex{static_cast<int>(t)});
        columns.push_back(std::move(col));
    }
    std::vector<DualVector> out;
    for (const auto& s : syzygy_basis(columns, sys.ring()))
        out.push_back(DualVector(sys.ring(), s.entries()));
    return out;
}

/// Iterated contraction alpha_q _| ... alpha_1 _| gamma down to a scalar;
/// evaluates gamma as an alternating form on the given dual vectors.
inline Poly restrict_to_kernel(const ExtElement& gamma, std::span<const DualVector> alphas) {
    if (alphas.size() != static_cast<std::size_t>(std::max(gamma.degree(), 0)))
        throw std::invalid_argument("restrict_to_kernel: arity mismatch");
    ExtElement cur = gamma;
    for (const auto& a : alphas) cur = interior(a, cur);
    return cur.coeff(MultiIndex{});
}

/// Two verifying representations of the same a^n * eta agree on every tuple
/// drawn from the generators of the common kernel.
inline bool uniqueness_check(const DivisionProblem& prob, const Representation& rep1,
                             const Representation& rep2) {
    if (prob.sys().coefficient_ideal_of_Omega().is_zero_ideal())
        throw std::invalid_argument("uniqueness_check: coefficient ideal is zero");
    if (!verify_representation(prob, rep1) || !verify_representation(prob, rep2))
        throw std::invalid_argument("uniqueness_check: representation does not verify");
    if (prob.eta() * rep1.scalar_a.pow(rep1.exponent_n) !=
        prob.eta() * rep2.scalar_a.pow(rep2.exponent_n))
        throw std::invalid_argument("uniqueness_check: representations target different elements");

    std::vector<DualVector> kernel = common_kernel(prob.sys());
    std::size_t arity = prob.p() - prob.r();
    auto tuples = multiindices(arity, kernel.size());  // combinations of generators
    for (const auto& J : multiindices(prob.r(), prob.k())) {
        ExtElement delta(prob.ring(), prob.m(), static_cast<int>(arity));
        auto it1 = rep1.gammas.find(J);
        auto it2 = rep2.gammas.find(J);
        if (it1 != rep1.gammas.end()) delta = delta + it1->second;
        if (it2 != rep2.gammas.end()) delta = delta - it2->second;
        if (delta.is_zero()) continue;
        for (const auto& tuple : tuples) {
            std::vector<DualVector> alphas;
            for (std::size_t t = 0; t < tuple.length(); ++t)
                alphas.push_back(kernel[static_cast<std::size_t>(tuple[t] - 1)]);
            if (!restrict_to_kernel(delta, alphas).is_zero()) return false;
        }
    }
    return true;
}

// ---- constant-coefficient fast path ----

/// True when every omega and eta coefficient is a rational constant, so the
/// search is plain linear algebra over the coefficient field.
inline bool field_path_applicable(const DivisionProblem& prob) {
    for (const auto& w : prob.sys().omegas())
        for (const auto& [idx, c] : w.terms())
            if (!c.is_constant()) return false;
    for (const auto& [idx, c] : prob.eta().terms())
        if (!c.is_constant()) return false;
    return true;
}

/// Gaussian-elimination route for constant coefficients. Solvability over the
/// ring and over the field agree: the degree-zero slice of any polynomial
/// solution is itself a solution.
inline SolveResult solve_a_field(const DivisionProblem& prob) {
    if (!field_path_applicable(prob)) throw std::invalid_argument("coefficients are not constant");
    if (prob.sys().omega_is_zero()) return {SolveStatus::degenerate, std::nullopt};
    detail::SolveBasis basis(prob);
    auto rows = multiindices(prob.p(), prob.m());
    std::vector<std::vector<Rational>> mat(rows.size(),
                                           std::vector<Rational>(basis.gens.size(), Rational(0)));
    for (std::size_t g = 0; g < basis.gens.size(); ++g)
        for (std::size_t row = 0; row < rows.size(); ++row)
            mat[row][g] = basis.gens[g][row].constant_part();
    std::vector<Rational> rhs;
    for (const auto& idx : rows) rhs.push_back(prob.eta().coeff(idx).constant_part());

    auto sol = solve_linear_system(std::move(mat), std::move(rhs));
    if (!sol) return {SolveStatus::no_representation, std::nullopt};
    std::vector<Poly> coeffs;
    for (const auto& c : *sol) coeffs.push_back(Poly::constant(prob.ring(), c));
    Representation rep{basis.assemble(prob, coeffs), Poly::constant(prob.ring(), 1), 0};
    if (!verify_representation(prob, rep))
        throw std::logic_error("internal: field path produced a non-verifying representation");
    return {SolveStatus::solved, std::move(rep)};
}

}  // namespace extdiv
