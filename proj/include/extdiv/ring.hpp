#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace extdiv {

/// A polynomial ring Q[x_1,...,x_n] with a fixed monomial order.
struct RingCtx {
    std::vector<std::string> variables;
    MonomialOrder order = MonomialOrder::grevlex;

    RingCtx(std::vector<std::string> vars, MonomialOrder ord = MonomialOrder::grevlex)
        : variables(std::move(vars)), order(ord) {
        for (std::size_t i = 0; i < variables.size(); ++i) {
            if (variables[i].empty()) throw std::invalid_argument("empty variable name");
            for (std::size_t j = i + 1; j < variables.size(); ++j)
                if (variables[i] == variables[j])
                    throw std::invalid_argument("duplicate variable name: " + variables[i]);
        }
    }

    std::size_t nvars() const { return variables.size(); }

    std::optional<std::size_t> var_index(const std::string& name) const {
        for (std::size_t i = 0; i < variables.size(); ++i)
            if (variables[i] == name) return i;
        return std::nullopt;
    }

    bool operator==(const RingCtx& o) const = default;
};

using Ring = std::shared_ptr<const RingCtx>;

inline Ring make_ring(std::vector<std::string> vars, MonomialOrder ord = MonomialOrder::grevlex) {
    return std::make_shared<const RingCtx>(std::move(vars), ord);
}

inline bool same_ring(const Ring& a, const Ring& b) {
    return a == b || (a && b && *a == *b);
}

struct Term {
    Monomial mono;
    Rational coeff;
    bool operator==(const Term&) const = default;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept sorted in strictly descending monomial order with no zero
/// coefficients, so equality is plain term-list equality.
class Poly {
public:
    Poly() = default;
    explicit Poly(Ring ring) : ring_(std::move(ring)) {}
    Poly(Ring ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
        normalize();
    }

    static Poly constant(const Ring& ring, const Rational& c) {
        Poly p(ring);
        if (c != 0) p.terms_.push_back({Monomial(ring->nvars()), c});
        return p;
    }
    static Poly variable(const Ring& ring, std::size_t i) {
        if (i >= ring->nvars()) throw std::out_of_range("variable index");
        Monomial m(ring->nvars());
        m[i] = 1;
        Poly p(ring);
        p.terms_.push_back({std::move(m), Rational(1)});
        return p;
    }
    static Poly monomial_term(const Ring& ring, Monomial m, Rational c) {
        Poly p(ring);
        if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    const Ring& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const {
        return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
    }
    unsigned degree() const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return d;
    }

    const Term& leading_term() const {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        return terms_.front();
    }
    Rational constant_part() const {
        for (const auto& t : terms_)
            if (t.mono.is_one()) return t.coeff;
        return Rational(0);
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    Poly operator+(const Poly& o) const { return merged(o, 1); }
    Poly operator-(const Poly& o) const { return merged(o, -1); }

    Poly operator*(const Poly& o) const {
        check_ring(o);
        Poly r(ring_ ? ring_ : o.ring_);
        if (is_zero() || o.is_zero()) return r;
        std::vector<Term> prod;
        prod.reserve(terms_.size() * o.terms_.size());
        for (const auto& a : terms_)
            for (const auto& b : o.terms_) prod.push_back({a.mono * b.mono, a.coeff * b.coeff});
        r.terms_ = std::move(prod);
        r.normalize();
        return r;
    }

    Poly operator*(const Rational& c) const {
        Poly r(ring_);
        if (c == 0) return r;
        r.terms_ = terms_;
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }

    Poly scaled_by(const Monomial& m, const Rational& c) const {
        Poly r(ring_);
        if (c == 0) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(unsigned n) const {
        Poly r = Poly::constant(ring_, 1);
        for (unsigned i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    Poly derivative(std::size_t var) const {
        Poly r(ring_);
        for (const auto& t : terms_) {
            unsigned e = t.mono[var];
            if (e == 0) continue;
            Monomial m = t.mono;
            m[var] = e - 1;
            r.terms_.push_back({std::move(m), t.coeff * e});
        }
        r.normalize();
        return r;
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    // Division-kernel helpers; both maintain the canonical term order.
    void pop_leading() {
        if (terms_.empty()) throw std::domain_error("pop_leading on zero polynomial");
        terms_.erase(terms_.begin());
    }
    // Caller guarantees m is strictly smaller than every stored monomial.
    void append_term(Monomial m, Rational c) {
        if (c == 0) return;
        terms_.push_back({std::move(m), std::move(c)});
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            Rational c = t.coeff;
            if (first) {
                if (c < 0) {
                    os << "-";
                    c = -c;
                }
            } else {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            first = false;
            if (t.mono.is_one()) {
                os << to_string(c);
            } else {
                bool star = false;
                if (c != 1) {
                    os << to_string(c);
                    star = true;
                }
                for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
                    if (t.mono[i] == 0) continue;
                    if (star) os << "*";
                    os << ring_->variables[i];
                    if (t.mono[i] > 1) os << "^" << t.mono[i];
                    star = true;
                }
            }
        }
        return os.str();
    }

    void check_ring(const Poly& o) const {
        if (!is_zero() && !o.is_zero() && !same_ring(ring_, o.ring_))
            throw std::invalid_argument("polynomials from different rings");
    }

private:
    Poly merged(const Poly& o, int sign) const {
        check_ring(o);
        Poly r(ring_ ? ring_ : o.ring_);
        MonomialOrder ord = r.ring_ ? r.ring_->order : MonomialOrder::grevlex;
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            int c = compare(terms_[i].mono, o.terms_[j].mono, ord);
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back({o.terms_[j].mono, sign * o.terms_[j].coeff});
                ++j;
            } else {
                Rational s = terms_[i].coeff + sign * o.terms_[j].coeff;
                if (s != 0) r.terms_.push_back({terms_[i].mono, std::move(s)});
                ++i;
                ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) r.terms_.push_back({o.terms_[j].mono, sign * o.terms_[j].coeff});
        return r;
    }

    void normalize() {
        if (terms_.empty()) return;
        MonomialOrder ord = ring_ ? ring_->order : MonomialOrder::grevlex;
        std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) {
            return compare(a.mono, b.mono, ord) > 0;
        });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono)
                out.back().coeff += t.coeff;
            else
                out.push_back(std::move(t));
        }
        std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
        terms_ = std::move(out);
    }

    Ring ring_;
    std::vector<Term> terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

// ---- text grammar ----
// signed sums of terms c*x^a*y^b; coefficient p/q or integer; '^1' and '*'
// optional; whitespace insignificant. Example: 3/2*x^2*y - z + 1

namespace detail {

class PolyParser {
public:
    PolyParser(const Ring& ring, const std::string& src) : ring_(ring), src_(src) {}

    Poly parse() {
        Poly result(ring_);
        skip_ws();
        if (eof()) throw error("empty polynomial");
        bool first = true;
        while (!eof()) {
            int sign = 1;
            bool saw_sign = false;
            while (!eof() && (peek() == '+' || peek() == '-')) {
                if (peek() == '-') sign = -sign;
                advance();
                skip_ws();
                saw_sign = true;
            }
            if (eof()) {
                if (saw_sign) throw error("dangling sign");
                break;
            }
            if (!first && !saw_sign) throw error("expected '+' or '-' between terms");
            result += parse_term(sign);
            skip_ws();
            first = false;
        }
        return result;
    }

private:
    Poly parse_term(int sign) {
        Rational coeff(sign);
        Monomial mono(ring_->nvars());
        bool any = false;
        while (true) {
            skip_ws();
            if (eof()) break;
            char c = peek();
            if (c == '*') {
                if (!any) throw error("term starts with '*'");
                advance();
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= parse_number();
                any = true;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t var = parse_variable();
                unsigned exp = 1;
                skip_ws();
                if (!eof() && peek() == '^') {
                    advance();
                    skip_ws();
                    exp = parse_exponent();
                }
                mono[var] += exp;
                any = true;
                continue;
            }
            break;  // '+', '-' or junk; caller decides
        }
        if (!any) throw error("expected a term");
        return Poly::monomial_term(ring_, std::move(mono), std::move(coeff));
    }

    Rational parse_number() {
        Integer num = parse_integer();
        skip_ws();
        if (!eof() && peek() == '/') {
            advance();
            skip_ws();
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                throw error("expected denominator");
            Integer den = parse_integer();
            if (den == 0) throw error("zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }

    Integer parse_integer() {
        std::string digits;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(take());
        return Integer(digits);
    }

    unsigned parse_exponent() {
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) throw error("expected exponent");
        unsigned long v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<unsigned long>(take() - '0');
            if (v > 100000) throw error("exponent too large");
        }
        return static_cast<unsigned>(v);
    }

    std::size_t parse_variable() {
        // Longest match against the ring's variable list.
        std::size_t best_len = 0;
        std::size_t best_var = 0;
        for (std::size_t i = 0; i < ring_->nvars(); ++i) {
            const std::string& name = ring_->variables[i];
            if (name.size() > best_len && src_.compare(pos_, name.size(), name) == 0) {
                best_len = name.size();
                best_var = i;
            }
        }
        if (best_len == 0) {
            std::string word;
            std::size_t p = pos_;
            while (p < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[p])) || src_[p] == '_'))
                word.push_back(src_[p++]);
            throw error("unknown variable '" + word + "'");
        }
        pos_ += best_len;
        return best_var;
    }

    std::invalid_argument error(const std::string& what) const {
        std::ostringstream os;
        os << "parse error at offset " << pos_ << " in \"" << src_ << "\": " << what;
        return std::invalid_argument(os.str());
    }

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    char take() { return src_[pos_++]; }
    void advance() { ++pos_; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    Ring ring_;
    const std::string& src_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(const Ring& ring, const std::string& text) {
    return detail::PolyParser(ring, text).parse();
}

/// Element of a free module R^N, used as the flattened carrier for exterior
/// degrees and for syzygy computations.
class FreeVector {
public:
    FreeVector() = default;
    FreeVector(Ring ring, std::size_t rank)
        : ring_(std::move(ring)), entries_(rank, Poly(ring_)) {}
    FreeVector(Ring ring, std::vector<Poly> entries)
        : ring_(std::move(ring)), entries_(std::move(entries)) {}

    const Ring& ring() const { return ring_; }
    std::size_t rank() const { return entries_.size(); }
    const Poly& operator[](std::size_t i) const { return entries_[i]; }
    Poly& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<Poly>& entries() const { return entries_; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
    }

    FreeVector operator+(const FreeVector& o) const { return zipped(o, 1); }
    FreeVector operator-(const FreeVector& o) const { return zipped(o, -1); }
    FreeVector scaled_by(const Monomial& m, const Rational& c) const {
        FreeVector r(ring_, rank());
        for (std::size_t i = 0; i < rank(); ++i) r.entries_[i] = entries_[i].scaled_by(m, c);
        return r;
    }
    FreeVector operator*(const Poly& p) const {
        FreeVector r(ring_, rank());
        for (std::size_t i = 0; i < rank(); ++i) r.entries_[i] = entries_[i] * p;
        return r;
    }

    bool operator==(const FreeVector& o) const { return entries_ == o.entries_; }

private:
    FreeVector zipped(const FreeVector& o, int sign) const {
        if (rank() != o.rank()) throw std::invalid_argument("free vector rank mismatch");
        FreeVector r(ring_, rank());
        for (std::size_t i = 0; i < rank(); ++i)
            r.entries_[i] = sign > 0 ? entries_[i] + o.entries_[i] : entries_[i] - o.entries_[i];
        return r;
    }

    Ring ring_;
    std::vector<Poly> entries_;
};

}  // namespace extdiv
