#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "clifftrace/index_set.hpp"
#include "clifftrace/scalar.hpp"

namespace clifftrace {

// Element of the complex exterior algebra on N odd generators, stored as a
// sparse map from generator subset to coefficient. Zero coefficients are
// never stored, so structural equality is mathematical equality.
class ExtElem {
public:
    ExtElem() = default;
    explicit ExtElem(int ngen) : ngen_(ngen) {}
    ExtElem(int ngen, Scalar c) : ngen_(ngen) { add_term(IndexSet(), std::move(c)); }

    static ExtElem generator(int ngen, int i) {
        ExtElem e(ngen);
        e.add_term(IndexSet::of({i}), Scalar(1));
        return e;
    }
    static ExtElem monomial(int ngen, IndexSet s, Scalar c = Scalar(1)) {
        ExtElem e(ngen);
        e.add_term(s, std::move(c));
        return e;
    }

    int ngen() const { return ngen_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<IndexSet, Scalar>& terms() const { return terms_; }

    Scalar coeff(const IndexSet& s) const {
        auto it = terms_.find(s);
        return it == terms_.end() ? Scalar(0) : it->second;
    }
    Scalar scalar_part() const { return coeff(IndexSet()); }

    void add_term(const IndexSet& s, Scalar c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(s, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int max_grade() const {
        int g = 0;
        for (auto& [s, c] : terms_) g = std::max(g, s.card());
        return g;
    }
    bool is_even() const {
        for (auto& [s, c] : terms_)
            if (s.card() & 1) return false;
        return true;
    }
    bool is_homogeneous(int* grade_out = nullptr) const {
        int g = -1;
        for (auto& [s, c] : terms_) {
            if (g < 0) g = s.card();
            else if (g != s.card()) return false;
        }
        if (grade_out) *grade_out = (g < 0 ? 0 : g);
        return true;
    }
    ExtElem grade_part(int g) const {
        ExtElem r(ngen_);
        for (auto& [s, c] : terms_)
            if (s.card() == g) r.add_term(s, c);
        return r;
    }
    ExtElem even_part() const {
        ExtElem r(ngen_);
        for (auto& [s, c] : terms_)
            if (!(s.card() & 1)) r.add_term(s, c);
        return r;
    }
    ExtElem odd_part() const {
        ExtElem r(ngen_);
        for (auto& [s, c] : terms_)
            if (s.card() & 1) r.add_term(s, c);
        return r;
    }
    // Positive-grade part; nilpotent in the finite algebra.
    ExtElem nilpotent_part() const {
        ExtElem r = *this;
        r.terms_.erase(IndexSet());
        return r;
    }

    ExtElem operator-() const {
        ExtElem r(ngen_);
        for (auto& [s, c] : terms_) r.terms_.emplace(s, -c);
        return r;
    }
    friend ExtElem operator+(const ExtElem& a, const ExtElem& b) {
        check_dims(a, b);
        ExtElem r = a;
        if (r.ngen_ == 0) r.ngen_ = b.ngen_;
        for (auto& [s, c] : b.terms_) r.add_term(s, c);
        return r;
    }
    friend ExtElem operator-(const ExtElem& a, const ExtElem& b) { return a + (-b); }

    // Graded-commutative wedge; term signs by transposition parity.
    friend ExtElem operator*(const ExtElem& a, const ExtElem& b) {
        check_dims(a, b);
        ExtElem r(std::max(a.ngen_, b.ngen_));
        for (auto& [sa, ca] : a.terms_) {
            for (auto& [sb, cb] : b.terms_) {
                int sg = merge_sign(sa, sb);
                if (sg == 0) continue;
                Scalar c = ca * cb;
                if (sg < 0) c = -c;
                r.add_term(sa.unite(sb), c);
            }
        }
        return r;
    }
    friend ExtElem operator*(const Scalar& c, const ExtElem& a) {
        ExtElem r(a.ngen_);
        for (auto& [s, v] : a.terms_) r.add_term(s, c * v);
        return r;
    }
    friend ExtElem operator*(const ExtElem& a, const Scalar& c) { return c * a; }
    ExtElem& operator+=(const ExtElem& o) { *this = *this + o; return *this; }
    ExtElem& operator-=(const ExtElem& o) { *this = *this - o; return *this; }
    ExtElem& operator*=(const ExtElem& o) { *this = *this * o; return *this; }

    friend bool operator==(const ExtElem& a, const ExtElem& b) {
        return (a - b).is_zero();
    }
    friend bool operator!=(const ExtElem& a, const ExtElem& b) { return !(a == b); }

    ExtElem promote() const {
        ExtElem r(ngen_);
        for (auto& [s, c] : terms_) r.add_term(s, c.promote());
        return r;
    }
    double max_abs() const {
        double m = 0;
        for (auto& [s, c] : terms_) m = std::max(m, c.abs());
        return m;
    }

    // Multiplicative inverse of s + nu with invertible scalar part s:
    // Neumann series in the nilpotent part.
    ExtElem inverse() const {
        Scalar s = scalar_part();
        if (s.is_zero()) throw std::domain_error("ExtElem: scalar part is zero, not invertible");
        ExtElem nu = nilpotent_part();
        ExtElem r(ngen_, Scalar(1) / s);
        ExtElem pw(ngen_, Scalar(1));
        Scalar sinv = Scalar(1) / s;
        int kmax = ngen_ + 1;
        for (int k = 1; k <= kmax; ++k) {
            pw = pw * nu;
            if (pw.is_zero()) break;
            Scalar fac = (k & 1) ? -(sinv.pow_int(k + 1)) : sinv.pow_int(k + 1);
            r += fac * pw;
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto& [s, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            if (!s.empty()) {
                out += "*J{";
                bool first = true;
                for (int i : s.elements()) {
                    if (!first) out += ",";
                    out += std::to_string(i);
                    first = false;
                }
                out += "}";
            }
        }
        return out;
    }

private:
    static void check_dims(const ExtElem& a, const ExtElem& b) {
        if (a.ngen_ && b.ngen_ && a.ngen_ != b.ngen_)
            throw std::invalid_argument("ExtElem: mismatched generator count");
    }

    int ngen_ = 0;
    std::map<IndexSet, Scalar> terms_;
};

// exp of an even element: the degree-0 part exponentiates as a scalar
// factor, the positive-grade part by its terminating power series.
inline ExtElem exp_even(const ExtElem& a) {
    if (!a.is_even()) throw std::invalid_argument("exp_even: odd-grade input");
    Scalar s0 = a.scalar_part().exp();
    ExtElem nu = a.nilpotent_part();
    ExtElem r(a.ngen(), Scalar(1));
    ExtElem pw(a.ngen(), Scalar(1));
    int kmax = a.ngen() / 2 + 1;
    for (int k = 1; k <= kmax; ++k) {
        pw = pw * nu;
        if (pw.is_zero()) break;
        r += Scalar::exact(mpq_class(1) / factorial_q(k), 0) * pw;
    }
    return s0 * r;
}

// Coefficient of J^{1..n}.
inline Scalar berezin_top(const ExtElem& a, int n) {
    return a.coeff(IndexSet::full(n));
}

}  // namespace clifftrace
