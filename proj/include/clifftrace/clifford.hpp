#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "clifftrace/exterior.hpp"

namespace clifftrace {

// Sign of gamma_I * gamma_K under the relations g_j g_k + g_k g_j = 2 d_jk:
// move each generator of K into place, contracting repeats via g_i^2 = 1.
inline int gamma_reorder_sign(std::uint64_t i_mask, std::uint64_t k_mask) {
    int inv = 0;
    for (std::uint64_t m = k_mask; m; m &= m - 1) {
        int j = std::countr_zero(m);
        inv += std::popcount(i_mask >> (j + 1));
    }
    return (inv & 1) ? -1 : 1;
}

// Element of A (x) C_n: map from Clifford monomial mask to exterior
// coefficient. Clifford generators are odd; mixed products follow
// (a (x) u)(b (x) v) = (-1)^{|u||b|} (a ^ b) (x) (u v).
class CliffElem {
public:
    CliffElem() = default;
    CliffElem(int n_cliff, int ngen) : n_(n_cliff), ngen_(ngen) {}

    static CliffElem gamma(int n_cliff, int ngen, IndexSet I) {
        CliffElem u(n_cliff, ngen);
        u.add_term(I, ExtElem(ngen, Scalar(1)));
        return u;
    }
    static CliffElem scalar(int n_cliff, int ngen, Scalar c) {
        CliffElem u(n_cliff, ngen);
        u.add_term(IndexSet(), ExtElem(ngen, std::move(c)));
        return u;
    }
    static CliffElem from_ext(int n_cliff, const ExtElem& a) {
        CliffElem u(n_cliff, a.ngen());
        u.add_term(IndexSet(), a);
        return u;
    }

    int n_cliff() const { return n_; }
    int ngen() const { return ngen_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<IndexSet, ExtElem>& terms() const { return terms_; }

    ExtElem coeff(const IndexSet& I) const {
        auto it = terms_.find(I);
        return it == terms_.end() ? ExtElem(ngen_) : it->second;
    }

    void add_term(const IndexSet& I, const ExtElem& a) {
        if (a.is_zero()) return;
        auto [it, fresh] = terms_.emplace(I, a);
        if (!fresh) {
            it->second += a;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    // Total parity of every stored term: |gamma index| + coefficient grade.
    bool is_homogeneous(int* parity_out = nullptr) const {
        int p = -1;
        for (auto& [I, a] : terms_) {
            for (auto& [s, c] : a.terms()) {
                int q = (I.card() + s.card()) & 1;
                if (p < 0) p = q;
                else if (p != q) return false;
            }
        }
        if (parity_out) *parity_out = (p < 0 ? 0 : p);
        return true;
    }

    CliffElem operator-() const {
        CliffElem r(n_, ngen_);
        for (auto& [I, a] : terms_) r.terms_.emplace(I, -a);
        return r;
    }
    friend CliffElem operator+(const CliffElem& x, const CliffElem& y) {
        check_dims(x, y);
        CliffElem r = x;
        if (r.n_ == 0 && r.ngen_ == 0) { r.n_ = y.n_; r.ngen_ = y.ngen_; }
        for (auto& [I, a] : y.terms_) r.add_term(I, a);
        return r;
    }
    friend CliffElem operator-(const CliffElem& x, const CliffElem& y) { return x + (-y); }

    friend CliffElem operator*(const CliffElem& x, const CliffElem& y) {
        check_dims(x, y);
        CliffElem r(std::max(x.n_, y.n_), std::max(x.ngen_, y.ngen_));
        for (auto& [I, a] : x.terms_) {
            bool i_odd = I.card() & 1;
            for (auto& [K, b] : y.terms_) {
                int sg = gamma_reorder_sign(I.mask, K.mask);
                IndexSet IK(I.mask ^ K.mask);
                // Koszul sign: gamma_I odd passing the odd part of b.
                ExtElem c = i_odd ? (a * (b.even_part() - b.odd_part()))
                                  : (a * b);
                if (sg < 0) c = -c;
                r.add_term(IK, c);
            }
        }
        return r;
    }
    friend CliffElem operator*(const ExtElem& a, const CliffElem& y) {
        return CliffElem::from_ext(y.n_, a) * y;
    }
    friend CliffElem operator*(const Scalar& c, const CliffElem& y) {
        CliffElem r(y.n_, y.ngen_);
        for (auto& [I, a] : y.terms_) r.add_term(I, c * a);
        return r;
    }
    CliffElem& operator+=(const CliffElem& o) { *this = *this + o; return *this; }
    CliffElem& operator-=(const CliffElem& o) { *this = *this - o; return *this; }

    friend bool operator==(const CliffElem& x, const CliffElem& y) {
        return (x - y).is_zero();
    }
    friend bool operator!=(const CliffElem& x, const CliffElem& y) { return !(x == y); }

    CliffElem promote() const {
        CliffElem r(n_, ngen_);
        for (auto& [I, a] : terms_) r.add_term(I, a.promote());
        return r;
    }
    double max_abs() const {
        double m = 0;
        for (auto& [I, a] : terms_) m = std::max(m, a.max_abs());
        return m;
    }

private:
    static void check_dims(const CliffElem& x, const CliffElem& y) {
        bool xe = x.n_ == 0 && x.ngen_ == 0, ye = y.n_ == 0 && y.ngen_ == 0;
        if (xe || ye) return;
        if (x.n_ != y.n_ || x.ngen_ != y.ngen_)
            throw std::invalid_argument("CliffElem: dimension mismatch");
    }

    int n_ = 0;      // Clifford generator count (even)
    int ngen_ = 0;   // exterior generator count of the coefficients
    std::map<IndexSet, ExtElem> terms_;
};

// A-linear supertrace: Str(gamma_I) = 0 except the full monomial, which is
// normalised to (2i)^{n/2}.
inline ExtElem str(const CliffElem& u) {
    return Scalar::two_i_pow(u.n_cliff() / 2) * u.coeff(IndexSet::full(u.n_cliff()));
}

// The canonical spinor supertrace carries the opposite chirality
// orientation, Str(gamma_full) = (-2i)^{n/2}; the Thom construction is the
// place where that orientation matters.
inline ExtElem str_spinor(const CliffElem& u) {
    return Scalar::minus_two_i_pow(u.n_cliff() / 2) * u.coeff(IndexSet::full(u.n_cliff()));
}

// c(z) = i z^t gamma.
inline CliffElem c_map(int n_cliff, int ngen, const std::vector<Scalar>& z) {
    if (static_cast<int>(z.size()) != n_cliff)
        throw std::invalid_argument("c_map: length mismatch");
    CliffElem u(n_cliff, ngen);
    for (int k = 1; k <= n_cliff; ++k)
        u += Scalar::imaginary_unit() * z[k - 1] *
             CliffElem::gamma(n_cliff, ngen, IndexSet::of({k}));
    return u;
}

// exp of an element whose exterior coefficients are all positive-grade
// (nilpotent): the series terminates at grade ngen. With numeric degree-0
// coefficients present, the series runs to float tolerance instead.
inline CliffElem cliff_exp(const CliffElem& x, double tol = 1e-16) {
    bool nilpotent = true;
    for (auto& [I, a] : x.terms())
        if (!a.scalar_part().is_zero()) nilpotent = false;
    CliffElem one = CliffElem::scalar(x.n_cliff(), x.ngen(), Scalar(1));
    if (nilpotent) {
        CliffElem r = one, pw = one;
        for (int k = 1; k <= x.ngen(); ++k) {
            pw = pw * x;
            if (pw.is_zero()) break;
            r += Scalar::exact(mpq_class(1) / factorial_q(k), 0) * pw;
        }
        return r;
    }
    CliffElem xf = x.promote();
    CliffElem r = one.promote(), term = one.promote();
    double scale = std::max(1.0, xf.max_abs());
    for (int k = 1; k < 400; ++k) {
        term = Scalar::floating(1.0 / k) * (term * xf);
        r += term;
        if (term.max_abs() < tol * scale && k > 4) break;
    }
    return r;
}

// Graded cyclicity Str(ab) = (-1)^{|a||b|} Str(ba) for homogeneous a, b.
inline bool str_cyclic_check(const CliffElem& a, const CliffElem& b) {
    int pa = 0, pb = 0;
    if (!a.is_homogeneous(&pa) || !b.is_homogeneous(&pb))
        throw std::invalid_argument("str_cyclic_check: non-homogeneous input");
    ExtElem lhs = str(a * b);
    ExtElem rhs = str(b * a);
    if (pa && pb) rhs = -rhs;
    return lhs == rhs;
}

}  // namespace clifftrace
