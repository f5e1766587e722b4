#pragma once

#include <map>

#include "clifftrace/clifford.hpp"
#include "clifftrace/skew.hpp"

namespace clifftrace {

// Polynomial in commuting cotangent variables xi_1..xi_n with exterior-form
// coefficients, optionally weighted by e^{-|xi|^2}. Exponents pack 8 bits
// per variable.
class Symbol {
public:
    Symbol() = default;
    Symbol(int nxi, int ngen) : nxi_(nxi), ngen_(ngen) {}

    static int exp_of(std::uint64_t mono, int i) { return (mono >> (8 * (i - 1))) & 0xff; }
    static std::uint64_t with_exp(std::uint64_t mono, int i, int e) {
        return (mono & ~(0xffull << (8 * (i - 1)))) | (std::uint64_t(e) << (8 * (i - 1)));
    }
    static std::uint64_t xi(int i) { return with_exp(0, i, 1); }

    static Symbol monomial(int nxi, int ngen, std::uint64_t mono, ExtElem c) {
        Symbol s(nxi, ngen);
        s.add_term(mono, std::move(c));
        return s;
    }
    static Symbol xi_var(int nxi, int ngen, int i) {
        return monomial(nxi, ngen, xi(i), ExtElem(ngen, Scalar(1)));
    }
    static Symbol xi_norm_sq(int nxi, int ngen) {
        Symbol s(nxi, ngen);
        for (int i = 1; i <= nxi; ++i) s.add_term(with_exp(0, i, 2), ExtElem(ngen, Scalar(1)));
        return s;
    }

    int nxi() const { return nxi_; }
    int ngen() const { return ngen_; }
    bool gaussian() const { return gaussian_; }
    void set_gaussian(bool g) { gaussian_ = g; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::uint64_t, ExtElem>& terms() const { return terms_; }

    ExtElem coeff(std::uint64_t mono) const {
        auto it = terms_.find(mono);
        return it == terms_.end() ? ExtElem(ngen_) : it->second;
    }

    void add_term(std::uint64_t mono, const ExtElem& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(mono, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Symbol operator-() const {
        Symbol r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend Symbol operator+(const Symbol& a, const Symbol& b) {
        check(a, b);
        Symbol r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Symbol operator-(const Symbol& a, const Symbol& b) { return a + (-b); }
    friend Symbol operator*(const Scalar& c, const Symbol& a) {
        Symbol r = a;
        for (auto& [m, v] : r.terms_) v = c * v;
        return r;
    }
    // pointwise product (coefficients wedge in order)
    friend Symbol operator*(const Symbol& a, const Symbol& b) {
        check(a, b);
        Symbol r(std::max(a.nxi_, b.nxi_), std::max(a.ngen_, b.ngen_));
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) {
                ExtElem c = ca * cb;
                if (!c.is_zero()) r.add_term(add_mono(ma, mb, r.nxi_), c);
            }
        return r;
    }
    friend bool operator==(const Symbol& a, const Symbol& b) {
        return (a - b).is_zero();
    }

    Symbol derivative(int i) const {
        Symbol r(nxi_, ngen_);
        for (auto& [m, c] : terms_) {
            int e = exp_of(m, i);
            if (e > 0) r.add_term(with_exp(m, i, e - 1), Scalar(e) * c);
        }
        return r;
    }

    int max_degree() const {
        int d = 0;
        for (auto& [m, c] : terms_) {
            int t = 0;
            for (int i = 1; i <= nxi_; ++i) t += exp_of(m, i);
            d = std::max(d, t);
        }
        return d;
    }

    double max_abs() const {
        double v = 0;
        for (auto& [m, c] : terms_) v = std::max(v, c.max_abs());
        return v;
    }

    static std::uint64_t add_mono(std::uint64_t a, std::uint64_t b, int nxi) {
        std::uint64_t r = 0;
        for (int i = 1; i <= nxi; ++i)
            r = with_exp(r, i, exp_of(a, i) + exp_of(b, i));
        return r;
    }

private:
    static void check(const Symbol& a, const Symbol& b) {
        if (a.nxi_ && b.nxi_ && (a.nxi_ != b.nxi_ || a.ngen_ != b.ngen_))
            throw std::invalid_argument("Symbol: dimension mismatch");
    }

    int nxi_ = 0, ngen_ = 0;
    bool gaussian_ = false;
    std::map<std::uint64_t, ExtElem> terms_;
};

// Getzler star product:
// (a * b)(x, xi) = e^{-1/4 R(d/dxi, d/deta)} a(x, xi) ^ b(x, eta) |_{eta=xi}.
// R is skew with grade-2 entries, so the bidifferential expansion
// terminates by polynomial degree and form nilpotency.
inline Symbol star(const Symbol& a, const Symbol& b, const SkewMat& r_pairing) {
    if (a.nxi() != b.nxi())
        throw std::invalid_argument("star: dimension mismatch");
    if (a.gaussian() || b.gaussian())
        throw std::invalid_argument("star: gaussian-weighted factors not supported");
    int nxi = a.nxi(), ngen = std::max(a.ngen(), b.ngen());
    using PairKey = std::pair<std::uint64_t, std::uint64_t>;
    std::map<PairKey, ExtElem> state;
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) {
            ExtElem c = ca * cb;
            if (!c.is_zero()) {
                auto [it, fresh] = state.emplace(PairKey{ma, mb}, c);
                if (!fresh) it->second += c;
            }
        }
    Symbol out(nxi, ngen);
    auto flush = [&](const std::map<PairKey, ExtElem>& st) {
        for (auto& [k, c] : st)
            out.add_term(Symbol::add_mono(k.first, k.second, nxi), c);
    };
    flush(state);
    int order = 1;
    while (!state.empty()) {
        std::map<PairKey, ExtElem> next;
        for (auto& [k, c] : state) {
            for (int i = 1; i <= nxi; ++i) {
                int ei = Symbol::exp_of(k.first, i);
                if (ei == 0) continue;
                for (int j = 1; j <= nxi; ++j) {
                    if (j == i) continue;
                    int ej = Symbol::exp_of(k.second, j);
                    if (ej == 0) continue;
                    const ExtElem& rij = r_pairing.at(i, j);
                    if (rij.is_zero()) continue;
                    // one application of -1/4 R_ij d_xi_i d_eta_j, divided
                    // by the running order for the exponential 1/m!
                    ExtElem add = (Scalar::rational(-1, 4 * order) * Scalar(ei * ej)) *
                                  (rij * c);
                    if (add.is_zero()) continue;
                    PairKey kk{Symbol::with_exp(k.first, i, ei - 1),
                               Symbol::with_exp(k.second, j, ej - 1)};
                    auto [it, fresh] = next.emplace(kk, add);
                    if (!fresh) {
                        it->second += add;
                        if (it->second.is_zero()) next.erase(it);
                    }
                }
            }
        }
        state = std::move(next);
        flush(state);
        ++order;
        if (order > 64) throw std::logic_error("star: expansion failed to terminate");
    }
    return out;
}

}  // namespace clifftrace
