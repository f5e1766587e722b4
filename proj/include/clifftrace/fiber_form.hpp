#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "clifftrace/exterior.hpp"
#include "clifftrace/quadrature.hpp"

namespace clifftrace {

// Radial cutoff profile chi = f(||x||^2): either the Gaussian chi-family
// limit in closed form, or a smooth compact bump equal to 1 on [0, inner]
// and 0 beyond outer.
struct RadialProfile {
    bool gaussian = true;
    double inner = 1.0, outer = 2.0;

    static RadialProfile gaussian_profile() { return {true, 0, 0}; }
    static RadialProfile compact_profile(double in = 1.0, double out = 2.0) {
        return {false, in, out};
    }

    static double bump(double s) { return s > 0 ? std::exp(-1.0 / s) : 0.0; }
    static double dbump(double s) {
        return s > 0 ? std::exp(-1.0 / s) / (s * s) : 0.0;
    }

    double f(double u) const {
        if (u <= inner) return 1.0;
        if (u >= outer) return 0.0;
        double p = bump(outer - u), q = bump(u - inner);
        return p / (p + q);
    }
    double df(double u) const {
        if (u <= inner || u >= outer) return 0.0;
        double p = bump(outer - u), q = bump(u - inner);
        double dp = -dbump(outer - u), dq = dbump(u - inner);
        double s = p + q;
        return (dp * s - p * (dp + dq)) / (s * s);
    }
};

// Polynomial in fiber coordinates x_i, integer powers of r^2 = ||x||^2,
// and fiber 1-forms dx_i, with base-form coefficients; optionally weighted
// by e^{-||x||^2} (gaussian flag) or by the radial profile f / f'. All
// coefficients share one global power of sqrt(pi).
class FiberForm {
public:
    enum class Radial : std::uint8_t { none, prof, dprof };

    struct Key {
        std::uint64_t xexp = 0;  // 8 bits per coordinate exponent
        int r2pow = 0;
        std::uint64_t dxmask = 0;
        Radial tag = Radial::none;
        auto operator<=>(const Key&) const = default;
    };

    FiberForm() = default;
    FiberForm(int nfiber, int nbase) : nf_(nfiber), nb_(nbase) {}

    static int exp_of(std::uint64_t xexp, int i) { return (xexp >> (8 * (i - 1))) & 0xff; }
    static std::uint64_t with_exp(std::uint64_t xexp, int i, int e) {
        return (xexp & ~(0xffull << (8 * (i - 1)))) | (std::uint64_t(e) << (8 * (i - 1)));
    }

    int nfiber() const { return nf_; }
    int nbase() const { return nb_; }
    bool gaussian() const { return gaussian_; }
    void set_gaussian(bool g) { gaussian_ = g; }
    int pi_half_power() const { return pi_half_; }
    void set_pi_half_power(int p) { pi_half_ = p; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, ExtElem>& terms() const { return terms_; }

    void add_term(const Key& k, const ExtElem& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    FiberForm operator-() const {
        FiberForm r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    friend FiberForm operator+(const FiberForm& a, const FiberForm& b) {
        if (a.gaussian_ != b.gaussian_ || a.pi_half_ != b.pi_half_)
            throw std::invalid_argument("FiberForm: incompatible global weights");
        FiberForm r = a;
        for (auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }

    // Wedge with a single monomial term; the general product of two fiber
    // forms is assembled from these.
    void add_product_term(const Key& ka, const ExtElem& ca, const Key& kb,
                          const ExtElem& cb) {
        int sg = merge_sign(IndexSet(ka.dxmask), IndexSet(kb.dxmask));
        if (sg == 0) return;
        if (ka.tag != Radial::none && kb.tag != Radial::none)
            throw std::invalid_argument("FiberForm: product of two profile-weighted terms");
        Key k;
        k.dxmask = ka.dxmask | kb.dxmask;
        k.r2pow = ka.r2pow + kb.r2pow;
        k.tag = (ka.tag != Radial::none) ? ka.tag : kb.tag;
        k.xexp = ka.xexp;
        for (int i = 1; i <= nf_; ++i)
            k.xexp = with_exp(k.xexp, i, exp_of(ka.xexp, i) + exp_of(kb.xexp, i));
        ExtElem c = ca * cb;
        add_term(k, (sg < 0) ? -c : c);
    }

    // Total fiber exterior derivative, with d e^{-r^2} = -2 sum x_i dx_i
    // e^{-r^2} when the gaussian weight is present. Base coefficients are
    // constant forms. Profile-weighted terms are not differentiated here.
    FiberForm fiber_d() const {
        FiberForm r(nf_, nb_);
        r.gaussian_ = gaussian_;
        r.pi_half_ = pi_half_;
        for (auto& [k, c] : terms_) {
            if (k.tag != Radial::none)
                throw std::invalid_argument("FiberForm: d of profile-weighted term not supported");
            for (int i = 1; i <= nf_; ++i) {
                IndexSet dxi = IndexSet::of({i});
                if (!dxi.disjoint(IndexSet(k.dxmask))) continue;
                int sg = merge_sign(dxi, IndexSet(k.dxmask));
                ExtElem cc = (sg < 0) ? -c : c;
                int e = exp_of(k.xexp, i);
                if (e > 0) {
                    Key kk = k;
                    kk.xexp = with_exp(k.xexp, i, e - 1);
                    kk.dxmask |= dxi.mask;
                    r.add_term(kk, Scalar(e) * cc);
                }
                if (k.r2pow != 0) {
                    Key kk = k;
                    kk.r2pow = k.r2pow - 1;
                    kk.xexp = with_exp(k.xexp, i, e + 1);
                    kk.dxmask |= dxi.mask;
                    r.add_term(kk, Scalar(2 * k.r2pow) * cc);
                }
                if (gaussian_) {
                    Key kk = k;
                    kk.xexp = with_exp(k.xexp, i, e + 1);
                    kk.dxmask |= dxi.mask;
                    r.add_term(kk, Scalar(-2) * cc);
                }
            }
        }
        return r;
    }

    // Fiber components of a given dx-degree at x = 0 (profile factors
    // evaluated there: f(0) = 1, f'(0) = 0, e^{-0} = 1). Terms carrying
    // positive x powers or the dprof tag vanish.
    ExtElem component_at_origin(std::uint64_t dxmask) const {
        ExtElem out(nb_);
        for (auto& [k, c] : terms_) {
            if (k.dxmask != dxmask) continue;
            if (k.xexp != 0 || k.r2pow != 0) continue;
            if (k.tag == Radial::dprof) continue;
            out += c;
        }
        return out;
    }

private:
    int nf_ = 0, nb_ = 0;
    bool gaussian_ = false;
    int pi_half_ = 0;
    std::map<Key, ExtElem> terms_;
};

struct FiberIntegral {
    ExtElem base;        // base-form value multiplying pi^{pi_half_power/2}
    int pi_half_power = 0;
    bool exact = false;

    // Scalar value with the pi power folded in.
    cplx value() const {
        return base.scalar_part().to_complex() *
               std::pow(std::numbers::pi, pi_half_power / 2.0);
    }
};

namespace detail {

// integral over the unit sphere S^{n-1} of the monomial x^a, divided by
// pi^{n/2} (that power is tracked globally); zero if any exponent is odd.
// With all a_i even: 2 * prod (a_i-1)!!/2^{a_i/2} / ((|a|+n)/2 - 1)!.
inline double sphere_monomial_factor(const std::vector<int>& a, int n) {
    long tot = 0;
    for (int e : a) {
        if (e % 2) return 0.0;
        tot += e;
    }
    mpq_class r = 2;
    for (int e : a) {
        for (int j = 1; j <= e / 2; ++j) r *= mpq_class(2 * j - 1, 2);
    }
    r /= factorial_q(static_cast<int>((tot + n) / 2) - 1);
    return r.get_d();
}

// exact 1D gaussian moment: int x^{2b} e^{-x^2} dx = (2b-1)!!/2^b * sqrt(pi)
inline mpq_class gaussian_moment_rational(int e) {
    if (e % 2) return 0;
    int b = e / 2;
    mpq_class m = 1;
    for (int j = 1; j <= b; ++j) m *= mpq_class(2 * j - 1, 2);
    return m;
}

}  // namespace detail

// Integration over the fiber: extracts the dx_1..dx_n top component.
// Gaussian-weighted polynomial terms integrate by exact Wick moments
// (pi^{n/2} tracked in the half-power); profile-weighted terms reduce to
// angular factors times adaptive radial quadrature.
inline FiberIntegral fiber_integral(const FiberForm& u, const RadialProfile& prof = {}) {
    int n = u.nfiber();
    std::uint64_t top = IndexSet::full(n).mask;
    FiberIntegral out;
    out.base = ExtElem(u.nbase());
    out.pi_half_power = u.pi_half_power();
    out.exact = true;

    ExtElem float_acc(u.nbase());
    bool has_gaussian_part = false, has_profile_part = false;

    for (auto& [k, c] : u.terms()) {
        if (k.dxmask != top) continue;
        if (k.tag == FiberForm::Radial::none) {
            if (!u.gaussian())
                throw std::invalid_argument("fiber_integral: unintegrable unweighted term");
            if (k.r2pow < 0)
                throw std::invalid_argument("fiber_integral: negative radial power under gaussian weight");
            has_gaussian_part = true;
            if (k.r2pow == 0) {
                mpq_class m = 1;
                bool zero = false;
                for (int i = 1; i <= n; ++i) {
                    m *= detail::gaussian_moment_rational(FiberForm::exp_of(k.xexp, i));
                    if (m == 0) { zero = true; break; }
                }
                if (!zero) out.base += ExtElem(u.nbase(), Scalar::exact(m, 0)) * c;
            } else {
                // multinomial expansion of (x_1^2 + .. + x_n^2)^p
                std::function<void(int, int, std::uint64_t, mpq_class)> rec =
                    [&](int rem, int i, std::uint64_t xexp, mpq_class coefq) {
                        if (i == n) {
                            std::uint64_t xe = FiberForm::with_exp(
                                xexp, n, FiberForm::exp_of(xexp, n) + 2 * rem);
                            mpq_class m = coefq;
                            for (int j = 1; j <= n; ++j)
                                m *= detail::gaussian_moment_rational(FiberForm::exp_of(xe, j));
                            if (m != 0)
                                out.base += ExtElem(u.nbase(), Scalar::exact(m, 0)) * c;
                            return;
                        }
                        for (int take = 0; take <= rem; ++take) {
                            mpq_class binom = 1;
                            for (int t = 0; t < take; ++t)
                                binom *= mpq_class(rem - t, t + 1);
                            rec(rem - take, i + 1,
                                FiberForm::with_exp(xexp, i, FiberForm::exp_of(xexp, i) + 2 * take),
                                coefq * binom);
                        }
                    };
                rec(k.r2pow, 1, k.xexp, 1);
            }
        } else {
            has_profile_part = true;
            std::vector<int> a(n);
            long atot = 0;
            for (int i = 1; i <= n; ++i) {
                a[i - 1] = FiberForm::exp_of(k.xexp, i);
                atot += a[i - 1];
            }
            double ang = detail::sphere_monomial_factor(a, n);
            if (ang == 0) continue;
            bool dtag = (k.tag == FiberForm::Radial::dprof);
            int r2 = k.r2pow;
            double rmax = std::sqrt(prof.outer) + 1e-9;
            double rmin = dtag ? std::max(0.0, std::sqrt(prof.inner) - 1e-9) : 0.0;
            auto integrand = [&](double r) {
                double u2 = r * r;
                double radial = dtag ? prof.df(u2) : prof.f(u2);
                return std::pow(r, double(atot + 2 * r2 + n - 1)) * radial;
            };
            double rad = detail::adaptive_simpson(integrand, rmin, rmax, 1e-12);
            // the pi^{n/2} hidden in the angular factor is added to the
            // tracked half power at the end (see below)
            float_acc += ExtElem(u.nbase(), Scalar::floating(ang * rad)) * c;
        }
    }

    if (has_gaussian_part) out.pi_half_power += n;
    if (has_profile_part) {
        if (has_gaussian_part)
            throw std::invalid_argument("fiber_integral: mixed gaussian and profile weights");
        out.pi_half_power += n;  // from the sphere surface measure
        out.base = float_acc;
        out.exact = false;
    }
    for (auto& [s, cc] : out.base.terms())
        if (!cc.is_exact()) out.exact = false;
    return out;
}

}  // namespace clifftrace
