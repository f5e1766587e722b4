#pragma once

#include "clifftrace/charclass.hpp"
#include "clifftrace/fiber_form.hpp"
#include "clifftrace/mq_checks.hpp"

namespace clifftrace {

// Reinterpret an exterior element over nb generators inside a larger
// algebra; base generators keep their positions.
inline ExtElem ext_embed(const ExtElem& e, int ngen2) {
    ExtElem r(ngen2);
    for (auto& [s, c] : e.terms()) r.add_term(s, c);
    return r;
}

inline SkewMat skew_embed(const SkewMat& w, int ngen2) {
    SkewMat r(w.size(), ngen2);
    for (int i = 1; i <= w.size(); ++i)
        for (int j = i + 1; j <= w.size(); ++j)
            r.set(i, j, ext_embed(w.at(i, j), ngen2));
    return r;
}

// Chern representative of the spinor cocycle with the Gaussian weight:
// e^{-||x||^2} Str_spinor(exp(i sum dx_k gamma_k - 1/2 sum W_ij g_i g_j)).
// The curvature enters with the Pf(-W/2pi) orientation.
inline FiberForm spinor_chern_rep(const SkewMat& omega) {
    int n = omega.size(), nb = omega.ngen();
    int next = nb + n;
    // 1/4 gamma^t (-W) gamma = half_gamma_quadratic(-W/2)
    SkewMat w = skew_embed(omega.scaled(Scalar::rational(-1, 2)), next);
    CliffElem expo = half_gamma_quadratic(w);
    for (int k = 1; k <= n; ++k)
        expo += Scalar::imaginary_unit() * (ExtElem::generator(next, nb + k) *
                CliffElem::gamma(n, next, IndexSet::of({k})));
    ExtElem s = str_spinor(cliff_exp(expo));

    FiberForm u(n, nb);
    u.set_gaussian(true);
    std::uint64_t base_mask = (nb == 0) ? 0 : ((1ull << nb) - 1);
    for (auto& [mask, c] : s.terms()) {
        FiberForm::Key k;
        k.dxmask = mask.mask >> nb;
        ExtElem coeff(nb);
        coeff.add_term(IndexSet(mask.mask & base_mask), c);
        u.add_term(k, coeff);
    }
    return u;
}

// The Thom representative. Gaussian profile: the chi-family limit in
// closed form, (-2pi i)^{-n/2} A-hat(W) wedge the spinor Chern
// representative. Compact profile: chi Pf(-W/2pi) plus the transgression
// term, whose t-integral is resolved into Gamma factors in the radial
// variable.
inline FiberForm thom_form(const SkewMat& omega, const RadialProfile& prof) {
    int n = omega.size(), nb = omega.ngen();
    if (n % 2) throw std::invalid_argument("thom_form: odd rank");
    if (prof.gaussian) {
        FiberForm rep = spinor_chern_rep(omega);
        ExtElem ahat = a_hat(omega);
        Scalar norm = Scalar(1) / Scalar::minus_two_i_pow(n / 2);
        FiberForm u(n, nb);
        u.set_gaussian(true);
        u.set_pi_half_power(-n);
        for (auto& [k, c] : rep.terms()) u.add_term(k, norm * (ahat * c));
        return u;
    }

    FiberForm u(n, nb);
    u.set_pi_half_power(-n);
    // chi Pf(-W/2pi): rational part (-1/2)^{n/2} Pf(W), pi power tracked
    {
        FiberForm::Key k;
        k.tag = FiberForm::Radial::prof;
        Scalar half = Scalar::rational(-1, 2).pow_int(n / 2);
        u.add_term(k, half * pfaffian(omega));
    }
    // - pi^{-n/2} d(chi) ^ S, with
    // S = sum_{k, odd I, j} x_k eps({k},I) eps(I u k, I') Pf((-W/2)_{I'})
    //     * Gamma((|I|+1)/2)/2 * r^{-(|I|+1)} J^I,  d(chi) = 2 f' x_j dx_j
    SkewMat half_neg = omega.scaled(Scalar::rational(-1, 2));
    IndexSet full = IndexSet::full(n);
    for (int k = 1; k <= n; ++k) {
        IndexSet kset = IndexSet::of({k});
        for_each_subset(full.minus(kset), [&](IndexSet I) {
            if (!(I.card() & 1)) return;
            IndexSet Ik = I.unite(kset), Ip = full.minus(Ik);
            int e1 = merge_sign(Ik, Ip);
            int e2 = merge_sign(kset, I);
            ExtElem pf = pf_sub(half_neg, Ip);
            if (pf.is_zero()) return;
            mpq_class gam = factorial_q((I.card() - 1) / 2) / 2;
            ExtElem s_coeff = (Scalar::exact(gam, 0) * Scalar(e1 * e2)) * pf;
            for (int j = 1; j <= n; ++j) {
                if (I.contains(j)) continue;
                int e3 = merge_sign(IndexSet::of({j}), I);
                FiberForm::Key key;
                key.tag = FiberForm::Radial::dprof;
                key.dxmask = I.unite(IndexSet::of({j})).mask;
                key.r2pow = -(I.card() + 1) / 2;
                key.xexp = FiberForm::with_exp(0, j, 1);
                key.xexp = FiberForm::with_exp(key.xexp, k,
                                               FiberForm::exp_of(key.xexp, k) + 1);
                // -1 (transgression orientation) * 2 (from d chi) * e3
                u.add_term(key, Scalar(-2 * e3) * s_coeff);
            }
        });
    }
    return u;
}

inline FiberForm thom_form(const EquivCurvatureData& data, const std::string& x,
                           const RadialProfile& prof) {
    return thom_form(data.at(x), prof);
}

struct ThomReport {
    int n = 0;
    cplx integral;
    double deviation_from_one = 0;
    bool exact = false;
    std::string profile;
};

inline ThomReport check_thom_normalisation(const SkewMat& omega, const RadialProfile& prof) {
    ThomReport r;
    r.n = omega.size();
    r.profile = prof.gaussian ? "gaussian" : "compact";
    FiberIntegral fi = fiber_integral(thom_form(omega, prof), prof);
    r.integral = fi.value();
    r.deviation_from_one = std::abs(fi.value() - cplx(1, 0));
    r.exact = fi.exact && fi.pi_half_power == 0 &&
              fi.base == ExtElem(omega.ngen(), Scalar(1));
    return r;
}

struct RrReport {
    int n = 0;
    cplx integral;        // fiber integral of the spinor Chern representative
    cplx expected;        // (-2 pi i)^{n/2}
    bool exact = false;
    bool consistent = false;  // integral / thom integral matches exactly
};

// Flat case: the fiber integral of the spinor-cocycle Chern representative
// against (-2 pi i)^{n/2}; the Thom normalisation makes the ratio exact.
inline RrReport riemann_roch_flat_check(int n) {
    RrReport r;
    r.n = n;
    SkewMat flat(n, 0);
    FiberIntegral ch = fiber_integral(spinor_chern_rep(flat));
    r.integral = ch.value();
    r.expected = std::pow(cplx(0, -2 * std::numbers::pi), n / 2);
    // exact comparison: rational part (-2i)^{n/2}, pi half power n
    r.exact = ch.exact && ch.pi_half_power == n &&
              ch.base == ExtElem(0, Scalar::minus_two_i_pow(n / 2));
    FiberIntegral tu = fiber_integral(thom_form(flat, RadialProfile::gaussian_profile()));
    r.consistent = tu.exact && tu.pi_half_power == 0 &&
                   tu.base == ExtElem(0, Scalar(1)) && r.exact;
    return r;
}

}  // namespace clifftrace
