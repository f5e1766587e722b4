#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clifftrace/lattice.hpp"

namespace clifftrace {

// Least-squares fit of log ||K(x,y)|| against d(x,y) over the site pairs
// whose relative kernel norm falls in [band_lo, band_hi].
struct DecayFit {
    double slope = 0, intercept = 0, r2 = 0;
    int pairs = 0;
    double max_diag = 0, max_offdiag = 0;
};

inline DecayFit fit_kernel_decay(const KernelField& k, const LatticeGeometry& g,
                                 double band_lo = 1e-8, double band_hi = 1e-2) {
    DecayFit fit;
    int n = g.sites();
    double mx = 0;
    for (int i = 0; i < n; ++i) {
        fit.max_diag = std::max(fit.max_diag, k.norm_at(i, i));
        for (int j = 0; j < n; ++j) {
            if (i != j) fit.max_offdiag = std::max(fit.max_offdiag, k.norm_at(i, j));
            mx = std::max(mx, k.norm_at(i, j));
        }
    }
    if (mx == 0) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int m = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double rel = k.norm_at(i, j) / mx;
            if (rel < band_lo || rel > band_hi) continue;
            double x = g.dist(i, j), y = std::log(k.norm_at(i, j));
            sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
            ++m;
        }
    fit.pairs = m;
    if (m < 4) return fit;
    double vx = sxx - sx * sx / m, vy = syy - sy * sy / m, cxy = sxy - sx * sy / m;
    if (vx <= 0) return fit;
    fit.slope = cxy / vx;
    fit.intercept = (sy - fit.slope * sx) / m;
    fit.r2 = (vy > 0) ? (cxy * cxy) / (vx * vy) : 1.0;
    return fit;
}

struct DecayRow {
    double t;
    DecayFit fit;
};

// Per-t decay scan of the index-class kernels. The default band keeps the
// fit inside the decaying regime and clear of the truncation floor.
inline std::vector<DecayRow> kernel_decay_scan(const ModelOperator& model,
                                               const std::vector<double>& ts,
                                               double band_lo = 1e-6,
                                               double band_hi = 1e-3) {
    std::vector<DecayRow> rows;
    for (double t : ts) {
        KernelField k = kernel_field(model, wassermann_class(model.dirac, t));
        rows.push_back({t, fit_kernel_decay(k, model.geom, band_lo, band_hi)});
    }
    return rows;
}

// Multisite cochain over lattice sites with a declared growth certificate.
struct Cochain {
    int degree = 0;  // arity is degree + 1
    double growth_v = 0;
    bool antisymmetric = false;
    bool cyclic = false;
    std::function<double(int)> f0;          // degree 0
    std::vector<std::vector<double>> fvals; // degree 2: three sampled functions
    std::vector<double> omega_density;      // (d_1 d_2 psi)|_Delta density

    static Cochain constant(double c, int sites) {
        Cochain psi;
        psi.degree = 0;
        psi.cyclic = true;
        psi.f0 = [c](int) { return c; };
        psi.omega_density.assign(sites, 0.0);
        return psi;
    }

    double eval(const std::vector<int>& x) const {
        if (degree == 0) return f0(x[0]);
        // antisymmetrisation of f0 (x) f1 (x) f2 over S_3
        const auto& a = fvals[0];
        const auto& b = fvals[1];
        const auto& c = fvals[2];
        int i = x[0], j = x[1], l = x[2];
        return a[i] * (b[j] * c[l] - b[l] * c[j]) - a[j] * (b[i] * c[l] - b[l] * c[i]) +
               a[l] * (b[i] * c[j] - b[j] * c[i]);
    }
};

// Smooth function on the torus with analytic gradient, for building the
// degree-2 cochains and their diagonal form density without differencing.
struct SmoothFn {
    std::function<double(double, double)> f;
    std::function<std::array<double, 2>(double, double)> grad;
};

inline Cochain antisym_product_cochain(const SmoothFn& f0, const SmoothFn& f1,
                                       const SmoothFn& f2, const LatticeGeometry& g,
                                       double growth_v = 0.0) {
    Cochain psi;
    psi.degree = 2;
    psi.antisymmetric = true;
    psi.growth_v = growth_v;
    int n = g.sites();
    psi.fvals.assign(3, std::vector<double>(n));
    psi.omega_density.assign(n, 0.0);
    const SmoothFn* fs[3] = {&f0, &f1, &f2};
    for (int i = 0; i < n; ++i) {
        double x = g.positions[i][0], y = g.positions[i][1];
        for (int a = 0; a < 3; ++a) psi.fvals[a][i] = fs[a]->f(x, y);
        // omega = sum_sigma sgn f_{s0} df_{s1} ^ df_{s2}
        //       = 2 (f0 df1 df2 + f1 df2 df0 + f2 df0 df1) as a density
        auto g0 = f0.grad(x, y), g1 = f1.grad(x, y), g2 = f2.grad(x, y);
        auto wedge = [](const std::array<double, 2>& u, const std::array<double, 2>& v) {
            return u[0] * v[1] - u[1] * v[0];
        };
        psi.omega_density[i] = 2.0 * (fs[0]->f(x, y) * wedge(g1, g2) +
                                      fs[1]->f(x, y) * wedge(g2, g0) +
                                      fs[2]->f(x, y) * wedge(g0, g1));
    }
    return psi;
}

struct PairingResult {
    cplx value{0, 0};
    bool refused = false;
    std::string diagnostic;
    double measured_u = 0;
    double r_m = 0;
};

namespace detail {

// decay rate of the kernel per unit distance; wide band, with an endpoint
// fallback when the kernel barely decays across the sample
inline double measured_decay_rate(const KernelField& k, const LatticeGeometry& g) {
    DecayFit fit = fit_kernel_decay(k, g, 1e-9, 0.5);
    if (fit.pairs >= 8 && fit.slope < 0) return -fit.slope;
    int n = g.sites();
    double mx = 0, far_norm = 0, far_d = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mx = std::max(mx, k.norm_at(i, j));
            if (g.dist(i, j) > far_d) {
                far_d = g.dist(i, j);
                far_norm = k.norm_at(i, j);
            }
        }
    if (far_d <= 0 || far_norm <= 0 || mx <= 0) return 0;
    return std::max(0.0, std::log(mx / far_norm) / far_d);
}

// Growth constant of Vol(B_r) <= M_1 e^{r_M r}. The sampled geometries are
// compact, so the volume is bounded and the infimal rate is zero: past the
// diameter the ball count is constant.
inline double tail_growth_rate(const LatticeGeometry& g) {
    int n = g.sites();
    double diam = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) diam = std::max(diam, g.dist(i, j));
    if (diam <= 0) return 0;
    double best = 0;
    for (int i = 0; i < n; i += std::max(1, n / 6)) {
        int c1 = 0, c2 = 0;
        for (int j = 0; j < n; ++j) {
            if (g.dist(i, j) <= diam) ++c1;
            if (g.dist(i, j) <= 2 * diam) ++c2;
        }
        if (c1 > 0 && c2 > c1)
            best = std::max(best, std::log(double(c2) / c1) / diam);
    }
    return best;
}

}  // namespace detail

// tau(psi)(A) = int psi(x_0..x_q) tr(A(x_0,x_1)...A(x_q,x_0)) dmu^{q+1},
// cutoff identically 1 on the desk models. The growth certificate is
// checked against the measured kernel decay before any number is produced.
inline PairingResult tau_pairing(const Cochain& psi, const ModelOperator& model,
                                 const GradedMatrix& a) {
    PairingResult out;
    KernelField k = kernel_field(model, a);
    out.measured_u = detail::measured_decay_rate(k, model.geom);
    out.r_m = detail::tail_growth_rate(model.geom);
    if (psi.degree * psi.growth_v - out.measured_u >= -out.r_m) {
        out.refused = true;
        out.diagnostic = "growth condition violated: q v - u = " +
                         std::to_string(psi.degree * psi.growth_v - out.measured_u) +
                         " not below -r_M = " + std::to_string(-out.r_m);
        return out;
    }
    int n = model.geom.sites();
    if (psi.degree == 0) {
        // collapses to the weighted kernel diagonal; for the constant
        // cochain this is the supertrace of the mode-space class
        bool is_const = true;
        double c0 = psi.f0(0);
        for (int i = 1; i < n && is_const; ++i) is_const = (psi.f0(i) == c0);
        if (is_const) {
            out.value = c0 * (a.pp.trace() + a.mm.trace());
            return out;
        }
        cplx acc = 0;
        for (int i = 0; i < n; ++i)
            acc += model.geom.weights[i] * psi.f0(i) * (k.pp(i, i) + k.mm(i, i));
        out.value = acc;
        return out;
    }
    if (psi.degree != 2)
        throw std::invalid_argument("tau_pairing: only degrees 0 and 2 are realised");

    // tau = 3 [ T(f0,f1,f2) - T(f0,f2,f1) ] with
    // T(a,b,c) = Tr(D_a K D_b K D_c K), D_x = diag(w_i f_x(i)) (x) Id_2
    int two_n = 2 * n;
    Eigen::MatrixXcd kk(two_n, two_n);
    kk.topLeftCorner(n, n) = k.pp;
    kk.topRightCorner(n, n) = k.pm;
    kk.bottomLeftCorner(n, n) = k.mp;
    kk.bottomRightCorner(n, n) = k.mm;
    auto weighted = [&](const std::vector<double>& f) {
        Eigen::VectorXcd d(two_n);
        for (int i = 0; i < n; ++i) {
            d(i) = f[i] * model.geom.weights[i];
            d(n + i) = f[i] * model.geom.weights[i];
        }
        return (d.asDiagonal() * kk).eval();
    };
    Eigen::MatrixXcd m0 = weighted(psi.fvals[0]);
    Eigen::MatrixXcd m1 = weighted(psi.fvals[1]);
    Eigen::MatrixXcd m2 = weighted(psi.fvals[2]);
    cplx t_even = (m0 * m1 * m2).trace();
    cplx t_odd = (m0 * m2 * m1).trace();
    out.value = 3.0 * (t_even - t_odd);
    return out;
}

struct SweepRow {
    double t;
    cplx tau;
    cplx target;
    double abs_err = 0;
    bool refused = false;
    std::string diagnostic;
};

// The paper's pairing target at n = 2, q = 1:
// (-1)^{n/2-q} (2 pi i)^{n/2-2q} q!/(2q)! int c0 Ahat ^ ch0 ^ omega_f;
// on the flat torus with a rank-one twist only the degree-zero parts of
// Ahat and ch0 meet the 2-form omega_f.
inline cplx pairing_target(const Cochain& psi, const LatticeGeometry& g) {
    double integral = 0;
    for (int i = 0; i < g.sites(); ++i)
        integral += g.weights[i] * psi.omega_density[i];
    return integral * 0.5 / cplx(0, 2 * std::numbers::pi);
}

inline std::vector<SweepRow> pairing_limit_sweep(const Cochain& psi,
                                                 const ModelOperator& model,
                                                 const std::vector<double>& ts) {
    std::vector<SweepRow> rows;
    cplx target = (psi.degree == 2) ? pairing_target(psi, model.geom)
                                    : cplx(model.expected_index, 0);
    for (double t : ts) {
        SweepRow row;
        row.t = t;
        row.target = target;
        PairingResult pr = tau_pairing(psi, model, wassermann_class(model.dirac, t));
        row.refused = pr.refused;
        row.diagnostic = pr.diagnostic;
        if (!pr.refused) {
            row.tau = pr.value;
            row.abs_err = std::abs(pr.value - target);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace clifftrace
