#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "clifftrace/graded_matrix.hpp"

namespace clifftrace {

// Sampled geometry: site positions, geodesic distance table, measure
// weights.
struct LatticeGeometry {
    std::vector<std::array<double, 2>> positions;
    std::vector<double> weights;
    Eigen::MatrixXd dist;

    int sites() const { return positions.size(); }
};

// A desk-scale model operator: graded spectral data plus frames evaluating
// the mode basis at the lattice sites (orthonormal against the measure).
struct ModelOperator {
    std::string name;
    GradedMatrix dirac;             // [[0, D-],[D+, 0]] in mode space
    Eigen::MatrixXcd frame_plus;    // sites x d+
    Eigen::MatrixXcd frame_minus;   // sites x d-
    LatticeGeometry geom;
    int expected_index = 0;
};

// Spectral-truncation model of the twisted d-bar operator on the circle
// with analytic index w: domain frequencies [-K, K] with symbol nu + 1/2,
// codomain window [-K, K - w]; the w clipped modes are the exact kernel.
inline ModelOperator circle_dirac(int n_sites, int winding) {
    int aw = std::abs(winding);
    if (n_sites < 8 * aw + 8)
        throw std::invalid_argument("circle_dirac: kernel not resolved at this size");
    ModelOperator m;
    m.name = "circle";
    m.expected_index = winding;
    int K = std::max(2 * aw + 2, n_sites / 3);
    while (2 * K + aw + 2 >= n_sites) --K;  // alias-free frames
    int dp = 2 * K + 1;
    int dm = 2 * K + 1 - winding;
    Eigen::MatrixXcd dplus = Eigen::MatrixXcd::Zero(dm, dp);
    for (int a = 0; a < dp; ++a) {
        int nu = a - K;
        int target = nu - winding;  // codomain frequencies -K .. K - winding
        int b = target + K;
        if (b >= 0 && b < dm) dplus(b, a) = nu + 0.5;
    }
    m.dirac = GradedMatrix::dirac(dplus);

    m.geom.positions.resize(n_sites);
    m.geom.weights.assign(n_sites, 2 * std::numbers::pi / n_sites);
    m.geom.dist.resize(n_sites, n_sites);
    for (int i = 0; i < n_sites; ++i) {
        double th = 2 * std::numbers::pi * i / n_sites;
        m.geom.positions[i] = {th, 0.0};
        for (int j = 0; j < n_sites; ++j) {
            double d = std::abs(i - j) * 2 * std::numbers::pi / n_sites;
            m.geom.dist(i, j) = std::min(d, 2 * std::numbers::pi - d);
        }
    }
    double norm = 1.0 / std::sqrt(2 * std::numbers::pi);
    m.frame_plus.resize(n_sites, dp);
    m.frame_minus.resize(n_sites, dm);
    for (int i = 0; i < n_sites; ++i) {
        double th = m.geom.positions[i][0];
        for (int a = 0; a < dp; ++a)
            m.frame_plus(i, a) = norm * std::polar(1.0, (a - K) * th);
        for (int b = 0; b < dm; ++b)
            m.frame_minus(i, b) = norm * std::polar(1.0, (b - K) * th);
    }
    return m;
}

namespace detail {

// Normalised oscillator function h_m(sqrt(B) u) with Gaussian weight.
inline double oscillator_fn(int m, double b_field, double u) {
    double v = std::sqrt(b_field) * u;
    double h0 = 1.0, h1 = 2 * v;
    double h = (m == 0) ? h0 : h1;
    for (int j = 2; j <= m; ++j) {
        double h2 = 2 * v * h1 - 2 * (j - 1) * h0;
        h0 = h1;
        h1 = h2;
        h = h2;
    }
    if (m == 0) h = h0;
    if (m == 1) h = h1;
    double log_norm = 0.25 * std::log(b_field / std::numbers::pi) -
                      0.5 * (m * std::log(2.0) + std::lgamma(m + 1.0));
    return h * std::exp(log_norm - 0.5 * b_field * u * u);
}

// Landau section psi_{m,j}(x,y) on the unit torus with flux k > 0:
// sum over the magnetic-translation images.
inline cplx landau_section(int m, int j, int k, double x, double y) {
    double b_field = 2 * std::numbers::pi * k;
    cplx acc = 0;
    for (int s = -6; s <= 6; ++s) {
        double p = j + double(k) * s;
        acc += std::polar(1.0, 2 * std::numbers::pi * p * x) *
               oscillator_fn(m, b_field, y + p / k);
    }
    return acc;
}

}  // namespace detail

// Flat-torus Dirac operator with U(1) flux k realised on the truncated
// Landau-level basis: levels m = 0..M upstairs, 0..M-1 downstairs, k
// sections each, D+ acting as sqrt(2 B m) level lowering. The k lowest
// Landau sections are the exact kernel; the index is k.
inline ModelOperator torus_dirac(int n_side, int flux, int levels = 14) {
    ModelOperator m;
    m.name = "torus";
    m.expected_index = flux;
    int ak = std::abs(flux);
    if (flux != 0 && n_side * n_side < 16 * ak)
        throw std::invalid_argument("torus_dirac: flux not resolved at this size");

    int ns = n_side * n_side;
    m.geom.positions.resize(ns);
    m.geom.weights.assign(ns, 1.0 / ns);
    m.geom.dist.resize(ns, ns);
    auto wrap = [](double d) { d = std::abs(d); return std::min(d, 1.0 - d); };
    for (int i = 0; i < ns; ++i) {
        double xi = (i % n_side) / double(n_side), yi = (i / n_side) / double(n_side);
        m.geom.positions[i] = {xi, yi};
    }
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j) {
            double dx = wrap(m.geom.positions[i][0] - m.geom.positions[j][0]);
            double dy = wrap(m.geom.positions[i][1] - m.geom.positions[j][1]);
            m.geom.dist(i, j) = std::hypot(dx, dy);
        }

    if (flux == 0) {
        // free twisted-spinor model: plane waves, symbol 2 pi (p + i q),
        // one zero mode on each side
        int pmax = n_side / 3;
        std::vector<std::pair<int, int>> modes;
        for (int p = -pmax; p <= pmax; ++p)
            for (int q = -pmax; q <= pmax; ++q) modes.push_back({p, q});
        int d = modes.size();
        Eigen::MatrixXcd dplus = Eigen::MatrixXcd::Zero(d, d);
        for (int a = 0; a < d; ++a) {
            auto [p, q] = modes[a];
            dplus(a, a) = 2 * std::numbers::pi * cplx(p, q);
        }
        m.dirac = GradedMatrix::dirac(dplus);
        m.frame_plus.resize(ns, d);
        for (int i = 0; i < ns; ++i)
            for (int a = 0; a < d; ++a) {
                auto [p, q] = modes[a];
                m.frame_plus(i, a) = std::polar(
                    1.0, 2 * std::numbers::pi *
                             (p * m.geom.positions[i][0] + q * m.geom.positions[i][1]));
            }
        m.frame_minus = m.frame_plus;
        return m;
    }

    double b_field = 2 * std::numbers::pi * ak;
    int dp = ak * (levels + 1), dm = ak * levels;
    Eigen::MatrixXcd dplus = Eigen::MatrixXcd::Zero(dm, dp);
    for (int mm = 1; mm <= levels; ++mm)
        for (int j = 0; j < ak; ++j)
            dplus((mm - 1) * ak + j, mm * ak + j) = std::sqrt(2 * b_field * mm);
    Eigen::MatrixXcd fp(ns, dp), fm(ns, dm);
    for (int i = 0; i < ns; ++i) {
        double x = m.geom.positions[i][0], y = m.geom.positions[i][1];
        for (int mm = 0; mm <= levels; ++mm)
            for (int j = 0; j < ak; ++j)
                fp(i, mm * ak + j) = detail::landau_section(mm, j, ak, x, y);
        for (int mm = 0; mm < levels; ++mm)
            for (int j = 0; j < ak; ++j)
                fm(i, mm * ak + j) = detail::landau_section(mm, j, ak, x, y);
    }
    if (flux > 0) {
        m.dirac = GradedMatrix::dirac(dplus);
        m.frame_plus = fp;
        m.frame_minus = fm;
    } else {
        // opposite flux: the kernel sits on the minus side
        m.dirac = GradedMatrix::dirac(dplus.adjoint());
        m.frame_plus = fm;
        m.frame_minus = fp;
    }
    return m;
}

// Kernels of the index class against the measure: K(x,y) as 2x2 blocks
// over all site pairs, K = Phi A Phi^* with orthonormal frames.
struct KernelField {
    Eigen::MatrixXcd pp, pm, mp, mm;  // sites x sites each

    cplx trace_pair(int i, int j) const {
        return pp(i, j) * pp(j, i) + pm(i, j) * mp(j, i) + mp(i, j) * pm(j, i) +
               mm(i, j) * mm(j, i);
    }
    cplx trace_triple(int i, int j, int l) const {
        // tr over the 2x2 block structure of K(i,j) K(j,l) K(l,i)
        cplx a00 = pp(i, j) * pp(j, l) + pm(i, j) * mp(j, l);
        cplx a01 = pp(i, j) * pm(j, l) + pm(i, j) * mm(j, l);
        cplx a10 = mp(i, j) * pp(j, l) + mm(i, j) * mp(j, l);
        cplx a11 = mp(i, j) * pm(j, l) + mm(i, j) * mm(j, l);
        return a00 * pp(l, i) + a01 * mp(l, i) + a10 * pm(l, i) + a11 * mm(l, i);
    }
    double norm_at(int i, int j) const {
        return std::sqrt(std::norm(pp(i, j)) + std::norm(pm(i, j)) +
                         std::norm(mp(i, j)) + std::norm(mm(i, j)));
    }
};

inline KernelField kernel_field(const ModelOperator& model, const GradedMatrix& a) {
    KernelField k;
    k.pp = model.frame_plus * a.pp * model.frame_plus.adjoint();
    k.pm = model.frame_plus * a.pm * model.frame_minus.adjoint();
    k.mp = model.frame_minus * a.mp * model.frame_plus.adjoint();
    k.mm = model.frame_minus * a.mm * model.frame_minus.adjoint();
    return k;
}

}  // namespace clifftrace
