#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "clifftrace/scalar.hpp"

namespace clifftrace {

// Scale-t Schwartz pair driving the heat-kernel projector:
// f_t(x) = e^{-t^2 x^2},  g_t(x) = e^{-t^2 x^2/2} sqrt((1-e^{-t^2x^2})/x^2) x.
// f^2 + g^2 = f pointwise, which is what makes the class idempotent.
struct SchwartzPair {
    double t;

    double f(double x) const { return std::exp(-t * t * x * x); }

    double g(double x) const {
        double u = t * t * x * x;
        if (std::abs(t * x) < 1e-4) {
            // sqrt((1 - e^{-u})/x^2) x = t x sqrt(1 - u/2 + u^2/6 - u^3/24)
            double s = std::sqrt(1.0 - u / 2 + u * u / 6 - u * u * u / 24);
            return std::exp(-u / 2) * t * x * s;
        }
        return std::exp(-u / 2) * std::sqrt(-std::expm1(-u)) * ((x >= 0) ? 1.0 : -1.0);
    }

    // operator versions evaluated on eigenvalues of D-D+ (lambda = x^2)
    double f_of_sq(double lambda) const { return std::exp(-t * t * lambda); }
    double g_factor_of_sq(double lambda) const {
        // G(lambda) with g(D) block = G(H) D: e^{-t^2 l/2} sqrt((1-e^{-t^2 l})/l)
        double u = t * t * lambda;
        if (u < 1e-8) {
            double ratio = t * t * (1.0 - u / 2 + u * u / 6 - u * u * u / 24);
            return std::exp(-u / 2) * std::sqrt(ratio);
        }
        return std::exp(-u / 2) * std::sqrt(-std::expm1(-u) / lambda);
    }
};

// Dense complex matrix with Z2 block grading.
struct GradedMatrix {
    Eigen::MatrixXcd pp, pm, mp, mm;

    GradedMatrix() = default;
    GradedMatrix(int dp, int dm)
        : pp(Eigen::MatrixXcd::Zero(dp, dp)), pm(Eigen::MatrixXcd::Zero(dp, dm)),
          mp(Eigen::MatrixXcd::Zero(dm, dp)), mm(Eigen::MatrixXcd::Zero(dm, dm)) {}

    int dplus() const { return pp.rows(); }
    int dminus() const { return mm.rows(); }

    // D = [[0, D-],[D+, 0]] with D- = (D+)^*
    static GradedMatrix dirac(const Eigen::MatrixXcd& dplus_block) {
        GradedMatrix d(dplus_block.cols(), dplus_block.rows());
        d.mp = dplus_block;
        d.pm = dplus_block.adjoint();
        return d;
    }

    std::complex<double> supertrace() const { return pp.trace() - mm.trace(); }
    std::complex<double> trace() const { return pp.trace() + mm.trace(); }

    GradedMatrix operator*(const GradedMatrix& o) const {
        GradedMatrix r(dplus(), dminus());
        r.pp = pp * o.pp + pm * o.mp;
        r.pm = pp * o.pm + pm * o.mm;
        r.mp = mp * o.pp + mm * o.mp;
        r.mm = mp * o.pm + mm * o.mm;
        return r;
    }
    GradedMatrix operator-(const GradedMatrix& o) const {
        GradedMatrix r = *this;
        r.pp -= o.pp; r.pm -= o.pm; r.mp -= o.mp; r.mm -= o.mm;
        return r;
    }
    GradedMatrix operator+(const GradedMatrix& o) const {
        GradedMatrix r = *this;
        r.pp += o.pp; r.pm += o.pm; r.mp += o.mp; r.mm += o.mm;
        return r;
    }
    GradedMatrix adjoint() const {
        GradedMatrix r(dplus(), dminus());
        r.pp = pp.adjoint(); r.mm = mm.adjoint();
        r.pm = mp.adjoint(); r.mp = pm.adjoint();
        return r;
    }

    Eigen::MatrixXcd assemble() const {
        int dp = dplus(), dm = dminus();
        Eigen::MatrixXcd a(dp + dm, dp + dm);
        a.topLeftCorner(dp, dp) = pp;
        a.topRightCorner(dp, dm) = pm;
        a.bottomLeftCorner(dm, dp) = mp;
        a.bottomRightCorner(dm, dm) = mm;
        return a;
    }
    double op_norm() const {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(assemble());
        return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    }
};

namespace detail {
struct SpectralData {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hp, hm;
};
inline SpectralData spectra(const GradedMatrix& d) {
    if ((d.pm - d.mp.adjoint()).norm() > 1e-12 * (1 + d.mp.norm()))
        throw std::invalid_argument("wassermann_class: operator is not self-adjoint");
    SpectralData s;
    s.hp.compute(d.pm * d.mp);  // D- D+ on V+
    s.hm.compute(d.mp * d.pm);  // D+ D- on V-
    return s;
}
inline Eigen::MatrixXcd apply_fn(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& es,
                                 const std::function<double(double)>& fn) {
    Eigen::VectorXd v = es.eigenvalues();
    Eigen::VectorXcd fv(v.size());
    for (int i = 0; i < v.size(); ++i) fv(i) = fn(std::max(0.0, v(i)));
    return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace detail

// The heat-kernel index class: the displayed block matrix
//   [[ e^{-t^2 D-D+},  G(D-D+) D- ], [ G(D+D-) D+,  -e^{-t^2 D+D-} ]],
// read as Ind_t itself (the projector W(t) is Ind_t + diag(0, Id), which
// the idempotency check confirms). Removable singularities of the g factor
// are handled by series evaluation.
inline GradedMatrix wassermann_class(const GradedMatrix& d, double t) {
    if (t <= 0) throw std::invalid_argument("wassermann_class: t must be positive");
    SchwartzPair sp{t};
    detail::SpectralData s = detail::spectra(d);
    GradedMatrix w(d.dplus(), d.dminus());
    w.pp = detail::apply_fn(s.hp, [&](double l) { return sp.f_of_sq(l); });
    w.mm = -detail::apply_fn(s.hm, [&](double l) { return sp.f_of_sq(l); });
    Eigen::MatrixXcd gp = detail::apply_fn(s.hp, [&](double l) { return sp.g_factor_of_sq(l); });
    Eigen::MatrixXcd gm = detail::apply_fn(s.hm, [&](double l) { return sp.g_factor_of_sq(l); });
    w.pm = gp * d.pm;  // G(D-D+) D-
    w.mp = gm * d.mp;  // G(D+D-) D+
    return w;
}

// tr e^{-t^2 D-D+} - tr e^{-t^2 D+D-}: equals dim ker D+ - dim ker D- for
// every t by the pairing of nonzero spectra.
inline double str_index(const GradedMatrix& d, double t) {
    detail::SpectralData s = detail::spectra(d);
    double acc = 0;
    for (int i = 0; i < s.hp.eigenvalues().size(); ++i)
        acc += std::exp(-t * t * std::max(0.0, s.hp.eigenvalues()(i)));
    for (int i = 0; i < s.hm.eigenvalues().size(); ++i)
        acc -= std::exp(-t * t * std::max(0.0, s.hm.eigenvalues()(i)));
    return acc;
}

// ||p^2 - p||_op and ||p - p*||_op for p = Ind_t + diag(0, Id).
struct IdempotencyResidual {
    double projector = 0;
    double self_adjoint = 0;
};

inline IdempotencyResidual idempotency_residual(const GradedMatrix& ind_t) {
    GradedMatrix p = ind_t;
    p.mm += Eigen::MatrixXcd::Identity(p.dminus(), p.dminus());
    IdempotencyResidual r;
    r.projector = ((p * p) - p).op_norm();
    r.self_adjoint = (p - p.adjoint()).op_norm();
    return r;
}

}  // namespace clifftrace
