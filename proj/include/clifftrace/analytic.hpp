#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <vector>

#include "clifftrace/skew.hpp"

namespace clifftrace {

// Dense square matrix of exterior-form entries; the workhorse behind the
// analytic power series on even elements.
using FormMat = std::vector<std::vector<ExtElem>>;

inline FormMat form_identity(int n, int ngen) {
    FormMat r(n, std::vector<ExtElem>(n, ExtElem(ngen)));
    for (int i = 0; i < n; ++i) r[i][i] = ExtElem(ngen, Scalar(1));
    return r;
}
inline FormMat form_from_skew(const SkewMat& w) {
    int n = w.size();
    FormMat r(n, std::vector<ExtElem>(n, ExtElem(w.ngen())));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) r[i][j] = w.at(i + 1, j + 1);
    return r;
}
inline FormMat form_mul(const FormMat& a, const FormMat& b) {
    int n = a.size(), m = b[0].size(), k = b.size();
    int ngen = 0;
    for (auto& row : a) for (auto& e : row) ngen = std::max(ngen, e.ngen());
    for (auto& row : b) for (auto& e : row) ngen = std::max(ngen, e.ngen());
    FormMat r(n, std::vector<ExtElem>(m, ExtElem(ngen)));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (int j = 0; j < m; ++j) {
                if (b[l][j].is_zero()) continue;
                r[i][j] += a[i][l] * b[l][j];
            }
        }
    return r;
}
inline FormMat form_add(const FormMat& a, const FormMat& b) {
    FormMat r = a;
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j];
    return r;
}
inline FormMat form_scale(const Scalar& c, const FormMat& a) {
    FormMat r = a;
    for (auto& row : r) for (auto& e : row) e = c * e;
    return r;
}
inline ExtElem form_trace(const FormMat& a) {
    ExtElem t = a[0][0];
    for (size_t i = 1; i < a.size(); ++i) t += a[i][i];
    return t;
}
inline double form_max_abs(const FormMat& a) {
    double m = 0;
    for (auto& row : a) for (auto& e : row) m = std::max(m, e.max_abs());
    return m;
}
inline bool form_is_zero(const FormMat& a) {
    for (auto& row : a) for (auto& e : row) if (!e.is_zero()) return false;
    return true;
}
inline FormMat form_promote(const FormMat& a) {
    FormMat r = a;
    for (auto& row : r) for (auto& e : row) e = e.promote();
    return r;
}
inline FormMat form_nilpotent_part(const FormMat& a) {
    FormMat r = a;
    for (auto& row : r) for (auto& e : row) e = e.nilpotent_part();
    return r;
}
inline bool form_numeric_free(const FormMat& a) {
    for (auto& row : a) for (auto& e : row)
        if (!e.scalar_part().is_zero()) return false;
    return true;
}

inline double spectral_radius(const std::vector<std::vector<cplx>>& m) {
    int n = m.size();
    Eigen::MatrixXcd e(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e(i, j) = m[i][j];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(e, false);
    double r = 0;
    for (int i = 0; i < n; ++i) r = std::max(r, std::abs(es.eigenvalues()(i)));
    return r;
}

// Power-series descriptor: exact rational coefficients a_k of sum a_k x^k.
struct PowerSeries {
    std::string name;
    std::function<mpq_class(int)> coeff;
};

inline PowerSeries series_exp() {
    return {"exp", [](int k) { return mpq_class(mpq_class(1) / factorial_q(k)); }};
}
// sinh(x)/x = sum x^{2m} / (2m+1)!
inline PowerSeries series_sinh_ratio() {
    return {"sinh_ratio", [](int k) {
        if (k % 2) return mpq_class(0);
        return mpq_class(mpq_class(1) / factorial_q(k + 1));
    }};
}
// log(1+x) = sum (-1)^{k+1} x^k / k
inline PowerSeries series_log1p() {
    return {"log1p", [](int k) {
        if (k == 0) return mpq_class(0);
        mpq_class c(1, k);
        return (k % 2) ? c : mpq_class(-c);
    }};
}

// Applies the series to a matrix of even form entries. Exact truncation at
// the nilpotency order when the entries carry no numeric part; otherwise a
// float tail bound of 1e-14 relative is enforced.
inline FormMat analytic_even(const PowerSeries& f, const FormMat& m,
                             double tol = 1e-14, int max_terms = 200) {
    int n = m.size();
    int ngen = 0;
    for (auto& row : m) for (auto& e : row) ngen = std::max(ngen, e.ngen());
    bool nilpotent = form_numeric_free(m);
    FormMat id = form_identity(n, ngen);
    if (nilpotent) {
        FormMat r = form_scale(Scalar::exact(f.coeff(0), 0), id);
        FormMat pw = id;
        for (int k = 1; k <= ngen; ++k) {
            pw = form_mul(pw, m);
            if (form_is_zero(pw)) break;
            mpq_class c = f.coeff(k);
            if (c != 0) r = form_add(r, form_scale(Scalar::exact(c, 0), pw));
        }
        return r;
    }
    FormMat mf = form_promote(m);
    FormMat r = form_scale(Scalar::floating(f.coeff(0).get_d()), id);
    FormMat pw = form_promote(id);
    double scale = std::max(1.0, form_max_abs(mf));
    double last1 = 1e300, last2 = 1e300;
    for (int k = 1; k < max_terms; ++k) {
        pw = form_mul(pw, mf);
        mpq_class c = f.coeff(k);
        if (c != 0) {
            FormMat term = form_scale(Scalar::floating(c.get_d()), pw);
            r = form_add(r, term);
            last2 = last1;
            last1 = form_max_abs(term);
        }
        double ref = tol * std::max(scale, form_max_abs(r));
        if (k > 6 && std::max(last1, last2) < ref) return r;
    }
    throw std::domain_error("analytic_even: series did not meet the tail bound");
}

// det^{1/2} of I + (numeric part A0 - I) + nilpotent part: positive branch
// on the numeric part (all sinh-ratio eigenvalues on the positive real
// axis), exp(tr log / 2) on the unipotent correction.
inline ExtElem det_sqrt(const FormMat& a) {
    int n = a.size();
    int ngen = 0;
    for (auto& row : a) for (auto& e : row) ngen = std::max(ngen, e.ngen());
    // split: A = A0 + V
    Eigen::MatrixXcd a0(n, n);
    bool unit_numeric = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a0(i, j) = a[i][j].scalar_part().to_complex();
            cplx want = (i == j) ? cplx(1, 0) : cplx(0, 0);
            if (a0(i, j) != want) unit_numeric = false;
        }
    ExtElem sqrt_d0(ngen, Scalar(1));
    FormMat a0_inv_v;
    if (unit_numeric) {
        a0_inv_v = form_nilpotent_part(a);
    } else {
        cplx d0 = a0.determinant();
        if (!(d0.real() > 0) || std::abs(d0.imag()) > 1e-10 * std::abs(d0))
            throw std::domain_error("det_sqrt: numeric part leaves the positive branch");
        sqrt_d0 = ExtElem(ngen, Scalar::floating(std::sqrt(d0.real())));
        Eigen::MatrixXcd inv = a0.inverse();
        FormMat v = form_nilpotent_part(a);
        FormMat invf(n, std::vector<ExtElem>(n, ExtElem(ngen)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                invf[i][j] = ExtElem(ngen, Scalar::floating(inv(i, j)));
        a0_inv_v = form_mul(invf, v);
    }
    // det(I + X)^{1/2} = exp(tr log(I + X) / 2), X nilpotent
    FormMat lg = analytic_even(series_log1p(), a0_inv_v);
    ExtElem half_tr = Scalar::rational(1, 2) * form_trace(lg);
    return sqrt_d0 * exp_even(half_tr);
}

// det^{1/2}(sinh(w)/w), the closed-form side of the supertrace identity.
inline ExtElem det_sqrt_sinh_ratio(const SkewMat& w) {
    if (!w.all_entries_nilpotent()) {
        double rho = spectral_radius(w.numeric_part());
        if (rho >= 3.14159265358979)
            throw std::domain_error("det_sqrt_sinh_ratio: spectral radius outside branch-safe region");
    }
    FormMat s = analytic_even(series_sinh_ratio(), form_from_skew(w));
    return det_sqrt(s);
}

// Inverse of the equivariant A-hat genus: det^{1/2}(sinh(W/2)/(W/2)).
inline ExtElem a_hat_inv(const SkewMat& omega) {
    return det_sqrt_sinh_ratio(omega.scaled(Scalar::rational(1, 2)));
}
// The A-hat genus itself, det^{1/2}((W/2)/sinh(W/2)).
inline ExtElem a_hat(const SkewMat& omega) {
    return a_hat_inv(omega).inverse();
}

}  // namespace clifftrace
