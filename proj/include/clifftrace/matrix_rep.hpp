#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "clifftrace/clifford.hpp"

namespace clifftrace {

// Concrete 2^{n/2}-dimensional representation of C_n built from Pauli
// tensor products. Serves as an independent oracle for the abstract basis
// computation; the supertrace functional is normalised so the full
// monomial maps to (2i)^{n/2}.
class MatrixRep {
public:
    using Mat = std::vector<std::vector<cplx>>;

    explicit MatrixRep(int n) : n_(n) {
        if (n <= 0 || n % 2) throw std::invalid_argument("MatrixRep: n must be even");
        if (n > 12) throw std::invalid_argument("MatrixRep: n too large");
        int m = n / 2;
        dim_ = 1 << m;
        Mat sx = {{z0(), z1()}, {z1(), z0()}};
        Mat sy = {{z0(), cplx(0, -1)}, {cplx(0, 1), z0()}};
        Mat sz = {{z1(), z0()}, {z0(), cplx(-1, 0)}};
        Mat id2 = {{z1(), z0()}, {z0(), z1()}};
        for (int k = 0; k < m; ++k) {
            Mat a = {{z1()}}, b = {{z1()}};
            for (int j = 0; j < m; ++j) {
                const Mat& fa = (j < k) ? sz : (j == k ? sx : id2);
                const Mat& fb = (j < k) ? sz : (j == k ? sy : id2);
                a = kron(a, fa);
                b = kron(b, fb);
            }
            gammas_.push_back(a);
            gammas_.push_back(b);
        }
        // chirality sz^{(x)m}: tr(chi * gamma_full) = i^{n/2} 2^{n/2} gives
        // Str(gamma_full) = (2i)^{n/2} with unit normalisation
        chirality_ = {{z1()}};
        for (int j = 0; j < m; ++j) chirality_ = kron(chirality_, sz);
    }

    int n() const { return n_; }
    int dim() const { return dim_; }
    const Mat& gamma(int i) const { return gammas_.at(i - 1); }

    Mat monomial(const IndexSet& I) const {
        Mat r = identity(dim_);
        for (int i : I.elements()) r = mul(r, gammas_[i - 1]);
        return r;
    }

    cplx supertrace(const Mat& a) const {
        cplx t = 0;
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < dim_; ++k) t += chirality_[i][k] * a[k][i];
        return t;
    }

    // Supertrace of a pure-Clifford element through the representation.
    cplx supertrace(const CliffElem& u) const {
        cplx t = 0;
        for (auto& [I, a] : u.terms()) {
            if (!a.is_homogeneous() || a.max_grade() > 0)
                throw std::invalid_argument("MatrixRep: element has form-valued coefficients");
            t += a.scalar_part().to_complex() * supertrace(monomial(I));
        }
        return t;
    }

    // Extends the matrix supertrace A-linearly over exterior coefficients.
    ExtElem supertrace_ext(const CliffElem& u) const {
        ExtElem r(u.ngen());
        for (auto& [I, a] : u.terms())
            r += a * ExtElem(u.ngen(), Scalar::floating(supertrace(monomial(I))));
        return r;
    }

    static Mat identity(int d) {
        Mat r(d, std::vector<cplx>(d, 0));
        for (int i = 0; i < d; ++i) r[i][i] = 1;
        return r;
    }
    static Mat mul(const Mat& a, const Mat& b) {
        int n = a.size(), m = b[0].size(), k = b.size();
        Mat r(n, std::vector<cplx>(m, 0));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < k; ++l) {
                cplx ail = a[i][l];
                if (ail == cplx(0, 0)) continue;
                for (int j = 0; j < m; ++j) r[i][j] += ail * b[l][j];
            }
        return r;
    }
    static Mat add(const Mat& a, const Mat& b) {
        Mat r = a;
        for (size_t i = 0; i < r.size(); ++i)
            for (size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j];
        return r;
    }
    static Mat kron(const Mat& a, const Mat& b) {
        int ra = a.size(), ca = a[0].size(), rb = b.size(), cb = b[0].size();
        Mat r(ra * rb, std::vector<cplx>(ca * cb, 0));
        for (int i = 0; i < ra; ++i)
            for (int j = 0; j < ca; ++j)
                for (int k = 0; k < rb; ++k)
                    for (int l = 0; l < cb; ++l)
                        r[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
        return r;
    }

private:
    static cplx z0() { return {0, 0}; }
    static cplx z1() { return {1, 0}; }

    int n_, dim_;
    std::vector<Mat> gammas_;
    Mat chirality_;
};

inline MatrixRep build_matrix_rep(int n) { return MatrixRep(n); }

}  // namespace clifftrace
