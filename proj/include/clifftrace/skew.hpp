#pragma once

#include <stdexcept>
#include <vector>

#include "clifftrace/exterior.hpp"

namespace clifftrace {

// n x n skew-symmetric matrix with even exterior-form entries. Skewness is
// maintained by construction: set(i,j) writes both (i,j) and (j,i).
class SkewMat {
public:
    SkewMat() = default;
    SkewMat(int n, int ngen) : n_(n), ngen_(ngen),
        a_(n, std::vector<ExtElem>(n, ExtElem(ngen))) {}

    static SkewMat from_numeric(const std::vector<std::vector<Scalar>>& w, int ngen) {
        int n = w.size();
        SkewMat m(n, ngen);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                m.set(i + 1, j + 1, ExtElem(ngen, w[i][j]));
        return m;
    }

    int size() const { return n_; }
    int ngen() const { return ngen_; }

    const ExtElem& at(int i, int j) const { return a_.at(i - 1).at(j - 1); }
    void set(int i, int j, const ExtElem& v) {
        if (i == j) {
            if (!v.is_zero()) throw std::invalid_argument("SkewMat: nonzero diagonal");
            return;
        }
        if (!v.is_even()) throw std::invalid_argument("SkewMat: entry must be even-graded");
        a_.at(i - 1).at(j - 1) = v;
        a_.at(j - 1).at(i - 1) = -v;
    }

    SkewMat scaled(const Scalar& c) const {
        SkewMat r(n_, ngen_);
        for (int i = 1; i <= n_; ++i)
            for (int j = i + 1; j <= n_; ++j) r.set(i, j, c * at(i, j));
        return r;
    }
    friend SkewMat operator+(const SkewMat& x, const SkewMat& y) {
        if (x.n_ != y.n_) throw std::invalid_argument("SkewMat: size mismatch");
        SkewMat r(x.n_, std::max(x.ngen_, y.ngen_));
        for (int i = 1; i <= x.n_; ++i)
            for (int j = i + 1; j <= x.n_; ++j) r.set(i, j, x.at(i, j) + y.at(i, j));
        return r;
    }

    SkewMat submatrix(const IndexSet& I) const {
        auto idx = I.elements();
        int m = idx.size();
        SkewMat r(m, ngen_);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) r.set(i + 1, j + 1, at(idx[i], idx[j]));
        return r;
    }

    bool all_entries_numeric() const {
        for (int i = 1; i <= n_; ++i)
            for (int j = i + 1; j <= n_; ++j)
                if (at(i, j).max_grade() > 0) return false;
        return true;
    }
    bool all_entries_nilpotent() const {
        for (int i = 1; i <= n_; ++i)
            for (int j = i + 1; j <= n_; ++j)
                if (!at(i, j).scalar_part().is_zero()) return false;
        return true;
    }

    std::vector<std::vector<cplx>> numeric_part() const {
        std::vector<std::vector<cplx>> m(n_, std::vector<cplx>(n_, 0));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m[i][j] = a_[i][j].scalar_part().to_complex();
        return m;
    }

private:
    int n_ = 0, ngen_ = 0;
    std::vector<std::vector<ExtElem>> a_;
};

namespace detail {

// Perfect-matching sum; lowest unmatched index pairs with each partner,
// sign tracked by crossing count.
inline void pf_match(const SkewMat& w, std::uint64_t used, int sign, ExtElem prod,
                     ExtElem& acc) {
    int n = w.size();
    int i = 0;
    while (i < n && (used & (1ull << i))) ++i;
    if (i == n) {
        acc += (sign < 0) ? -prod : prod;
        return;
    }
    used |= 1ull << i;
    int passed = 0;
    for (int j = i + 1; j < n; ++j) {
        if (used & (1ull << j)) continue;
        const ExtElem& e = w.at(i + 1, j + 1);
        if (!e.is_zero())
            pf_match(w, used | (1ull << j), (passed & 1) ? -sign : sign, prod * e, acc);
        ++passed;
    }
}

}  // namespace detail

// Division-free Pfaffian. Pf of the empty matrix is 1; odd size gives 0.
inline ExtElem pfaffian(const SkewMat& w) {
    if (w.size() % 2) return ExtElem(w.ngen());
    ExtElem acc(w.ngen());
    if (w.size() == 0) return ExtElem(w.ngen(), Scalar(1));
    detail::pf_match(w, 0, 1, ExtElem(w.ngen(), Scalar(1)), acc);
    return acc;
}

// Expansion along the first row: Pf(w) = sum_k (-1)^k w_{1k} Pf(w_{^1^k}).
// Independent route used to cross-check the matching sum.
inline ExtElem pfaffian_row_expansion(const SkewMat& w) {
    int n = w.size();
    if (n % 2) return ExtElem(w.ngen());
    if (n == 0) return ExtElem(w.ngen(), Scalar(1));
    ExtElem acc(w.ngen());
    for (int k = 2; k <= n; ++k) {
        const ExtElem& e = w.at(1, k);
        if (e.is_zero()) continue;
        IndexSet rest = IndexSet::full(n).minus(IndexSet::of({1, k}));
        ExtElem sub = pfaffian_row_expansion(w.submatrix(rest));
        ExtElem t = e * sub;
        acc += (k % 2 == 0) ? t : -t;
    }
    return acc;
}

inline ExtElem pf_sub(const SkewMat& w, const IndexSet& I) {
    if (I.card() % 2) return ExtElem(w.ngen());
    if (I.empty()) return ExtElem(w.ngen(), Scalar(1));
    return pfaffian(w.submatrix(I));
}

// Determinant over the commutative even subalgebra (Leibniz for small n,
// used only as the Pf^2 = det oracle).
inline ExtElem det_even(const SkewMat& w) {
    int n = w.size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    ExtElem acc(w.ngen());
    // iterate permutations with parity
    std::vector<int> c(n, 0);
    int sign = 1;
    auto add = [&]() {
        ExtElem p(w.ngen(), Scalar(1));
        for (int i = 0; i < n && !p.is_zero(); ++i) p = p * w.at(i + 1, perm[i] + 1);
        acc += (sign < 0) ? -p : p;
    };
    add();
    int i = 0;
    while (i < n) {
        if (c[i] < i) {
            std::swap(perm[(i % 2) ? c[i] : 0], perm[i]);
            sign = -sign;
            add();
            ++c[i];
            i = 0;
        } else {
            c[i++] = 0;
        }
    }
    return acc;
}

}  // namespace clifftrace
