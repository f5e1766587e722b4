#pragma once

#include <map>
#include <string>

#include "clifftrace/analytic.hpp"

namespace clifftrace {

// Endomorphism-valued even form on a Z2-graded coefficient space of ranks
// (r+, r-): one block matrix, grading by index threshold.
class EndForm {
public:
    EndForm() = default;
    EndForm(int rank_plus, int rank_minus, int ngen)
        : rp_(rank_plus), rm_(rank_minus), ngen_(ngen),
          m_(form_identity(rank_plus + rank_minus, ngen)) {
        for (auto& row : m_) for (auto& e : row) e = ExtElem(ngen);
    }

    int rank_plus() const { return rp_; }
    int rank_minus() const { return rm_; }
    int dim() const { return rp_ + rm_; }
    int ngen() const { return ngen_; }

    const ExtElem& at(int i, int j) const { return m_.at(i).at(j); }
    void set(int i, int j, const ExtElem& v) {
        if (!v.is_even()) throw std::invalid_argument("EndForm: entries must be even-graded");
        m_.at(i).at(j) = v;
    }
    const FormMat& mat() const { return m_; }

    ExtElem supertrace() const {
        ExtElem t(ngen_);
        for (int i = 0; i < rp_; ++i) t += m_[i][i];
        for (int i = rp_; i < dim(); ++i) t -= m_[i][i];
        return t;
    }

    // Direct sum, block-diagonal on both gradings.
    static EndForm direct_sum(const EndForm& a, const EndForm& b) {
        EndForm r(a.rp_ + b.rp_, a.rm_ + b.rm_, std::max(a.ngen_, b.ngen_));
        auto put = [&](int i, int j, const ExtElem& v) { if (!v.is_zero()) r.set(i, j, v); };
        auto amap = [&](int i) { return i < a.rp_ ? i : b.rp_ + i; };
        auto bmap = [&](int i) { return i < b.rp_ ? a.rp_ + i : a.rp_ + a.rm_ + i; };
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) put(amap(i), amap(j), a.at(i, j));
        for (int i = 0; i < b.dim(); ++i)
            for (int j = 0; j < b.dim(); ++j) put(bmap(i), bmap(j), b.at(i, j));
        return r;
    }

    // Graded tensor product of curvatures: Q1 (x) 1 + 1 (x) Q2. Both inputs
    // must have even entries, so no Koszul signs enter the sum.
    static EndForm tensor_sum(const EndForm& a, const EndForm& b) {
        int rp = a.rp_ * b.rp_ + a.rm_ * b.rm_;
        int rm = a.rp_ * b.rm_ + a.rm_ * b.rp_;
        int ngen = std::max(a.ngen_, b.ngen_);
        EndForm r(rp, rm, ngen);
        int da = a.dim(), db = b.dim();
        // order basis pairs (i,k) by combined parity: ++ and -- first
        std::vector<std::pair<int, int>> basis;
        for (int par = 0; par < 2; ++par)
            for (int i = 0; i < da; ++i)
                for (int k = 0; k < db; ++k) {
                    int p = ((i >= a.rp_) + (k >= b.rp_)) & 1;
                    if (p == par) basis.push_back({i, k});
                }
        auto idx = [&](int i, int k) {
            for (size_t t = 0; t < basis.size(); ++t)
                if (basis[t].first == i && basis[t].second == k) return (int)t;
            return -1;
        };
        for (int i = 0; i < da; ++i)
            for (int k = 0; k < db; ++k) {
                for (int j = 0; j < da; ++j) {
                    const ExtElem& v = a.at(i, j);
                    if (!v.is_zero()) {
                        int row = idx(i, k), col = idx(j, k);
                        r.m_[row][col] += v;
                    }
                }
                for (int l = 0; l < db; ++l) {
                    const ExtElem& v = b.at(k, l);
                    if (!v.is_zero()) {
                        int row = idx(i, k), col = idx(i, l);
                        r.m_[row][col] += v;
                    }
                }
            }
        return r;
    }

private:
    int rp_ = 0, rm_ = 0, ngen_ = 0;
    FormMat m_;
};

// ch = Str(exp Q): graded trace of the matrix exponential, exact for
// nilpotent entries.
inline ExtElem chern_character(const EndForm& q) {
    FormMat e = analytic_even(series_exp(), q.mat());
    ExtElem t(q.ngen());
    for (int i = 0; i < q.rank_plus(); ++i) t += e[i][i];
    for (int i = q.rank_plus(); i < q.dim(); ++i) t -= e[i][i];
    return t;
}

// Curvature-plus-moment data: a grade-2 curvature and, per sample point of
// the Lie algebra, a grade-0 skew moment. mu(0) = 0 always.
class EquivCurvatureData {
public:
    EquivCurvatureData(SkewMat omega) : omega_(std::move(omega)) {}

    void set_moment(const std::string& token, SkewMat mu) {
        if (mu.size() != omega_.size())
            throw std::invalid_argument("EquivCurvatureData: moment size mismatch");
        moments_[token] = std::move(mu);
    }
    const SkewMat& curvature() const { return omega_; }

    SkewMat at(const std::string& token) const {
        if (token == "0") return omega_;
        auto it = moments_.find(token);
        if (it == moments_.end())
            throw std::invalid_argument("EquivCurvatureData: unknown sample point " + token);
        return omega_ + it->second;
    }

private:
    SkewMat omega_;
    std::map<std::string, SkewMat> moments_;
};

inline SkewMat equivariant_curvature(const EquivCurvatureData& data, const std::string& x) {
    return data.at(x);
}

}  // namespace clifftrace
