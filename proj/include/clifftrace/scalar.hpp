#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace clifftrace {

using cplx = std::complex<double>;

// Complex scalar with an exact Gaussian-rational backing by default.
// Mixed exact/float arithmetic promotes the result to float. Exact
// equality is decidable and is what the identity suites rely on.
class Scalar {
public:
    Scalar() : exact_(true) {}
    Scalar(long v) : exact_(true), re_(v) {}

    static Scalar rational(long p, long q) {
        Scalar s;
        s.re_ = mpq_class(p, q);
        s.re_.canonicalize();
        return s;
    }
    static Scalar exact(mpq_class re, mpq_class im) {
        Scalar s;
        s.re_ = std::move(re);
        s.im_ = std::move(im);
        s.re_.canonicalize();
        s.im_.canonicalize();
        return s;
    }
    static Scalar imaginary_unit() { return exact(0, 1); }
    static Scalar floating(cplx z) {
        Scalar s;
        s.exact_ = false;
        s.fz_ = z;
        return s;
    }
    static Scalar floating(double x) { return floating(cplx(x, 0.0)); }

    bool is_exact() const { return exact_; }
    bool is_zero() const {
        return exact_ ? (re_ == 0 && im_ == 0) : (fz_ == cplx(0.0, 0.0));
    }

    const mpq_class& re_q() const { require_exact(); return re_; }
    const mpq_class& im_q() const { require_exact(); return im_; }

    cplx to_complex() const {
        if (exact_) return cplx(re_.get_d(), im_.get_d());
        return fz_;
    }
    double abs() const { return std::abs(to_complex()); }

    Scalar operator-() const {
        if (exact_) return exact(-re_, -im_);
        return floating(-fz_);
    }
    Scalar conj() const {
        if (exact_) return exact(re_, -im_);
        return floating(std::conj(fz_));
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return exact(a.re_ + b.re_, a.im_ + b.im_);
        return floating(a.to_complex() + b.to_complex());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_)
            return exact(a.re_ * b.re_ - a.im_ * b.im_,
                         a.re_ * b.im_ + a.im_ * b.re_);
        return floating(a.to_complex() * b.to_complex());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
        if (a.exact_ && b.exact_) {
            mpq_class n = b.re_ * b.re_ + b.im_ * b.im_;
            return exact((a.re_ * b.re_ + a.im_ * b.im_) / n,
                         (a.im_ * b.re_ - a.re_ * b.im_) / n);
        }
        return floating(a.to_complex() / b.to_complex());
    }
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    // Exact on exact operands; float compare otherwise.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return a.re_ == b.re_ && a.im_ == b.im_;
        return a.to_complex() == b.to_complex();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // e^s: exact 1 at s = 0, float otherwise (the value is transcendental).
    Scalar exp() const {
        if (is_zero()) return Scalar(1);
        return floating(std::exp(to_complex()));
    }

    Scalar pow_int(long k) const {
        Scalar r(1), base = *this;
        if (k < 0) { base = Scalar(1) / base; k = -k; }
        for (; k > 0; k >>= 1) {
            if (k & 1) r *= base;
            base *= base;
        }
        return r;
    }

    Scalar promote() const { return exact_ ? floating(to_complex()) : *this; }

    std::string str() const {
        if (!exact_) {
            return "(" + std::to_string(fz_.real()) + "," +
                   std::to_string(fz_.imag()) + ")";
        }
        std::string s = re_.get_str();
        if (im_ != 0) s += (im_ > 0 ? "+" : "") + im_.get_str() + "i";
        return s;
    }

    // (2i)^{n/2} and friends used by the supertrace normalisations.
    static Scalar two_i_pow(int half) { return exact(0, 2).pow_int(half); }
    static Scalar minus_two_i_pow(int half) { return exact(0, -2).pow_int(half); }

private:
    void require_exact() const {
        if (!exact_) throw std::logic_error("Scalar: float backing has no rational parts");
    }

    bool exact_ = true;
    mpq_class re_, im_;
    cplx fz_{0.0, 0.0};
};

inline mpq_class parse_rational(const std::string& s) {
    mpq_class q(s);
    q.canonicalize();
    return q;
}

// n! as an exact rational (used by truncated exponential series).
inline mpq_class factorial_q(int n) {
    mpq_class f(1);
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace clifftrace
