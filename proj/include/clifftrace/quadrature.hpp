#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace clifftrace::detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol, int depth = 0) {
    double c = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fc = f(c);
    double l = 0.5 * (c - a) / 3.0 * (fa + 4 * f(0.5 * (a + c)) + fc);
    double r = 0.5 * (b - c) / 3.0 * (fc + 4 * f(0.5 * (c + b)) + fb);
    double whole = (b - a) / 6.0 * (fa + 4 * fc + fb);
    if (depth > 40) return l + r;
    if (std::abs(l + r - whole) < 15 * tol) return l + r + (l + r - whole) / 15.0;
    return adaptive_simpson(f, a, c, tol / 2, depth + 1) +
           adaptive_simpson(f, c, b, tol / 2, depth + 1);
}

// Adaptive iterated integration of f over the cube [lo,hi]^q.
inline double adaptive_cube(const std::function<double(const std::vector<double>&)>& f,
                            int q, double lo, double hi, double tol) {
    std::vector<double> pt(q, 0.0);
    std::function<double(int, double)> level = [&](int d, double level_tol) -> double {
        std::function<double(double)> g = [&](double s) {
            pt[d] = s;
            if (d + 1 == q) return f(pt);
            return level(d + 1, level_tol / (hi - lo + 1));
        };
        return adaptive_simpson(g, lo, hi, level_tol);
    };
    return level(0, tol);
}

}  // namespace clifftrace::detail
