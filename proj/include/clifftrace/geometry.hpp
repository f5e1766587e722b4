#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace clifftrace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on the
// Legendre recurrence.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p0, p1, dp;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0; p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1; p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

// Closed 2-manifold sample: quadrature nodes with positive weights, Gauss
// curvature K and optional line-bundle curvature F per node. F is the
// density with respect to the area element, normalised so that the first
// Chern number is (1/2pi) integral of F dA.
struct SurfaceGeometry {
    struct Node {
        double weight;  // area weight
        double K;       // Gauss curvature sample
        double F;       // line-bundle curvature sample (0 when absent)
    };
    std::vector<Node> nodes;
    std::string name;
    double area_closed_form = 0;

    double area() const {
        double a = 0;
        for (auto& n : nodes) a += n.weight;
        return a;
    }
};

// Round sphere of radius r, Gauss-Legendre in cos(theta) x uniform phi.
// Curvature is supplied in closed form, not by differencing.
inline SurfaceGeometry round_sphere(double r, int n_theta = 48, int n_phi = 96) {
    SurfaceGeometry g;
    g.name = "sphere";
    g.area_closed_form = 4.0 * std::numbers::pi * r * r;
    std::vector<double> xs, ws;
    gauss_legendre(n_theta, xs, ws);
    double dphi = 2.0 * std::numbers::pi / n_phi;
    for (int i = 0; i < n_theta; ++i)
        for (int j = 0; j < n_phi; ++j)
            g.nodes.push_back({ws[i] * dphi * r * r, 1.0 / (r * r), 0.0});
    return g;
}

// Monopole line bundle of integer flux k over the round sphere: constant
// curvature density F = k / (2 r^2), so (1/2pi) int F dA = k.
inline SurfaceGeometry monopole_sphere(double r, int k, int n_theta = 48, int n_phi = 96) {
    SurfaceGeometry g = round_sphere(r, n_theta, n_phi);
    g.name = "monopole";
    for (auto& n : g.nodes) n.F = k / (2.0 * r * r);
    return g;
}

// Flat torus [0,L1) x [0,L2), uniform grid (trapezoid rule is exact for
// smooth periodic integrands up to spectral accuracy).
inline SurfaceGeometry flat_torus(double l1, double l2, int n1 = 32, int n2 = 32, int flux = 0) {
    SurfaceGeometry g;
    g.name = "torus";
    g.area_closed_form = l1 * l2;
    double w = (l1 / n1) * (l2 / n2);
    double f = 2.0 * std::numbers::pi * flux / (l1 * l2);
    for (int i = 0; i < n1 * n2; ++i) g.nodes.push_back({w, 0.0, f});
    return g;
}

// Quadrature sum of a top-degree density sampled at the geometry nodes.
inline double integrate_density(const std::vector<double>& values, const SurfaceGeometry& g) {
    if (values.size() != g.nodes.size())
        throw std::invalid_argument("integrate_density: node-count mismatch");
    double s = 0;
    for (size_t i = 0; i < values.size(); ++i) s += values[i] * g.nodes[i].weight;
    return s;
}

}  // namespace clifftrace
