#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "clifftrace/pairing.hpp"

using namespace clifftrace;

namespace {

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

}  // namespace

TEST_CASE("schwartz pair identity f^2 + g^2 = f") {
    for (double t : {0.05, 0.3, 1.0, 2.0}) {
        SchwartzPair sp{t};
        CHECK(sp.f(0) == 1.0);
        CHECK(sp.g(0) == 0.0);
        for (double x = -50; x <= 50; x += 0.37) {
            double lhs = sp.f(x) * sp.f(x) + sp.g(x) * sp.g(x);
            CHECK(std::abs(lhs - sp.f(x)) < 1e-14);
        }
        // series window against the cancellation-free direct formula
        for (double x : {1e-5, 5e-5, 2e-4, 1e-3}) {
            double u = t * t * x * x;
            double direct = std::exp(-u / 2) * std::sqrt(-std::expm1(-u));
            CHECK(std::abs(sp.g(x) - direct) < 1e-14);
        }
    }
}

TEST_CASE("wassermann class closed forms") {
    SECTION("D = 0 of dims (3,2) gives diag(I, -I)") {
        GradedMatrix d(3, 2);
        GradedMatrix w = wassermann_class(d, 0.7);
        CHECK((w.pp - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-14);
        CHECK((w.mm + Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-14);
        CHECK(w.pm.norm() < 1e-14);
        CHECK(w.mp.norm() < 1e-14);
    }
    SECTION("scalar D+ = x > 0") {
        double x = 1.37, t = 0.61;
        Eigen::MatrixXcd dp(1, 1);
        dp(0, 0) = x;
        GradedMatrix w = wassermann_class(GradedMatrix::dirac(dp), t);
        double f = std::exp(-t * t * x * x);
        double h = std::exp(-t * t * x * x / 2) * std::sqrt(1 - std::exp(-t * t * x * x));
        CHECK(std::abs(w.pp(0, 0) - cplx(f, 0)) < 1e-14);
        CHECK(std::abs(w.mm(0, 0) + cplx(f, 0)) < 1e-14);
        CHECK(std::abs(w.pm(0, 0) - cplx(h, 0)) < 1e-13);
        CHECK(std::abs(w.mp(0, 0) - cplx(h, 0)) < 1e-13);
    }
    SECTION("non-self-adjoint input is rejected") {
        GradedMatrix d(2, 2);
        d.mp = Eigen::MatrixXcd::Identity(2, 2);
        d.pm = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
        CHECK_THROWS_AS(wassermann_class(d, 1.0), std::invalid_argument);
    }
}

TEST_CASE("idempotency of the index class") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> tdist(0.05, 2.0);
    for (int rep = 0; rep < 100; ++rep) {
        int dp = 5 + static_cast<int>(rng() % 16);
        int dm = 5 + static_cast<int>(rng() % 16);
        GradedMatrix d = GradedMatrix::dirac(random_matrix(rng, dm, dp));
        double t = tdist(rng);
        IdempotencyResidual res = idempotency_residual(wassermann_class(d, t));
        CHECK(res.projector < 1e-10);
        CHECK(res.self_adjoint < 1e-12);
    }
}

TEST_CASE("str_index basics") {
    SECTION("zero map C^3 -> C^2 has index 1 for all t") {
        GradedMatrix d(3, 2);
        for (double t : {0.1, 0.5, 1.0, 2.0})
            CHECK(std::abs(str_index(d, t) - 1.0) < 1e-14);
    }
    SECTION("invertible square D+ has index 0") {
        std::mt19937_64 rng(2);
        Eigen::MatrixXcd dp = random_matrix(rng, 6, 6);
        dp += 3.0 * Eigen::MatrixXcd::Identity(6, 6);
        GradedMatrix d = GradedMatrix::dirac(dp);
        for (double t : {0.2, 0.9})
            CHECK(std::abs(str_index(d, t)) < 1e-12);
    }
}

TEST_CASE("circle model") {
    SECTION("index equals winding across the t grid") {
        std::vector<double> ts = {0.1, 0.5, 1.0, 2.0};
        for (int w : {0, 1, 2, -2, 3}) {
            ModelOperator m = circle_dirac(64, w);
            for (double t : ts)
                CHECK(std::abs(str_index(m.dirac, t) - w) < 1e-9);
            // t-independence
            double mn = 1e300, mx = -1e300;
            for (double t : ts) {
                double v = str_index(m.dirac, t);
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            CHECK(mx - mn < 1e-9);
        }
    }
    SECTION("under-resolved size is rejected") {
        CHECK_THROWS_AS(circle_dirac(12, 2), std::invalid_argument);
    }
    SECTION("frames are orthonormal against the measure") {
        ModelOperator m = circle_dirac(64, 1);
        Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(m.geom.weights.data(),
                                                              m.geom.weights.size());
        Eigen::MatrixXcd gram = m.frame_plus.adjoint() * w.asDiagonal() * m.frame_plus;
        CHECK((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).norm() < 1e-10);
    }
}

TEST_CASE("torus model") {
    SECTION("landau frames are orthonormal") {
        for (int k : {1, 2}) {
            ModelOperator m = torus_dirac(16, k, 8);
            Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(m.geom.weights.data(),
                                                                  m.geom.weights.size());
            Eigen::MatrixXcd gram = m.frame_plus.adjoint() * w.asDiagonal() * m.frame_plus;
            CHECK((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).norm() < 1e-8);
        }
    }
    SECTION("index equals flux") {
        for (int k : {0, 1, -3}) {
            int n = (std::abs(k) >= 3) ? 24 : 16;
            ModelOperator m = torus_dirac(n, k);
            for (double t : {0.3, 0.7, 1.3})
                CHECK(std::abs(str_index(m.dirac, t) - k) < 1e-8);
        }
    }
    SECTION("integrality across models") {
        for (int k : {1, 2, 3}) {
            ModelOperator m = torus_dirac(24, k);
            double v = str_index(m.dirac, 0.5);
            CHECK(std::abs(v - std::round(v)) < 1e-8);
        }
    }
}

TEST_CASE("kernel decay scan on the circle") {
    // winding 0: no harmonic modes, so the kernels are in the pure
    // decaying regime the estimate describes
    ModelOperator m = circle_dirac(64, 0);
    std::vector<double> ts = {0.25, 0.5};
    auto rows = kernel_decay_scan(m, ts);
    REQUIRE(rows.size() == 2);
    for (auto& row : rows) {
        CHECK(row.fit.pairs > 20);
        CHECK(row.fit.slope < 0);
        CHECK(row.fit.r2 >= 0.99);
        // diagonal entries finite and bounded by the fitted intercept
        CHECK(row.fit.max_diag <= std::exp(row.fit.intercept) * (1 + 1e-9));
    }
    double ratio = rows[0].fit.slope / rows[1].fit.slope;  // should be near t2/t1 = 2
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.5);
}

TEST_CASE("pairing, degree zero") {
    ModelOperator m = circle_dirac(64, 2);
    Cochain one = Cochain::constant(1.0, m.geom.sites());
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        GradedMatrix ind = wassermann_class(m.dirac, t);
        PairingResult pr = tau_pairing(one, m, ind);
        REQUIRE(!pr.refused);
        CHECK(std::abs(pr.value - cplx(str_index(m.dirac, t), 0)) < 1e-10);
        CHECK(std::abs(pr.value - cplx(2, 0)) < 1e-9);
    }
    // zero cochain pairs to zero
    Cochain zero = Cochain::constant(0.0, m.geom.sites());
    PairingResult pz = tau_pairing(zero, m, wassermann_class(m.dirac, 0.5));
    CHECK(std::abs(pz.value) == 0.0);
}

TEST_CASE("pairing growth refusal") {
    ModelOperator m = torus_dirac(12, 1, 6);
    SmoothFn f0{[](double x, double y) { return std::sin(2 * std::numbers::pi * x) *
                                                std::sin(2 * std::numbers::pi * y); },
                [](double x, double y) -> std::array<double, 2> {
                    double c = 2 * std::numbers::pi;
                    return {c * std::cos(c * x / (2 * std::numbers::pi) * c) * 0 +
                                c * std::cos(c * x) * std::sin(c * y),
                            c * std::sin(c * x) * std::cos(c * y)};
                }};
    SmoothFn f1{[](double x, double) { return std::cos(2 * std::numbers::pi * x); },
                [](double x, double) -> std::array<double, 2> {
                    double c = 2 * std::numbers::pi;
                    return {-c * std::sin(c * x), 0.0};
                }};
    SmoothFn f2{[](double, double y) { return std::cos(2 * std::numbers::pi * y); },
                [](double, double y) -> std::array<double, 2> {
                    double c = 2 * std::numbers::pi;
                    return {0.0, -c * std::sin(c * y)};
                }};
    Cochain bad = antisym_product_cochain(f0, f1, f2, m.geom, /*growth_v=*/1e3);
    PairingResult pr = tau_pairing(bad, m, wassermann_class(m.dirac, 0.5));
    CHECK(pr.refused);
    CHECK(!pr.diagnostic.empty());
    Cochain good = antisym_product_cochain(f0, f1, f2, m.geom, 0.0);
    PairingResult ok = tau_pairing(good, m, wassermann_class(m.dirac, 0.5));
    CHECK(!ok.refused);
}
