#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "clifftrace/clifford.hpp"
#include "clifftrace/matrix_rep.hpp"

using namespace clifftrace;

namespace {

CliffElem random_cliff(std::mt19937_64& rng, int n, int ngen, int max_terms) {
    std::uniform_int_distribution<long> num(-3, 3);
    CliffElem u(n, ngen);
    int t = 1 + static_cast<int>(rng() % max_terms);
    for (int i = 0; i < t; ++i) {
        IndexSet I(rng() & ((1ull << n) - 1));
        IndexSet s(rng() & ((1ull << ngen) - 1));
        u.add_term(I, ExtElem::monomial(ngen, s, Scalar(num(rng))));
    }
    return u;
}

// homogeneous of given total parity
CliffElem random_homog_cliff(std::mt19937_64& rng, int n, int ngen, int parity) {
    std::uniform_int_distribution<long> num(-3, 3);
    CliffElem u(n, ngen);
    for (int i = 0; i < 3; ++i) {
        IndexSet I(rng() & ((1ull << n) - 1));
        IndexSet s(rng() & ((1ull << ngen) - 1));
        if (((I.card() + s.card()) & 1) != parity) continue;
        u.add_term(I, ExtElem::monomial(ngen, s, Scalar(num(rng))));
    }
    return u;
}

}  // namespace

TEST_CASE("clifford relations") {
    const int n = 4, N = 4;
    auto g = [&](int i) { return CliffElem::gamma(n, N, IndexSet::of({i})); };
    CliffElem one = CliffElem::scalar(n, N, Scalar(1));

    CHECK(g(1) * g(1) == one);
    CHECK(g(1) * g(2) == CliffElem::gamma(n, N, IndexSet::of({1, 2})));
    CHECK(g(1) * g(2) + g(2) * g(1) == CliffElem(n, N));
    // (g1 g2)^2 = -1
    CliffElem g12 = g(1) * g(2);
    CHECK(g12 * g12 == -one);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            CHECK(g(i) * g(j) + g(j) * g(i) == CliffElem(n, N));
}

TEST_CASE("supertrace basis values") {
    const int N = 2;
    CHECK(str(CliffElem::gamma(2, N, IndexSet::of({1, 2}))) ==
          ExtElem(N, Scalar::exact(0, 2)));
    CHECK(str(CliffElem::scalar(2, N, Scalar(1))).is_zero());
    CHECK(str(CliffElem::gamma(2, N, IndexSet::of({1}))).is_zero());

    // (J1 (x) g1) (J2 (x) g2) -> str = -2i J12
    CliffElem a = ExtElem::generator(N, 1) * CliffElem::gamma(2, N, IndexSet::of({1}));
    CliffElem b = ExtElem::generator(N, 2) * CliffElem::gamma(2, N, IndexSet::of({2}));
    ExtElem expect = Scalar::exact(0, -2) * ExtElem::monomial(N, IndexSet::of({1, 2}));
    CHECK(str(a * b) == expect);
}

TEST_CASE("str is A-linear over even forms") {
    std::mt19937_64 rng(5);
    const int n = 4, N = 4;
    for (int rep = 0; rep < 30; ++rep) {
        CliffElem u = random_cliff(rng, n, N, 4);
        ExtElem alpha = ExtElem::monomial(N, IndexSet::of({1, 2}), Scalar(3));
        CHECK(str(alpha * u) == alpha * str(u));
    }
}

TEST_CASE("c_map") {
    const int n = 2, N = 2;
    std::vector<Scalar> e1 = {Scalar(1), Scalar(0)};
    CliffElem c1 = c_map(n, N, e1);
    CHECK(c1 == Scalar::imaginary_unit() * CliffElem::gamma(n, N, IndexSet::of({1})));
    CHECK(c_map(n, N, {Scalar(0), Scalar(0)}).is_zero());
    CHECK_THROWS_AS(c_map(n, N, {Scalar(1)}), std::invalid_argument);

    // c(z)^2 = -sum z_k^2
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> num(-3, 3);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Scalar> z = {Scalar(num(rng)), Scalar(num(rng))};
        Scalar zz = z[0] * z[0] + z[1] * z[1];
        CliffElem c = c_map(n, N, z);
        CHECK(c * c == CliffElem::scalar(n, N, -zz));
    }
}

TEST_CASE("matrix representation oracle") {
    for (int n : {2, 4, 6}) {
        MatrixRep rep(n);
        // involutions, pairwise anticommuting
        for (int i = 1; i <= n; ++i) {
            auto sq = MatrixRep::mul(rep.gamma(i), rep.gamma(i));
            auto id = MatrixRep::identity(rep.dim());
            for (int a = 0; a < rep.dim(); ++a)
                for (int b = 0; b < rep.dim(); ++b)
                    CHECK(std::abs(sq[a][b] - id[a][b]) < 1e-14);
        }
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                auto ac = MatrixRep::add(MatrixRep::mul(rep.gamma(i), rep.gamma(j)),
                                         MatrixRep::mul(rep.gamma(j), rep.gamma(i)));
                for (auto& row : ac)
                    for (auto& v : row) CHECK(std::abs(v) < 1e-14);
            }
        // normalisation on the full monomial
        cplx full = rep.supertrace(rep.monomial(IndexSet::full(n)));
        cplx expect = std::pow(cplx(0, 2), n / 2);
        CHECK(std::abs(full - expect) < 1e-12);
        // vanishing on proper submonomials
        for (std::uint64_t m = 0; m + 1 < (1ull << n); ++m)
            CHECK(std::abs(rep.supertrace(rep.monomial(IndexSet(m)))) < 1e-12);
    }
}

TEST_CASE("basis supertrace equals matrix supertrace on random elements") {
    std::mt19937_64 rng(99);
    const int n = 4, N = 0;
    MatrixRep rep(n);
    for (int rep_i = 0; rep_i < 100; ++rep_i) {
        CliffElem u(n, N);
        int terms = 1 + static_cast<int>(rng() % 5);
        std::uniform_int_distribution<long> num(-3, 3);
        for (int t = 0; t < terms; ++t)
            u.add_term(IndexSet(rng() & ((1ull << n) - 1)), ExtElem(N, Scalar(num(rng))));
        cplx via_basis = str(u).scalar_part().to_complex();
        cplx via_matrix = rep.supertrace(u);
        CHECK(std::abs(via_basis - via_matrix) < 1e-12);
    }
    // and the two agree monomial by monomial for n in {2,4,6}
    for (int nn : {2, 4, 6}) {
        MatrixRep r2(nn);
        for (std::uint64_t m = 0; m < (1ull << nn); ++m) {
            CliffElem u = CliffElem::gamma(nn, 0, IndexSet(m));
            CHECK(std::abs(str(u).scalar_part().to_complex() -
                           r2.supertrace(u)) < 1e-12);
        }
    }
}

TEST_CASE("graded cyclicity of str") {
    std::mt19937_64 rng(123);
    for (int n : {2, 4, 6}) {
        int checked = 0;
        for (int rep = 0; rep < 300 && checked < 100; ++rep) {
            CliffElem a = random_homog_cliff(rng, n, 4, rep & 1);
            CliffElem b = random_homog_cliff(rng, n, 4, (rep >> 1) & 1);
            if (a.is_zero() || b.is_zero()) continue;
            CHECK(str_cyclic_check(a, b));
            ++checked;
        }
        REQUIRE(checked == 100);
    }
    // identity element against anything
    std::mt19937_64 rng2(5);
    CliffElem one = CliffElem::scalar(4, 4, Scalar(1));
    for (int rep = 0; rep < 10; ++rep) {
        CliffElem b = random_homog_cliff(rng2, 4, 4, rep & 1);
        if (b.is_zero()) continue;
        CHECK(str_cyclic_check(one, b));
    }
}

TEST_CASE("cliff_exp exact on nilpotent coefficients") {
    const int n = 2, N = 2;
    // exp(J1 (x) g1) = 1 + J1 g1  (square vanishes by J nilpotency)
    CliffElem x = ExtElem::generator(N, 1) * CliffElem::gamma(n, N, IndexSet::of({1}));
    CliffElem e = cliff_exp(x);
    CHECK(e == CliffElem::scalar(n, N, Scalar(1)) + x);
}

TEST_CASE("cliff_exp float path matches closed form") {
    // exp(theta g1 g2) = cos(theta) + sin(theta) g1 g2
    const int n = 2, N = 0;
    double theta = 0.731;
    CliffElem x = Scalar::floating(theta) * CliffElem::gamma(n, N, IndexSet::of({1, 2}));
    CliffElem e = cliff_exp(x);
    cplx c0 = e.coeff(IndexSet()).scalar_part().to_complex();
    cplx c12 = e.coeff(IndexSet::of({1, 2})).scalar_part().to_complex();
    CHECK(std::abs(c0 - std::cos(theta)) < 1e-14);
    CHECK(std::abs(c12 - std::sin(theta)) < 1e-14);
}
