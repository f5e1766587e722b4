#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "clifftrace/exterior.hpp"

using namespace clifftrace;

namespace {

ExtElem random_elem(std::mt19937_64& rng, int ngen, int max_terms) {
    std::uniform_int_distribution<std::uint64_t> mask(0, (1ull << ngen) - 1);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 4);
    ExtElem e(ngen);
    int t = 1 + static_cast<int>(rng() % max_terms);
    for (int i = 0; i < t; ++i)
        e.add_term(IndexSet(mask(rng)),
                   Scalar::exact(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))));
    return e;
}

ExtElem random_homogeneous(std::mt19937_64& rng, int ngen, int grade) {
    std::uniform_int_distribution<long> num(-4, 4);
    ExtElem e(ngen);
    for (int tries = 0; tries < 20 && e.is_zero(); ++tries) {
        std::uint64_t m = 0;
        while (std::popcount(m) != grade)
            m = rng() & ((1ull << ngen) - 1);
        e.add_term(IndexSet(m), Scalar(num(rng)));
    }
    return e;
}

}  // namespace

TEST_CASE("wedge basics") {
    const int N = 4;
    ExtElem j1 = ExtElem::generator(N, 1);
    ExtElem j2 = ExtElem::generator(N, 2);

    CHECK(j1 * j2 == ExtElem::monomial(N, IndexSet::of({1, 2})));
    CHECK(j2 * j1 == -ExtElem::monomial(N, IndexSet::of({1, 2})));
    CHECK((j1 * j1).is_zero());

    ExtElem one(N, Scalar(1));
    ExtElem a = one + ExtElem::monomial(N, IndexSet::of({1, 2}));
    ExtElem b = one + ExtElem::monomial(N, IndexSet::of({3, 4}));
    ExtElem expect = one + ExtElem::monomial(N, IndexSet::of({1, 2})) +
                     ExtElem::monomial(N, IndexSet::of({3, 4})) +
                     ExtElem::monomial(N, IndexSet::of({1, 2, 3, 4}));
    CHECK(a * b == expect);
}

TEST_CASE("wedge dimension mismatch") {
    CHECK_THROWS_AS(ExtElem::generator(4, 1) * ExtElem::generator(6, 1),
                    std::invalid_argument);
}

TEST_CASE("graded commutativity and associativity on random elements") {
    std::mt19937_64 rng(12345);
    const int N = 6;
    for (int rep = 0; rep < 60; ++rep) {
        int ga = 1 + rep % 3, gb = 1 + (rep / 3) % 4;
        ExtElem a = random_homogeneous(rng, N, ga);
        ExtElem b = random_homogeneous(rng, N, gb);
        ExtElem lhs = a * b;
        ExtElem rhs = b * a;
        if ((ga & 1) && (gb & 1)) rhs = -rhs;
        CHECK(lhs == rhs);
    }
    for (int rep = 0; rep < 40; ++rep) {
        ExtElem a = random_elem(rng, N, 4);
        ExtElem b = random_elem(rng, N, 4);
        ExtElem c = random_elem(rng, N, 4);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("eps sign rule") {
    CHECK(eps(IndexSet::of({1}), IndexSet::of({2}), 2) == 1);
    CHECK(eps(IndexSet::of({1}), IndexSet::of({1, 2}), 2) == 0);
    CHECK(eps(IndexSet::of({2}), IndexSet::of({1}), 2) == -1);
    CHECK(eps(IndexSet::of({1}), IndexSet::of({2}), 4) == 0);  // union not full

    // eps(A,B) eps(B,A) = (-1)^{|A||B|} whenever both nonzero
    std::mt19937_64 rng(99);
    const int n = 6;
    for (int rep = 0; rep < 200; ++rep) {
        std::uint64_t a = rng() & ((1ull << n) - 1);
        IndexSet A(a), B = IndexSet::full(n).minus(A);
        int e1 = eps(A, B, n), e2 = eps(B, A, n);
        REQUIRE(e1 != 0);
        REQUIRE(e2 != 0);
        int expect = ((A.card() * B.card()) % 2) ? -1 : 1;
        CHECK(e1 * e2 == expect);
    }

    // eps agrees with the wedge product of the basis monomials
    for (int rep = 0; rep < 100; ++rep) {
        std::uint64_t a = rng() & ((1ull << n) - 1);
        IndexSet A(a), B = IndexSet::full(n).minus(A);
        ExtElem prod = ExtElem::monomial(n, A) * ExtElem::monomial(n, B);
        CHECK(prod.coeff(IndexSet::full(n)) == Scalar(eps(A, B, n)));
    }
}

TEST_CASE("exp_even") {
    const int N = 4;
    SECTION("exp(0) = 1") {
        CHECK(exp_even(ExtElem(N)) == ExtElem(N, Scalar(1)));
    }
    SECTION("exp(J12) = 1 + J12") {
        ExtElem j12 = ExtElem::monomial(N, IndexSet::of({1, 2}));
        CHECK(exp_even(j12) == ExtElem(N, Scalar(1)) + j12);
    }
    SECTION("two commuting blades") {
        Scalar th = Scalar::rational(3, 7), ph = Scalar::rational(-2, 5);
        ExtElem a = th * ExtElem::monomial(N, IndexSet::of({1, 2}));
        ExtElem b = ph * ExtElem::monomial(N, IndexSet::of({3, 4}));
        ExtElem expect = ExtElem(N, Scalar(1)) + a + b +
                         (th * ph) * ExtElem::monomial(N, IndexSet::of({1, 2, 3, 4}));
        CHECK(exp_even(a + b) == expect);
        // exp(a+b) = exp(a) exp(b) on the commutative even part
        CHECK(exp_even(a + b) == exp_even(a) * exp_even(b));
    }
    SECTION("odd input rejected") {
        CHECK_THROWS_AS(exp_even(ExtElem::generator(N, 1)), std::invalid_argument);
    }
    SECTION("scalar part exponentiates as a factor") {
        ExtElem a = ExtElem(N, Scalar(2)) + ExtElem::monomial(N, IndexSet::of({1, 2}));
        ExtElem r = exp_even(a);
        double e2 = std::exp(2.0);
        CHECK(std::abs(r.scalar_part().to_complex().real() - e2) < 1e-12);
        CHECK(std::abs(r.coeff(IndexSet::of({1, 2})).to_complex().real() - e2) < 1e-12);
    }
}

TEST_CASE("exp_even additivity property on random even elements") {
    std::mt19937_64 rng(777);
    const int N = 8;
    for (int rep = 0; rep < 25; ++rep) {
        ExtElem a = random_homogeneous(rng, N, 2) + random_homogeneous(rng, N, 4);
        ExtElem b = random_homogeneous(rng, N, 2);
        CHECK(exp_even(a + b) == exp_even(a) * exp_even(b));
    }
}

TEST_CASE("berezin_top") {
    const int N = 4;
    CHECK(berezin_top(ExtElem::monomial(2, IndexSet::of({1, 2})), 2) == Scalar(1));
    CHECK(berezin_top(ExtElem(2, Scalar(1)), 2) == Scalar(0));
    Scalar th = Scalar::rational(1, 3), ph = Scalar::rational(5, 2);
    ExtElem a = th * ExtElem::monomial(N, IndexSet::of({1, 2})) +
                ph * ExtElem::monomial(N, IndexSet::of({3, 4}));
    CHECK(berezin_top(exp_even(a), 4) == th * ph);
}

TEST_CASE("inverse of unit-scalar element") {
    std::mt19937_64 rng(31);
    const int N = 6;
    for (int rep = 0; rep < 20; ++rep) {
        ExtElem a = ExtElem(N, Scalar(1)) + random_homogeneous(rng, N, 2) +
                    random_homogeneous(rng, N, 4);
        CHECK(a * a.inverse() == ExtElem(N, Scalar(1)));
    }
}
