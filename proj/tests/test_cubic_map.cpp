#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "cubiclin/cubic_map.hpp"

using namespace cubiclin;
using test::reference_matrix;
using test::rv;

TEST_CASE("standard map evaluation") {
    CubicMap f = CubicMap::standard(reference_matrix());
    REQUIRE(f.dim() == 3);

    // A e1 = (1,2,1), so F(e1) = e1 + (1,8,1)
    CHECK(eval_map(f, rv({1, 0, 0})) == rv({2, 8, 1}));
    // kernel direction passes through unchanged
    CHECK(eval_map(f, rv({1, 1, 1})) == rv({1, 1, 1}));
    CHECK(eval_map(f, rv({0, 0, 0})) == rv({0, 0, 0}));
    // A(1,0,1) = (5,5,5), cube is (125,125,125)
    CHECK(eval_map(f, rv({1, 0, 1})) == rv({126, 125, 126}));

    CHECK_THROWS_AS(eval_map(f, rv({1, 0})), DimensionMismatch);
}

TEST_CASE("hat map evaluation") {
    CubicMap g = CubicMap::hat(reference_matrix());
    // x^3 = (1,0,0), A(1,0,0) = (1,2,1)
    CHECK(eval_map(g, rv({1, 0, 0})) == rv({2, 2, 1}));
    // x^3 = (1,1,1) lies in the kernel
    CHECK(eval_map(g, rv({1, 1, 1})) == rv({1, 1, 1}));
    // x = (2,1,1): x^3 = (8,1,1), A(8,1,1) = (8-5+4, 16-5+3, 8-5+4) = (7,14,7)
    CHECK(eval_map(g, rv({2, 1, 1})) == rv({9, 15, 8}));
}

TEST_CASE("floating evaluation tracks the exact one") {
    CubicMap f = CubicMap::standard(reference_matrix());
    Rng rng(5150);
    for (int trial = 0; trial < 25; ++trial) {
        Vec x = test::random_rational_vec(rng, 3);
        Vec exact = eval_map(f, x);
        FloatVec approx = eval_map(f, to_float(x));
        REQUIRE_FALSE(approx.overflowed);
        for (std::size_t i = 0; i < 3; ++i) {
            double e = to_double(exact[i]);
            CHECK(approx.coords[i] ==
                  doctest::Approx(e).epsilon(1e-12).scale(std::max(1.0, std::fabs(e))));
        }
    }
}

TEST_CASE("jacobian at a point") {
    CubicMap f = CubicMap::standard(reference_matrix());
    Mat j = jacobian(f, rv({1, 0, 0}));
    // I + 3 diag((1,4,1)) A
    Mat expect = Mat::from_rows({{4, -15, 12}, {24, -59, 36}, {3, -15, 13}});
    CHECK(j == expect);
    CHECK(trace(j) == Rat(-42));

    // at the origin the cubic term has zero derivative
    CHECK(jacobian(f, rv({0, 0, 0})) == Mat::identity(3));

    CubicMap g = CubicMap::hat(reference_matrix());
    CHECK_THROWS_AS(jacobian(g, rv({1, 0, 0})), PreconditionViolated);
}

TEST_CASE("jacobian matches finite differences in direction") {
    CubicMap f = CubicMap::standard(reference_matrix());
    Rng rng(606);
    for (int trial = 0; trial < 10; ++trial) {
        Vec x = test::random_rational_vec(rng, 3);
        Vec h = test::random_rational_vec(rng, 3);
        Rat eps = make_rat(1, 1000000);
        Vec lhs = eval_map(f, x + eps * h) - eval_map(f, x);
        Vec jh = jacobian(f, x) * h;
        // |F(x + eps h) - F(x) - eps J h| = O(eps^2)
        Vec resid = lhs - eps * jh;
        double bound = 1e-9 * std::max(1.0, to_double(norm_sq(h)));
        CHECK(to_double(norm_sq(resid)) < bound);
    }
}

TEST_CASE("kernel shift invariance") {
    Mat a = reference_matrix();
    CHECK(kernel_shift_check(a, rv({1, 0, 0}), rv({1, 1, 1})));
    CHECK(kernel_shift_check(a, rv({0, 0, 0}), rv({-2, -2, -2})));
    Vec w{make_rat(7, 3), make_rat(7, 3), make_rat(7, 3)};
    CHECK(kernel_shift_check(a, rv({3, -1, 2}), w));
    CHECK_THROWS_AS(kernel_shift_check(a, rv({1, 0, 0}), rv({1, 0, 0})), NotInKernel);

    Rng rng(8080);
    for (int trial = 0; trial < 30; ++trial) {
        Vec x = test::random_rational_vec(rng, 3);
        Rat t = rng.rational(9, 5);
        CHECK(kernel_shift_check(a, x, t * rv({1, 1, 1})));
    }
}
