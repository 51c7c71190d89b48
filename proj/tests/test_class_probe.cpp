#include <doctest.h>

#include "test_helpers.hpp"
#include "cubiclin/class_probe.hpp"

using namespace cubiclin;
using test::reference_matrix;
using test::rv;

TEST_CASE("nilpotency test certifies the reference matrix as a non-member") {
    Mat a = reference_matrix();
    DruzkowskiVerdict v = druzkowski_test(a, 20, 123);
    CHECK(v.kind == DruzkowskiVerdict::Kind::certified_no);
    REQUIRE(v.witness.has_value());
    // e1 already works: diag((A e1)^2) A = diag(1,4,1) A has trace -15,
    // so the witness minimization lands on the first basis vector.
    CHECK(*v.witness == rv({1, 0, 0}));
    CHECK_NOTHROW(v.verify(a));
    CHECK(v.trials == 20);
    CHECK(v.seed == 123);
}

TEST_CASE("nilpotency test accepts strictly upper triangular matrices") {
    Mat a(3, 3);
    a(0, 1) = 4;
    a(0, 2) = -7;
    a(1, 2) = 2;
    DruzkowskiVerdict v = druzkowski_test(a, 30, 99);
    CHECK(v.kind == DruzkowskiVerdict::Kind::probably_yes);
    CHECK_FALSE(v.witness.has_value());
    CHECK(v.note.find("Schwartz-Zippel") != std::string::npos);

    DruzkowskiVerdict z = druzkowski_test(Mat(4, 4), 5, 1);
    CHECK(z.kind == DruzkowskiVerdict::Kind::probably_yes);
}

TEST_CASE("nilpotency test rejects the identity with a basis witness") {
    DruzkowskiVerdict v = druzkowski_test(Mat::identity(3), 10, 7);
    CHECK(v.kind == DruzkowskiVerdict::Kind::certified_no);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == rv({1, 0, 0}));
}

TEST_CASE("nilpotency test input validation and determinism") {
    CHECK_THROWS_AS(druzkowski_test(reference_matrix(), 0, 1), PreconditionViolated);
    CHECK_THROWS_AS(druzkowski_test(Mat(2, 3), 5, 1), DimensionMismatch);

    DruzkowskiVerdict a = druzkowski_test(reference_matrix(), 15, 2026);
    DruzkowskiVerdict b = druzkowski_test(reference_matrix(), 15, 2026);
    CHECK(a.kind == b.kind);
    CHECK(*a.witness == *b.witness);
}

TEST_CASE("a fabricated nilpotency certificate is rejected") {
    DruzkowskiVerdict fake;
    fake.kind = DruzkowskiVerdict::Kind::certified_no;
    fake.witness = rv({1, 1, 1});  // A(1,1,1) = 0, so the product matrix vanishes
    CHECK_THROWS_AS(fake.verify(reference_matrix()), PreconditionViolated);

    DruzkowskiVerdict missing;
    missing.kind = DruzkowskiVerdict::Kind::certified_no;
    CHECK_THROWS_AS(missing.verify(reference_matrix()), PreconditionViolated);
}

TEST_CASE("root probe finds no nonzero root for the reference matrix") {
    ClassZVerdict v = class_z_probe(reference_matrix(), default_lambda_grid(), 2, 42);
    CHECK(v.kind == ClassZVerdict::Kind::no_counterexample_found);
    CHECK(v.stats.runs == static_cast<long>(default_lambda_grid().size()) * 2 * 3);
    CHECK(v.stats.converged_to_zero > 0);
}

TEST_CASE("root probe finds the obvious root when one exists") {
    // For the 1x1 system x + lambda x^3 = 0, any lambda < 0 has the
    // nonzero roots +-1/sqrt(-lambda).
    Mat one(1, 1);
    one(0, 0) = 1;
    ClassZVerdict v = class_z_probe(one, default_lambda_grid(), 1, 9);
    REQUIRE(v.kind == ClassZVerdict::Kind::counterexample);
    CHECK(v.lambda < 0.0);
    double r2 = v.root[0] * v.root[0];
    CHECK(r2 * (-v.lambda) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_NOTHROW(v.verify(one));
}

TEST_CASE("root probe validation and determinism") {
    CHECK_THROWS_AS(class_z_probe(reference_matrix(), {1.0}, 0, 1), PreconditionViolated);
    CHECK_THROWS_AS(class_z_probe(Mat(2, 3), {1.0}, 1, 1), DimensionMismatch);

    ClassZVerdict a = class_z_probe(reference_matrix(), default_lambda_grid(), 2, 77);
    ClassZVerdict b = class_z_probe(reference_matrix(), default_lambda_grid(), 2, 77);
    CHECK(a.kind == b.kind);
    CHECK(a.stats.converged_to_zero == b.stats.converged_to_zero);
    CHECK(a.stats.diverged == b.stats.diverged);
    CHECK(a.stats.budget_exceeded == b.stats.budget_exceeded);
    CHECK(a.stats.stalled == b.stats.stalled);
}

TEST_CASE("a fabricated probe counterexample is rejected") {
    ClassZVerdict fake;
    fake.kind = ClassZVerdict::Kind::counterexample;
    fake.lambda = 1.0;
    fake.root.coords = {0.5, 0.5, 0.5};  // residual nowhere near zero
    CHECK_THROWS_AS(fake.verify(reference_matrix()), PreconditionViolated);

    // residual passes but the root is numerically the origin
    ClassZVerdict tiny;
    tiny.kind = ClassZVerdict::Kind::counterexample;
    tiny.lambda = -1.0;
    tiny.root.coords = {1e-13, 0.0, 0.0};
    CHECK_THROWS_AS(tiny.verify(Mat::identity(3)), PreconditionViolated);
}

TEST_CASE("lambda grid shape") {
    std::vector<double> grid = default_lambda_grid();
    REQUIRE(grid.size() == 13);
    CHECK(grid[0] == 0.0);
    CHECK(grid[1] == doctest::Approx(0.01));
    CHECK(grid[2] == doctest::Approx(-0.01));
    CHECK(grid[11] == doctest::Approx(1000.0));
    CHECK(grid[12] == doctest::Approx(-1000.0));
}
