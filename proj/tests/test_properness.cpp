#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "cubiclin/properness.hpp"

using namespace cubiclin;
using test::reference_matrix;
using test::rv;

namespace {

Vec frac(std::initializer_list<long> nums, long den) {
    std::vector<Rat> c;
    for (long n : nums) c.push_back(make_rat(n, den));
    return Vec(std::move(c));
}

// 4x4 instance whose minimum-norm v over the full space escapes Im(A):
// the kernel contains (1,1,1,1) with all coordinates nonzero, but the
// criterion over V = Im(A) has no solution.
Mat gap_matrix() {
    return Mat::from_rows({{Rat(1), Rat(-1), Rat(0), Rat(0)},
                           {Rat(1), Rat(1), Rat(-1), Rat(-1)},
                           {Rat(1), Rat(-1), Rat(0), Rat(0)},
                           {Rat(1), Rat(1), Rat(-1), Rat(-1)}});
}

}  // namespace

TEST_CASE("criterion produces the canonical certificate") {
    Mat a = reference_matrix();
    CriterionOutcome out = criterion_check(a, colspace_basis(a), rv({1, 1, 1}));
    REQUIRE(out.ok());
    CHECK(out.refusal == CriterionRefusal::none);
    const PropernessCertificate& c = *out.certificate;
    CHECK(c.x_inf == rv({1, 1, 1}));
    CHECK(c.v == frac({-1, 2, -1}, 15));
    CHECK_NOTHROW(c.verify());

    // negated direction works symmetrically
    CriterionOutcome neg = criterion_check(a, colspace_basis(a), rv({-1, -1, -1}));
    REQUIRE(neg.ok());
    CHECK(neg.certificate->v == frac({1, -2, 1}, 15));
}

TEST_CASE("criterion refusals") {
    Mat a = reference_matrix();
    SubspaceBasis full = SubspaceBasis::full(3);

    CriterionOutcome zc = criterion_check(a, full, rv({1, 0, 1}));
    CHECK_FALSE(zc.ok());
    CHECK(zc.refusal == CriterionRefusal::zero_coordinate);
    CHECK(criterion_refusal_str(zc.refusal) == "zero_coordinate");

    CriterionOutcome ck = criterion_check(a, full, rv({1, 1, -1}));
    CHECK_FALSE(ck.ok());
    CHECK(ck.refusal == CriterionRefusal::cube_not_in_kernel);

    // identity: x + x^3 never escapes to the kernel
    CriterionOutcome id = criterion_check(Mat::identity(3), full, rv({1, 1, 1}));
    CHECK(id.refusal == CriterionRefusal::cube_not_in_kernel);

    // zero matrix: x itself can never be cancelled
    CriterionOutcome z = criterion_check(Mat(3, 3), full, rv({1, 1, 1}));
    CHECK(z.refusal == CriterionRefusal::no_solution_v);

    // preconditions: V must contain Im(A), x_inf must lie in V
    CHECK_THROWS_AS(criterion_check(a, kernel_basis(a), rv({1, 1, 1})),
                    PreconditionViolated);
    CHECK_THROWS_AS(criterion_check(a, colspace_basis(a), rv({1, 0, 0})),
                    PreconditionViolated);
}

TEST_CASE("criterion over the image refuses when v cannot stay inside") {
    Mat b = gap_matrix();
    Vec ones = rv({1, 1, 1, 1});

    CriterionOutcome inside = criterion_check(b, colspace_basis(b), ones);
    CHECK_FALSE(inside.ok());
    CHECK(inside.refusal == CriterionRefusal::no_solution_v);

    // over the full space a certificate exists, with v outside Im(A)
    CriterionOutcome full = criterion_check(b, SubspaceBasis::full(4), ones);
    REQUIRE(full.ok());
    CHECK(full.certificate->v == frac({-3, 1, 1, 1}, 4));
    CHECK_FALSE(in_subspace(full.certificate->v, colspace_basis(b)).member);
}

TEST_CASE("certificate verification catches tampering") {
    Mat a = reference_matrix();
    PropernessCertificate good = *criterion_check(a, colspace_basis(a), rv({1, 1, 1})).certificate;

    PropernessCertificate bad = good;
    bad.v = frac({-1, 2, -1}, 14);
    CHECK_THROWS_AS(bad.verify(), PreconditionViolated);

    PropernessCertificate wrong_dir = good;
    wrong_dir.x_inf = rv({1, 1, -1});
    CHECK_THROWS_AS(wrong_dir.verify(), PreconditionViolated);

    CHECK_THROWS_AS(PropernessCertificate::make(a, colspace_basis(a), rv({1, 1, 1}),
                                                rv({0, 0, 0})),
                    PreconditionViolated);
}

TEST_CASE("candidate directions for the reference matrix") {
    Mat a = reference_matrix();
    std::vector<Candidate> ks = candidate_directions(a, CandidateSearch{});
    REQUIRE(ks.size() == 2);
    REQUIRE(ks[0].exact.has_value());
    CHECK(*ks[0].exact == rv({1, 1, 1}));
    CHECK(*ks[1].exact == rv({-1, -1, -1}));

    CandidateSearch rnd;
    rnd.mode = CandidateSearch::Mode::randomized;
    rnd.count = 40;
    rnd.seed = 11;
    std::vector<Candidate> rs = candidate_directions(a, rnd);
    CHECK_FALSE(rs.empty());
    for (const Candidate& c : rs) {
        if (!c.exact) continue;
        // kernel is span(1,1,1): every exact candidate is +-c(1,1,1)
        CHECK((*c.exact)[0] == (*c.exact)[1]);
        CHECK((*c.exact)[1] == (*c.exact)[2]);
    }

    // no candidates when the kernel is trivial
    CHECK(candidate_directions(Mat::identity(3), CandidateSearch{}).empty());
    CHECK(candidate_directions(Mat::identity(3), rnd).empty());
}

TEST_CASE("witness table rows and exact decay structure") {
    Mat a = reference_matrix();
    PropernessCertificate cert = *criterion_check(a, colspace_basis(a), rv({1, 1, 1})).certificate;
    std::vector<Rat> gammas{Rat(1), Rat(10), Rat(100)};
    WitnessTable table = build_fhat_witness(cert, gammas);
    REQUIRE(table.rows.size() == 3);

    CHECK(table.rows[0].x == frac({44, 47, 44}, 45));
    CHECK(table.rows[0].fhat == frac({-91, 44, -91}, 2025));
    CHECK(table.rows[1].fhat == frac({-9001, 4499, -9001}, 2025000));

    // closed form: fhat(g) = (v + A(x_inf v^2))/(3g) + A(v^3)/(27 g^3)
    Vec w1 = cert.v + a * hadamard_mul(cert.x_inf, hadamard_mul(cert.v, cert.v));
    Vec w3 = a * hadamard_cube(cert.v);
    for (const WitnessRow& r : table.rows) {
        Vec expect = (Rat(1) / (Rat(3) * r.gamma)) * w1 +
                     (Rat(1) / (Rat(27) * pow_int(r.gamma, 3))) * w3;
        CHECK(r.fhat == expect);
        CHECK(r.x == r.gamma * cert.x_inf + (Rat(1) / (Rat(3) * r.gamma)) * cert.v);
    }

    CHECK_THROWS_AS(build_fhat_witness(cert, {}), PreconditionViolated);
    CHECK_THROWS_AS(build_fhat_witness(cert, {Rat(-1)}), PreconditionViolated);
    CHECK_THROWS_AS(build_fhat_witness(cert, {Rat(2), Rat(2)}), PreconditionViolated);
    CHECK_THROWS_AS(build_fhat_witness(cert, {Rat(3), Rat(2)}), PreconditionViolated);
}

TEST_CASE("lift solver reproduces the pivot-row system") {
    Mat a = reference_matrix();
    LiftSolver solver(a);
    Mat expect = Mat::from_rows({{Rat(42), Rat(39)}, {Rat(39), Rat(38)}});
    CHECK(solver.square_system() == expect);

    Vec y = solver.solve(rv({5, 5, 5}));
    CHECK(a * y == rv({5, 5, 5}));
    // solutions live in the row space
    CHECK(in_subspace(y, rowspace_basis(a)).member);

    CHECK_THROWS_AS(solver.solve(rv({1, 0, 0})), NotInImage);
    CHECK_THROWS_AS(solver.solve(rv({1, 1})), DimensionMismatch);

    // full-rank matrices give the unique solution
    Mat inv = Mat::from_rows({{Rat(2), Rat(1)}, {Rat(1), Rat(1)}});
    LiftSolver si(inv);
    Vec u{Rat(3), Rat(2)};
    CHECK(inv * si.solve(u) == u);
}

TEST_CASE("lifted witness values at gamma = 1") {
    Mat a = reference_matrix();
    PropernessCertificate cert = *criterion_check(a, colspace_basis(a), rv({1, 1, 1})).certificate;
    WitnessTable table = build_fhat_witness(cert, {Rat(1), Rat(10)});
    LiftedWitness lw = lift_witness(a, table);
    REQUIRE(lw.records.size() == 2);
    CHECK_NOTHROW(lw.verify(a));

    const LiftRecord& r = lw.records[0];
    CHECK(r.u == frac({44, 47, 44}, 45));
    CHECK(r.y == frac({71, -97, 26}, 675));
    CHECK(r.v_small == frac({1124, -223, -901}, 30375));
    CHECK(r.x_ker == frac({-91397, -91397, -91397}, 91125));
    CHECK(r.z == frac({-81812, -104492, -87887}, 91125));

    // v_small shrinks, z grows along the ladder
    CHECK(norm_sq(lw.records[1].v_small) < norm_sq(lw.records[0].v_small));
    CHECK(norm_sq(lw.records[1].z) > norm_sq(lw.records[0].z));
}

TEST_CASE("lift rejects witness points outside the image") {
    Mat b = gap_matrix();
    PropernessCertificate cert =
        *criterion_check(b, SubspaceBasis::full(4), rv({1, 1, 1, 1})).certificate;
    WitnessTable table = build_fhat_witness(cert, {Rat(10), Rat(100)});
    CHECK_THROWS_AS(lift_witness(b, table), NotInImage);
}

TEST_CASE("lifted witness verification catches tampering") {
    Mat a = reference_matrix();
    PropernessCertificate cert = *criterion_check(a, colspace_basis(a), rv({1, 1, 1})).certificate;
    LiftedWitness lw = lift_witness(a, build_fhat_witness(cert, {Rat(1), Rat(10)}));

    LiftedWitness bad = lw;
    bad.records[0].z[0] += 1;
    CHECK_THROWS_AS(bad.verify(a), PreconditionViolated);

    LiftedWitness bad2 = lw;
    bad2.records[1].v_small[2] += make_rat(1, 7);
    CHECK_THROWS_AS(bad2.verify(a), PreconditionViolated);
}

TEST_CASE("second-form rows vanish exactly and regenerate the witness") {
    Mat a = reference_matrix();
    PropernessCertificate cert = *criterion_check(a, colspace_basis(a), rv({1, 1, 1})).certificate;
    std::vector<Rat> gammas{Rat(1), Rat(10), Rat(100)};
    std::vector<CompanionRow> rows = companion_witness_rows(cert, gammas);
    WitnessTable table = build_fhat_witness(cert, gammas);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].expr.is_zero());
        CHECK(rows[i].z == pow_int(rows[i].gamma, 3) * hadamard_cube(cert.x_inf));
        CHECK((a * rows[i].z).is_zero());
        CHECK(companion_witness_point(a, rows[i]) == table.rows[i].x);
    }

    // a mismatched pair leaves a nonzero expression that scales with gamma
    Vec wrong_v = frac({-1, 2, -1}, 14);
    Vec e1 = companion_expression(a, rv({1, 1, 1}), wrong_v, Rat(1));
    Vec e10 = companion_expression(a, rv({1, 1, 1}), wrong_v, Rat(10));
    CHECK_FALSE(e1.is_zero());
    CHECK(e10 == Rat(10) * e1);
}

TEST_CASE("line evaluation converges to anchored limits") {
    Mat a = reference_matrix();
    SfOutcome sf = certify_zero_in_Sf(a);
    REQUIRE(sf.ok());
    const LiftedWitness& lw = sf.success->lift;
    Vec anchor(3);

    LineSample plus = nonproper_line(a, lw, 1.0, anchor);
    CHECK(plus.empirical_sign == "+2");
    CHECK(plus.collinearity_residual < 1e-4);
    CHECK(plus.magnitude_residual < 1e-4);
    double expected2 = 2.0;
    double got = 0;
    for (double c : plus.limit.coords) got += c * c;
    CHECK(std::sqrt(got) == doctest::Approx(expected2).epsilon(1e-4));

    LineSample minus = nonproper_line(a, lw, -1.5, anchor);
    CHECK(minus.empirical_sign == plus.empirical_sign);
    CHECK(minus.magnitude_residual < 1e-4);

    LineSample at0 = nonproper_line(a, lw, 0.0, anchor);
    CHECK(at0.empirical_sign == "undetermined");
    CHECK(at0.magnitude_residual < 1e-3);  // distance to the anchor itself

    // an off-line anchor breaks collinearity
    CHECK_THROWS_AS(nonproper_line(a, lw, 1.0, rv({5, -5, 5})), NonConvergent);

    LiftedWitness single;
    single.solve_matrix = lw.solve_matrix;
    single.records.push_back(lw.records.back());
    CHECK_THROWS_AS(nonproper_line(a, single, 1.0, anchor), PreconditionViolated);
}

TEST_CASE("zero in the non-proper value set for the reference matrix") {
    Mat a = reference_matrix();
    SfOutcome sf = certify_zero_in_Sf(a);
    REQUIRE(sf.ok());
    const SfCertification& c = *sf.success;
    CHECK(c.cert.x_inf == rv({1, 1, 1}));
    CHECK(c.cert.v == frac({-1, 2, -1}, 15));
    CHECK(c.witness.rows.size() == 4);
    CHECK(c.lift.records.size() == 4);
    REQUIRE(c.report.lines.size() == 1);
    CHECK(c.report.lines[0].anchor.is_zero());
    CHECK(c.report.lines[0].direction == rv({1, 1, 1}));
    CHECK(c.report.lines[0].empirical_sign == "+2");
    CHECK(c.report.note.find("Ker(A)") != std::string::npos);
}

TEST_CASE("refusals from the full certification pipeline") {
    SfOutcome id = certify_zero_in_Sf(Mat::identity(3));
    CHECK_FALSE(id.ok());
    CHECK(id.refusal_reason.find("no candidate directions") != std::string::npos);
    CHECK(id.refusal_reason.find("not a properness proof") != std::string::npos);

    SfOutcome zero = certify_zero_in_Sf(Mat(3, 3));
    CHECK_FALSE(zero.ok());
    CHECK(zero.refusal_reason.find("no candidate directions") != std::string::npos);

    SfOutcome gap = certify_zero_in_Sf(gap_matrix());
    CHECK_FALSE(gap.ok());
    CHECK(gap.refusal_reason.find("no candidate satisfied") != std::string::npos);
}

TEST_CASE("decay table and slope") {
    Mat a = reference_matrix();
    SfOutcome sf = certify_zero_in_Sf(a);
    REQUIRE(sf.ok());
    DecayTable table = decay_table(sf.success->witness, sf.success->lift);
    REQUIRE(table.rows.size() == 4);
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        CHECK(table.rows[i].norm_fhat < table.rows[i - 1].norm_fhat);
        CHECK(table.rows[i].norm_fa_z < table.rows[i - 1].norm_fa_z);
        CHECK(table.rows[i].norm_z > table.rows[i - 1].norm_z);
        CHECK(table.rows[i].norm_x > table.rows[i - 1].norm_x);
    }
    double slope = table.slope_fhat();
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.05));

    std::string csv = table.to_csv();
    CHECK(csv.rfind("gamma,norm_x,norm_fhat,norm_z,norm_FA_z\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 5);

    WitnessTable short_witness = sf.success->witness;
    short_witness.rows.pop_back();
    CHECK_THROWS_AS(decay_table(short_witness, sf.success->lift), DimensionMismatch);
}
