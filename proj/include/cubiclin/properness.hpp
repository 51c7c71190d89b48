#pragma once

// Non-properness machinery for F_A(x) = x + (Ax)^3.
//
// A certificate (x_inf, v) with x_inf in V, all coordinates nonzero,
// x_inf^3 in Ker(A) and x_inf + A(x_inf^2 * v) = 0 produces witness
// sequences x(g) = g x_inf + v/(3g) whose image under x + A(x^3) decays
// like 1/g, and lifts to sequences z(g) with z + (Az)^3 = v_small(g) -> 0,
// putting 0 in the non-proper value set along the line R*x_inf.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubiclin/cubic_map.hpp"
#include "cubiclin/subspace.hpp"

namespace cubiclin {

struct PropernessCertificate {
    Mat a;
    SubspaceBasis v_space;
    Vec x_inf;
    Vec v;

    static PropernessCertificate make(Mat a, SubspaceBasis v_space, Vec x_inf, Vec v);
    void verify() const;  // exact re-check of every invariant
};

enum class CriterionRefusal { none, zero_coordinate, cube_not_in_kernel, no_solution_v };
std::string criterion_refusal_str(CriterionRefusal r);

struct CriterionOutcome {
    std::optional<PropernessCertificate> certificate;
    CriterionRefusal refusal = CriterionRefusal::none;
    bool ok() const { return certificate.has_value(); }
};

// Requires Im(A) subset of V and x_inf in V; v is canonicalized to the
// minimum-norm solution within V.
CriterionOutcome criterion_check(const Mat& a, const SubspaceBasis& v_space,
                                 const Vec& x_inf);

struct Candidate {
    std::optional<Vec> exact;
    FloatVec approx;
};

struct CandidateSearch {
    enum class Mode { kernel_roots, randomized };
    Mode mode = Mode::kernel_roots;
    int count = 32;
    std::uint64_t seed = 1;
    double tol = 1e-9;
};

// Cube roots of kernel vectors with all coordinates nonzero, +- both,
// filtered by membership in Im(A).
std::vector<Candidate> candidate_directions(const Mat& a, const CandidateSearch& search);

struct WitnessRow {
    Rat gamma;
    Vec x;     // g x_inf + v/(3g)
    Vec fhat;  // x + A(x^3), exact
};

struct WitnessTable {
    PropernessCertificate cert;
    std::vector<WitnessRow> rows;
};

// gammas must be positive and strictly increasing.
WitnessTable build_fhat_witness(const PropernessCertificate& cert,
                                const std::vector<Rat>& gammas);

// Solves A y = u for y in the span of A's rows, parametrized over the
// first maximal independent subset of rows in row order. The square
// pivot-row system is exposed for inspection.
class LiftSolver {
public:
    explicit LiftSolver(const Mat& a);
    const Mat& square_system() const { return square_; }
    Vec solve(const Vec& u) const;  // throws NotInImage if A y = u has no solution

private:
    Mat a_;
    std::vector<Vec> row_gens_;
    std::vector<std::size_t> pivot_rows_;
    Mat square_;
};

struct LiftRecord {
    Rat gamma;
    Vec u;        // the witness point x(g), must lie in Im(A)
    Vec y;        // A y = u, y in Im(A^T)
    Vec v_small;  // A v_small = u + A(u^3)
    Vec x_ker;    // v_small - y - (Ay)^3, in Ker(A)
    Vec z;        // x_ker + y; z + (Az)^3 = v_small exactly
};

struct LiftedWitness {
    Mat solve_matrix;
    std::vector<LiftRecord> records;
    void verify(const Mat& a) const;
};

LiftedWitness lift_witness(const Mat& a, const WitnessTable& witness);

struct CompanionRow {
    Rat gamma;
    Vec z;        // g^3 x_inf^3, in Ker(A)
    Vec v_small;  // v / g
    Vec expr;     // z^(1/3) + A(z^(2/3) * v_small)
};

// expr vanishes identically for a valid certificate.
std::vector<CompanionRow> companion_witness_rows(const PropernessCertificate& cert,
                                             const std::vector<Rat>& gammas);
// Same expression on raw inputs (no certificate needed); nonzero for
// invalid (x_inf, v) pairs and grows linearly in gamma.
Vec companion_expression(const Mat& a, const Vec& x_inf, const Vec& v, const Rat& gamma);

// Witness points x(g) regenerated from the companion data via
// -A(z^(2/3) * v_small) + v_small/3; equals build_fhat_witness exactly.
Vec companion_witness_point(const Mat& a, const CompanionRow& row);

struct NonProperLine {
    Vec anchor;
    Vec direction;
    std::string empirical_sign;  // "+2", "-2" or "undetermined"
};

struct LineSample {
    double t;
    FloatVec limit;
    double conv_residual;
    double collinearity_residual;
    double magnitude_residual;
    std::string empirical_sign;
};

// Evaluates F_A((1 - t/||z_n||) z_n) along the lifted witness and fits the
// limit at the largest gamma. The scaling 1 - t/||z|| uses the double
// rounding of ||z||; everything else is exact, so the gamma^3-scale
// cancellation in F_A costs no precision. Limits land 2|t| from the
// anchor along the limiting direction of z_n/||z_n||.
LineSample nonproper_line(const Mat& a, const LiftedWitness& lw, double t,
                          const Vec& anchor);

struct SfStructureReport {
    std::vector<NonProperLine> lines;
    SubspaceBasis kernel;
    std::string note;
};

struct SfCertification {
    PropernessCertificate cert;
    WitnessTable witness;
    LiftedWitness lift;
    SfStructureReport report;
};

struct SfOptions {
    std::vector<Rat> gammas{Rat(10), Rat(100), Rat(1000), Rat(10000)};
    int randomized_count = 32;
    std::uint64_t seed = 1;
};

struct SfOutcome {
    std::optional<SfCertification> success;
    std::string refusal_reason;  // set when no certificate was found
    bool ok() const { return success.has_value(); }
};

// Candidate search + criterion over V = Im(A); on success, witnesses 0 in
// the non-proper value set with the line 0 + R x_inf. A refusal is
// inconclusive, never a properness proof.
SfOutcome certify_zero_in_Sf(const Mat& a, const SfOptions& opts = {});

struct DecayRow {
    Rat gamma;
    double norm_x;
    double norm_fhat;
    double norm_z;
    double norm_fa_z;
};

struct DecayTable {
    std::vector<DecayRow> rows;
    std::string to_csv() const;  // header gamma,norm_x,norm_fhat,norm_z,norm_FA_z
    double slope_fhat() const;   // log-log least-squares slope of norm_fhat vs gamma
};

DecayTable decay_table(const WitnessTable& witness, const LiftedWitness& lift);

}  // namespace cubiclin
