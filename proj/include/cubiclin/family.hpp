#pragma once

// The four-parameter 3x3 family:
//   row3 = lambda*row1 + mu*row2, rows 1-2 sum to zero, lambda + mu = 1,
//   a11 + a13*lambda = a21 + a23*lambda != 0.
// Every member has (1,1,1) in Ker(A) and in Im(A), with
// A (c, 0, lambda*c) = (1,1,1) for c = 1/(a11 + a13*lambda).
//
// The lambda = 1, mu = 0 specialization (row3 = row1, corank 1) admits an
// exact class-Z certificate: A(1,0,1) = alpha(1,1,1), A(0,1,0) = -alpha(1,1,1)
// force every real root of x + lambda (Ax)^3 = 0 down to x = 0.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubiclin/class_probe.hpp"
#include "cubiclin/properness.hpp"

namespace cubiclin {

struct FamilyParams {
    Rat a11, a12, a13;
    Rat a21, a22, a23;
    Rat lambda, mu;

    void validate() const;  // throws ConstraintViolated naming the violation
};

struct SpecialFamilyParams {
    Rat a11, a12, a13;
    Rat a21, a22, a23;
    Rat alpha;  // = a11 + a13 = a21 + a23 = -a12 = -a22, nonzero

    void validate() const;
    FamilyParams general() const;  // lambda = 1, mu = 0
};

Mat build_family_matrix(const FamilyParams& p);

struct FamilySample {
    FamilyParams params;
    Mat matrix;
};

// Deterministic for a fixed seed. Rationals are drawn with |num| <= 100,
// den <= 100; violated inequations retry up to 100 times per sample.
std::vector<FamilySample> sample_family(int count, std::uint64_t seed, bool special_only);

// The reference instance [[1,-5,4],[2,-5,3],[1,-5,4]] with alpha = 5.
struct ReferenceInstance {
    Mat matrix;
    Rat alpha;
    SpecialFamilyParams params;
};
ReferenceInstance reference_instance();

struct ClassZCertificate {
    Mat matrix;
    Rat alpha;
    bool check_1;      // A (1,0,1) == alpha (1,1,1)
    bool check_2;      // A (0,1,0) == -alpha (1,1,1)
    bool corank_check; // rank == 2

    void verify() const;  // exact re-check, including the structural form
};

enum class ClassZRefusal {
    none,
    not_3x3,
    row3_neq_row1,
    row_sums_nonzero,
    alpha_zero,
    rank_not_2,
    check1_failed,
    check2_failed,
};
std::string class_z_refusal_str(ClassZRefusal r);

struct ClassZOutcome {
    std::optional<ClassZCertificate> certificate;
    ClassZRefusal refusal = ClassZRefusal::none;
    bool ok() const { return certificate.has_value(); }
};

ClassZOutcome certify_class_z(const Mat& m);

struct RefutationReport {
    Mat matrix;
    Rat alpha;
    ClassZCertificate class_z;
    SfCertification nonproperness;
    DruzkowskiVerdict druzkowski;
    std::string decay_csv;
    double decay_slope;
};

// Assembles the counterexample: the reference instance is certifiably in
// class Z, yet 0 lies in the non-proper value set of F_A.
RefutationReport build_refutation_report();

}  // namespace cubiclin
