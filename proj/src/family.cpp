#include "cubiclin/family.hpp"

#include "cubiclin/rng.hpp"

namespace cubiclin {

void FamilyParams::validate() const {
    Rat s1 = a11 + a12 + a13;
    if (sgn(s1) != 0) throw ConstraintViolated("row 1 does not sum to zero");
    Rat s2 = a21 + a22 + a23;
    if (sgn(s2) != 0) throw ConstraintViolated("row 2 does not sum to zero");
    Rat lm = lambda + mu;
    if (!(lm == 1)) throw ConstraintViolated("lambda + mu != 1");
    Rat lhs = a11 + a13 * lambda;
    Rat rhs = a21 + a23 * lambda;
    if (!(lhs == rhs)) throw ConstraintViolated("a11 + a13*lambda != a21 + a23*lambda");
    if (sgn(lhs) == 0) throw ConstraintViolated("a11 + a13*lambda == 0");
}

void SpecialFamilyParams::validate() const {
    general().validate();
    Rat s = a11 + a13;
    if (!(s == alpha)) throw ConstraintViolated("alpha != a11 + a13");
    Rat s2 = a21 + a23;
    if (!(s2 == alpha)) throw ConstraintViolated("alpha != a21 + a23");
    if (sgn(alpha) == 0) throw ConstraintViolated("alpha == 0");
    Rat minor = a11 * a23 - a13 * a21;
    if (sgn(minor) == 0) throw ConstraintViolated("a11*a23 - a13*a21 == 0 (corank)");
}

FamilyParams SpecialFamilyParams::general() const {
    return FamilyParams{a11, a12, a13, a21, a22, a23, Rat(1), Rat(0)};
}

Mat build_family_matrix(const FamilyParams& p) {
    p.validate();
    Mat m(3, 3);
    m(0, 0) = p.a11;
    m(0, 1) = p.a12;
    m(0, 2) = p.a13;
    m(1, 0) = p.a21;
    m(1, 1) = p.a22;
    m(1, 2) = p.a23;
    for (std::size_t j = 0; j < 3; ++j)
        m(2, j) = p.lambda * m(0, j) + p.mu * m(1, j);
    return m;
}

std::vector<FamilySample> sample_family(int count, std::uint64_t seed, bool special_only) {
    if (count < 1) throw PreconditionViolated("sample count must be >= 1");
    constexpr int kMaxRetries = 100;
    std::vector<FamilySample> out;
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        bool made = false;
        for (int attempt = 0; attempt < kMaxRetries && !made; ++attempt) {
            if (special_only) {
                Rat a11 = rng.rational(100, 100);
                Rat a13 = rng.rational(100, 100);
                Rat a21 = rng.rational(100, 100);
                Rat alpha = a11 + a13;
                if (sgn(alpha) == 0) continue;
                Rat a23 = alpha - a21;
                Rat minor = a11 * a23 - a13 * a21;
                if (sgn(minor) == 0) continue;
                SpecialFamilyParams sp{a11, -alpha, a13, a21, -alpha, a23, alpha};
                FamilyParams p = sp.general();
                out.push_back(FamilySample{p, build_family_matrix(p)});
                made = true;
            } else {
                Rat a11 = rng.rational(100, 100);
                Rat a13 = rng.rational(100, 100);
                Rat a21 = rng.rational(100, 100);
                Rat lambda = rng.rational(100, 100);
                if (sgn(lambda) == 0) continue;
                Rat c_inv = a11 + a13 * lambda;
                if (sgn(c_inv) == 0) continue;
                Rat a23 = (a11 - a21) / lambda + a13;
                Rat a12 = -(a11 + a13);
                Rat a22 = -(a21 + a23);
                // Keep rank exactly 2: rows 1-2 independent.
                Rat m12 = a11 * a22 - a12 * a21;
                Rat m13 = a11 * a23 - a13 * a21;
                Rat m23 = a12 * a23 - a13 * a22;
                if (sgn(m12) == 0 && sgn(m13) == 0 && sgn(m23) == 0) continue;
                FamilyParams p{a11, a12, a13, a21, a22, a23, lambda, Rat(1) - lambda};
                out.push_back(FamilySample{p, build_family_matrix(p)});
                made = true;
            }
        }
        if (!made)
            throw SamplingExhausted("no valid family member after " +
                                    std::to_string(kMaxRetries) + " attempts");
    }
    return out;
}

ReferenceInstance reference_instance() {
    SpecialFamilyParams sp{Rat(1), Rat(-5), Rat(4), Rat(2), Rat(-5), Rat(3), Rat(5)};
    sp.validate();
    return ReferenceInstance{build_family_matrix(sp.general()), sp.alpha, sp};
}

void ClassZCertificate::verify() const {
    if (matrix.rows() != 3 || matrix.cols() != 3)
        throw PreconditionViolated("class-Z certificate needs a 3x3 matrix");
    if (!(matrix.row(2) == matrix.row(0)))
        throw PreconditionViolated("row 3 != row 1");
    for (std::size_t i = 0; i < 3; ++i) {
        Rat s = matrix(i, 0) + matrix(i, 1) + matrix(i, 2);
        if (sgn(s) != 0) throw PreconditionViolated("row sums must vanish");
    }
    if (sgn(alpha) == 0) throw PreconditionViolated("alpha must be nonzero");
    Vec ones{Rat(1), Rat(1), Rat(1)};
    Vec e101{Rat(1), Rat(0), Rat(1)};
    Vec e010{Rat(0), Rat(1), Rat(0)};
    if (!(matrix * e101 == alpha * ones))
        throw PreconditionViolated("A(1,0,1) != alpha(1,1,1)");
    if (!(matrix * e010 == -alpha * ones))
        throw PreconditionViolated("A(0,1,0) != -alpha(1,1,1)");
    if (rank(matrix) != 2) throw PreconditionViolated("rank != 2");
    if (!check_1 || !check_2 || !corank_check)
        throw PreconditionViolated("certificate flags disagree with the checks");
}

std::string class_z_refusal_str(ClassZRefusal r) {
    switch (r) {
        case ClassZRefusal::none: return "none";
        case ClassZRefusal::not_3x3: return "not_3x3";
        case ClassZRefusal::row3_neq_row1: return "row3_neq_row1";
        case ClassZRefusal::row_sums_nonzero: return "row_sums_nonzero";
        case ClassZRefusal::alpha_zero: return "alpha_zero";
        case ClassZRefusal::rank_not_2: return "rank_not_2";
        case ClassZRefusal::check1_failed: return "check1_failed";
        case ClassZRefusal::check2_failed: return "check2_failed";
    }
    return "none";
}

ClassZOutcome certify_class_z(const Mat& m) {
    ClassZOutcome out;
    auto refuse = [&](ClassZRefusal r) {
        out.refusal = r;
        return out;
    };
    if (m.rows() != 3 || m.cols() != 3) return refuse(ClassZRefusal::not_3x3);
    if (!(m.row(2) == m.row(0))) return refuse(ClassZRefusal::row3_neq_row1);
    for (std::size_t i = 0; i < 3; ++i) {
        Rat s = m(i, 0) + m(i, 1) + m(i, 2);
        if (sgn(s) != 0) return refuse(ClassZRefusal::row_sums_nonzero);
    }
    Rat alpha = m(0, 0) + m(0, 2);
    if (sgn(alpha) == 0) return refuse(ClassZRefusal::alpha_zero);
    if (rank(m) != 2) return refuse(ClassZRefusal::rank_not_2);

    // With x3 = x1 forced by row3 = row1, Ax collapses to
    // alpha (x1 - x2)(1,1,1); the two checks pin that collapse exactly.
    Vec ones{Rat(1), Rat(1), Rat(1)};
    Vec e101{Rat(1), Rat(0), Rat(1)};
    Vec e010{Rat(0), Rat(1), Rat(0)};
    if (!(m * e101 == alpha * ones)) return refuse(ClassZRefusal::check1_failed);
    if (!(m * e010 == -alpha * ones)) return refuse(ClassZRefusal::check2_failed);

    out.certificate = ClassZCertificate{m, alpha, true, true, true};
    out.certificate->verify();
    return out;
}

RefutationReport build_refutation_report() {
    ReferenceInstance inst = reference_instance();
    ClassZOutcome cz = certify_class_z(inst.matrix);
    if (!cz.ok()) throw PreconditionViolated("reference instance failed class-Z certification");
    SfOutcome sf = certify_zero_in_Sf(inst.matrix);
    if (!sf.ok()) throw PreconditionViolated("reference instance failed non-properness certification");
    DruzkowskiVerdict dz = druzkowski_test(inst.matrix, 50, 2026);

    DecayTable table = decay_table(sf.success->witness, sf.success->lift);
    RefutationReport rep{inst.matrix,    inst.alpha, *cz.certificate,
                         *sf.success,    dz,         table.to_csv(),
                         table.slope_fhat()};
    return rep;
}

}  // namespace cubiclin
