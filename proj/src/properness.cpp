#include "cubiclin/properness.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "cubiclin/rng.hpp"

namespace cubiclin {

PropernessCertificate PropernessCertificate::make(Mat a, SubspaceBasis v_space,
                                                  Vec x_inf, Vec v) {
    PropernessCertificate c{std::move(a), std::move(v_space), std::move(x_inf),
                            std::move(v)};
    c.verify();
    return c;
}

void PropernessCertificate::verify() const {
    if (!a.is_square()) throw DimensionMismatch("certificate matrix must be square");
    std::size_t m = a.rows();
    if (v_space.ambient_dim() != m || x_inf.size() != m || v.size() != m)
        throw DimensionMismatch("certificate component dimensions");
    SubspaceBasis image = colspace_basis(a);
    for (const Vec& c : image.vectors())
        if (!in_subspace(c, v_space).member)
            throw PreconditionViolated("certificate subspace does not contain Im(A)");
    if (!in_subspace(x_inf, v_space).member)
        throw PreconditionViolated("x_inf lies outside the certificate subspace");
    if (!in_subspace(v, v_space).member)
        throw PreconditionViolated("v lies outside the certificate subspace");
    for (std::size_t i = 0; i < m; ++i)
        if (sgn(x_inf[i]) == 0)
            throw PreconditionViolated("x_inf has a zero coordinate");
    if (!(a * hadamard_cube(x_inf)).is_zero())
        throw PreconditionViolated("x_inf^3 is not in Ker(A)");
    Vec residual = x_inf + a * hadamard_mul(hadamard_mul(x_inf, x_inf), v);
    if (!residual.is_zero())
        throw PreconditionViolated("x_inf + A(x_inf^2 * v) != 0");
}

std::string criterion_refusal_str(CriterionRefusal r) {
    switch (r) {
        case CriterionRefusal::none: return "none";
        case CriterionRefusal::zero_coordinate: return "zero_coordinate";
        case CriterionRefusal::cube_not_in_kernel: return "cube_not_in_kernel";
        case CriterionRefusal::no_solution_v: return "no_solution_v";
    }
    return "none";
}

CriterionOutcome criterion_check(const Mat& a, const SubspaceBasis& v_space,
                                 const Vec& x_inf) {
    if (!a.is_square()) throw DimensionMismatch("criterion matrix must be square");
    std::size_t m = a.rows();
    if (v_space.ambient_dim() != m || x_inf.size() != m)
        throw DimensionMismatch("criterion input dimensions");
    SubspaceBasis image = colspace_basis(a);
    for (const Vec& c : image.vectors())
        if (!in_subspace(c, v_space).member)
            throw PreconditionViolated("V must contain Im(A)");
    if (!in_subspace(x_inf, v_space).member)
        throw PreconditionViolated("x_inf must lie in V");

    CriterionOutcome out;
    for (std::size_t i = 0; i < m; ++i) {
        if (sgn(x_inf[i]) == 0) {
            out.refusal = CriterionRefusal::zero_coordinate;
            return out;
        }
    }
    if (!(a * hadamard_cube(x_inf)).is_zero()) {
        out.refusal = CriterionRefusal::cube_not_in_kernel;
        return out;
    }
    Mat m_op = a * diag(hadamard_mul(x_inf, x_inf));
    std::optional<Vec> v = solve_in_subspace(m_op, v_space, -x_inf);
    if (!v) {
        out.refusal = CriterionRefusal::no_solution_v;
        return out;
    }
    out.certificate = PropernessCertificate::make(a, v_space, x_inf, *v);
    return out;
}

std::vector<Candidate> candidate_directions(const Mat& a, const CandidateSearch& search) {
    if (!a.is_square()) throw DimensionMismatch("candidate search matrix");
    SubspaceBasis image = colspace_basis(a);
    std::vector<Candidate> out;
    std::vector<Vec> seen;

    auto consider = [&](const Vec& z) {
        for (std::size_t i = 0; i < z.size(); ++i)
            if (sgn(z[i]) == 0) return;
        PowResult root = hadamard_pow(z, 1, 3);
        if (root.exact) {
            for (const Vec& prev : seen)
                if (prev == *root.exact) return;
            if (!in_subspace(*root.exact, image).member) return;
            seen.push_back(*root.exact);
            seen.push_back(-*root.exact);
            out.push_back(Candidate{*root.exact, to_float(*root.exact)});
            out.push_back(Candidate{-*root.exact, to_float(-*root.exact)});
        } else {
            if (!in_subspace_tol(root.approx, image, search.tol).member) return;
            Candidate pos{std::nullopt, root.approx};
            Candidate neg{std::nullopt, root.approx};
            for (double& c : neg.approx.coords) c = -c;
            out.push_back(std::move(pos));
            out.push_back(std::move(neg));
        }
    };

    std::vector<Vec> kernel = kernel_vectors(a);
    if (search.mode == CandidateSearch::Mode::kernel_roots) {
        for (const Vec& z : kernel) consider(z);
    } else {
        if (kernel.empty()) return out;
        Rng rng(search.seed);
        for (int i = 0; i < search.count; ++i) {
            Vec z(a.cols());
            bool nonzero = false;
            for (const Vec& k : kernel) {
                long long c = rng.int_in(-3, 3);
                if (c != 0) nonzero = true;
                z = z + Rat(static_cast<long>(c)) * k;
            }
            if (!nonzero) continue;
            consider(z);
        }
    }
    return out;
}

WitnessTable build_fhat_witness(const PropernessCertificate& cert,
                                const std::vector<Rat>& gammas) {
    cert.verify();
    if (gammas.empty()) throw PreconditionViolated("empty gamma ladder");
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (sgn(gammas[i]) <= 0) throw PreconditionViolated("gammas must be positive");
        if (i > 0 && !(gammas[i - 1] < gammas[i]))
            throw PreconditionViolated("gammas must be strictly increasing");
    }
    CubicMap fhat = CubicMap::hat(cert.a);
    WitnessTable table{cert, {}};
    for (const Rat& g : gammas) {
        Rat inv3g = Rat(1) / (Rat(3) * g);
        Vec x = g * cert.x_inf + inv3g * cert.v;
        table.rows.push_back(WitnessRow{g, x, eval_map(fhat, x)});
    }
    return table;
}

LiftSolver::LiftSolver(const Mat& a) : a_(a) {
    // First maximal independent subset of rows, in row order.
    std::vector<std::vector<Rat>> chosen;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::vector<std::vector<Rat>> trial = chosen;
        trial.push_back(a.row(i).coords());
        if (rank(Mat::from_rows(trial)) == trial.size()) {
            chosen = std::move(trial);
            row_gens_.push_back(a.row(i));
        }
    }
    std::size_t k = row_gens_.size();
    // N's columns are A r_j; pick the first k independent rows of N.
    Mat n_mat(a.rows(), k);
    for (std::size_t j = 0; j < k; ++j) {
        Vec arj = a * row_gens_[j];
        for (std::size_t i = 0; i < a.rows(); ++i) n_mat(i, j) = arj[i];
    }
    std::vector<std::vector<Rat>> piv_rows;
    for (std::size_t i = 0; i < a.rows() && piv_rows.size() < k; ++i) {
        std::vector<std::vector<Rat>> trial = piv_rows;
        trial.push_back(n_mat.row(i).coords());
        if (rank(Mat::from_rows(trial)) == trial.size()) {
            piv_rows = std::move(trial);
            pivot_rows_.push_back(i);
        }
    }
    square_ = Mat(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) square_(i, j) = n_mat(pivot_rows_[i], j);
}

Vec LiftSolver::solve(const Vec& u) const {
    if (u.size() != a_.rows()) throw DimensionMismatch("lift solve input");
    std::size_t k = row_gens_.size();
    Vec rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = u[pivot_rows_[i]];
    std::optional<Vec> c = linsolve(square_, rhs);
    if (!c) throw NotInImage();
    Vec y(a_.cols());
    for (std::size_t j = 0; j < k; ++j) y = y + (*c)[j] * row_gens_[j];
    if (!(a_ * y == u)) throw NotInImage();
    return y;
}

void LiftedWitness::verify(const Mat& a) const {
    for (const LiftRecord& r : records) {
        if (!(a * r.y == r.u))
            throw PreconditionViolated("lift record: A y != u");
        Vec w = r.u + a * hadamard_cube(r.u);
        if (!(a * r.v_small == w))
            throw PreconditionViolated("lift record: A v_small != u + A(u^3)");
        if (!(a * r.x_ker).is_zero())
            throw PreconditionViolated("lift record: x_ker not in Ker(A)");
        if (!(r.z == r.x_ker + r.y))
            throw PreconditionViolated("lift record: z != x_ker + y");
        Vec fa_z = r.z + hadamard_cube(a * r.z);
        if (!(fa_z == r.v_small))
            throw PreconditionViolated("lift record: z + (Az)^3 != v_small");
        Rat nz = norm_sq(r.z);
        Rat ny = norm_sq(r.y);
        if (nz < ny) throw PreconditionViolated("lift record: ||z|| < ||y||");
    }
}

LiftedWitness lift_witness(const Mat& a, const WitnessTable& witness) {
    LiftSolver solver(a);
    LiftedWitness lw;
    lw.solve_matrix = solver.square_system();
    for (const WitnessRow& row : witness.rows) {
        LiftRecord r;
        r.gamma = row.gamma;
        r.u = row.x;
        r.y = solver.solve(r.u);
        Vec w = r.u + a * hadamard_cube(r.u);
        r.v_small = solver.solve(w);
        r.x_ker = r.v_small - r.y - hadamard_cube(a * r.y);
        r.z = r.x_ker + r.y;
        lw.records.push_back(std::move(r));
    }
    lw.verify(a);
    return lw;
}

Vec companion_expression(const Mat& a, const Vec& x_inf, const Vec& v, const Rat& gamma) {
    Rat g3 = pow_int(gamma, 3);
    Vec z = g3 * hadamard_cube(x_inf);
    Vec v_small = (Rat(1) / gamma) * v;
    PowResult root = hadamard_pow(z, 1, 3);
    PowResult two_thirds = hadamard_pow(z, 2, 3);
    // z is a perfect cube by construction, so both powers are exact.
    return *root.exact + a * hadamard_mul(*two_thirds.exact, v_small);
}

std::vector<CompanionRow> companion_witness_rows(const PropernessCertificate& cert,
                                             const std::vector<Rat>& gammas) {
    cert.verify();
    std::vector<CompanionRow> rows;
    for (const Rat& g : gammas) {
        if (sgn(g) <= 0) throw PreconditionViolated("gammas must be positive");
        CompanionRow r;
        r.gamma = g;
        Rat g3 = pow_int(g, 3);
        r.z = g3 * hadamard_cube(cert.x_inf);
        r.v_small = (Rat(1) / g) * cert.v;
        r.expr = companion_expression(cert.a, cert.x_inf, cert.v, g);
        rows.push_back(std::move(r));
    }
    return rows;
}

Vec companion_witness_point(const Mat& a, const CompanionRow& row) {
    PowResult two_thirds = hadamard_pow(row.z, 2, 3);
    Vec au = a * hadamard_mul(*two_thirds.exact, row.v_small);
    return -au + Rat(1, 3) * row.v_small;
}

LineSample nonproper_line(const Mat& a, const LiftedWitness& lw, double t,
                          const Vec& anchor) {
    if (lw.records.size() < 2)
        throw PreconditionViolated("line evaluation needs at least two lift records");
    if (anchor.size() != a.rows()) throw DimensionMismatch("line anchor");
    CubicMap f = CubicMap::standard(a);

    auto eval_at = [&](const LiftRecord& rec) {
        double nz = norm(rec.z);
        Rat tau = Rat(t) / Rat(nz);  // both conversions are exact dyadics
        Vec zp = (Rat(1) - tau) * rec.z;
        return to_float(eval_map(f, zp));
    };
    FloatVec l_prev = eval_at(lw.records[lw.records.size() - 2]);
    FloatVec l_last = eval_at(lw.records.back());

    LineSample s;
    s.t = t;
    s.limit = l_last;
    double diff2 = 0, last2 = 0;
    for (std::size_t i = 0; i < l_last.size(); ++i) {
        double d = l_last[i] - l_prev[i];
        diff2 += d * d;
        last2 += l_last[i] * l_last[i];
    }
    s.conv_residual = std::sqrt(diff2) / std::max(1.0, std::sqrt(last2));
    if (s.conv_residual > 0.05)
        throw NonConvergent("line limit fit residual " + std::to_string(s.conv_residual));

    const LiftRecord& rec = lw.records.back();
    double nz = norm(rec.z);
    std::vector<double> xhat(rec.z.size());
    for (std::size_t i = 0; i < rec.z.size(); ++i) xhat[i] = to_double(rec.z[i]) / nz;

    std::vector<double> d(l_last.size());
    double proj = 0, dn2 = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = l_last[i] - to_double(anchor[i]);
        proj += d[i] * xhat[i];
        dn2 += d[i] * d[i];
    }
    double dn = std::sqrt(dn2);
    if (t == 0.0) {
        s.collinearity_residual = 0.0;
        s.magnitude_residual = dn;  // distance from the anchor itself
        s.empirical_sign = "undetermined";
        return s;
    }
    double off2 = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double o = d[i] - proj * xhat[i];
        off2 += o * o;
    }
    s.collinearity_residual = std::sqrt(off2) / dn;
    double expected = 2.0 * std::fabs(t);  // xhat is a unit vector
    s.magnitude_residual = std::fabs(dn - expected) / expected;
    if (s.collinearity_residual > 0.05)
        throw NonConvergent("limit not collinear with the limiting direction");
    if (s.magnitude_residual > 0.05)
        throw NonConvergent("limit magnitude off the 2|t| prediction");
    s.empirical_sign = (proj / t > 0) ? "+2" : "-2";
    return s;
}

SfOutcome certify_zero_in_Sf(const Mat& a, const SfOptions& opts) {
    SfOutcome out;
    std::vector<Candidate> candidates = candidate_directions(a, CandidateSearch{});
    CandidateSearch randomized;
    randomized.mode = CandidateSearch::Mode::randomized;
    randomized.count = opts.randomized_count;
    randomized.seed = opts.seed;
    for (Candidate& c : candidate_directions(a, randomized)) {
        bool dup = false;
        if (c.exact) {
            for (const Candidate& prev : candidates)
                if (prev.exact && *prev.exact == *c.exact) dup = true;
        }
        if (!dup) candidates.push_back(std::move(c));
    }
    if (candidates.empty()) {
        out.refusal_reason = "no candidate directions (inconclusive, not a properness proof)";
        return out;
    }
    SubspaceBasis image = colspace_basis(a);
    bool exact_seen = false;
    for (const Candidate& c : candidates) {
        if (!c.exact) continue;
        exact_seen = true;
        CriterionOutcome crit = criterion_check(a, image, *c.exact);
        if (!crit.ok()) continue;

        SfCertification res{*crit.certificate,
                            build_fhat_witness(*crit.certificate, opts.gammas),
                            LiftedWitness{},
                            SfStructureReport{{}, kernel_basis(a), ""}};
        res.lift = lift_witness(a, res.witness);

        // The anchor is approached monotonically: ||F_A(z_n) - 0|| decreases.
        for (std::size_t i = 1; i < res.lift.records.size(); ++i) {
            Rat prev = norm_sq(res.lift.records[i - 1].v_small);
            Rat cur = norm_sq(res.lift.records[i].v_small);
            if (!(cur < prev))
                throw NonConvergent("||F_A(z_n)|| not decreasing along the ladder");
        }
        NonProperLine line{Vec(a.rows()), crit.certificate->x_inf, "undetermined"};
        try {
            LineSample sample = nonproper_line(a, res.lift, 1.0, line.anchor);
            line.empirical_sign = sample.empirical_sign;
        } catch (const NonConvergent&) {
        }
        res.report.lines.push_back(std::move(line));
        res.report.note =
            "the non-proper value set contains anchor + Ker(A) for every "
            "reported anchor (kernel shifts preserve witnesses exactly)";
        out.success = std::move(res);
        return out;
    }
    out.refusal_reason = exact_seen
        ? "no candidate satisfied the non-properness criterion (inconclusive, "
          "not a properness proof)"
        : "only inexact candidate directions found; exact certification "
          "unavailable (inconclusive)";
    return out;
}

std::string DecayTable::to_csv() const {
    std::string csv = "gamma,norm_x,norm_fhat,norm_z,norm_FA_z\n";
    char buf[512];
    for (const DecayRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      to_double(r.gamma), r.norm_x, r.norm_fhat, r.norm_z, r.norm_fa_z);
        csv += buf;
    }
    return csv;
}

double DecayTable::slope_fhat() const {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = static_cast<double>(rows.size());
    for (const DecayRow& r : rows) {
        double x = std::log(to_double(r.gamma));
        double y = std::log(r.norm_fhat);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DecayTable decay_table(const WitnessTable& witness, const LiftedWitness& lift) {
    if (witness.rows.size() != lift.records.size())
        throw DimensionMismatch("witness and lift tables disagree");
    DecayTable t;
    for (std::size_t i = 0; i < witness.rows.size(); ++i) {
        const WitnessRow& w = witness.rows[i];
        const LiftRecord& l = lift.records[i];
        if (!(w.gamma == l.gamma)) throw DimensionMismatch("gamma ladders disagree");
        t.rows.push_back(DecayRow{w.gamma, norm(w.x), norm(w.fhat), norm(l.z),
                                  norm(l.v_small)});
    }
    return t;
}

}  // namespace cubiclin
