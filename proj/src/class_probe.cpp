#include "cubiclin/class_probe.hpp"

#include <cmath>

#include "cubiclin/rng.hpp"

namespace cubiclin {

namespace {

constexpr long kCoordBound = 1000000;

Mat product_matrix(const Mat& a, const Vec& x) {
    Vec ax = a * x;
    Mat m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rat d = ax[i] * ax[i];
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = d * a(i, j);
    }
    return m;
}

double vec_norm(const std::vector<double>& v) {
    double s = 0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

// In-place partial-pivot solve of the n x n system held row-major in m.
bool solve_dense(std::vector<double>& m, std::vector<double>& b, std::size_t n) {
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::fabs(m[i * n + c]) > std::fabs(m[piv * n + c])) piv = i;
        if (std::fabs(m[piv * n + c]) < 1e-300) return false;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[c * n + j]);
            std::swap(b[piv], b[c]);
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            double f = m[i * n + c] / m[c * n + c];
            if (f == 0.0) continue;
            for (std::size_t j = c; j < n; ++j) m[i * n + j] -= f * m[c * n + j];
            b[i] -= f * b[c];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m[i * n + j] * b[j];
        b[i] = s / m[i * n + i];
    }
    return true;
}

enum class RunOutcome { converged, diverged, budget, stalled };

struct NewtonResult {
    RunOutcome outcome;
    std::vector<double> x;
    double residual;
};

NewtonResult damped_newton(const std::vector<double>& a, std::size_t n, double lambda,
                           std::vector<double> x, const NewtonOptions& opt) {
    auto eval_g = [&](const std::vector<double>& p, std::vector<double>& g) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * p[j];
            g[i] = p[i] + lambda * s * s * s;
        }
    };
    std::vector<double> g(n), gtry(n), jac(n * n), delta(n), xtry(n);
    eval_g(x, g);
    for (int iter = 0; iter < opt.max_iters; ++iter) {
        double ng = vec_norm(g);
        double nx = vec_norm(x);
        if (ng <= opt.root_tol * std::max(1.0, nx))
            return {RunOutcome::converged, x, ng};
        if (nx > opt.divergence_norm) return {RunOutcome::diverged, x, ng};
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[j];
            double d = 3.0 * lambda * s * s;
            for (std::size_t j = 0; j < n; ++j)
                jac[i * n + j] = (i == j ? 1.0 : 0.0) + d * a[i * n + j];
        }
        delta = g;
        for (double& c : delta) c = -c;
        std::vector<double> jcopy = jac;
        if (!solve_dense(jcopy, delta, n)) return {RunOutcome::stalled, x, ng};
        double step = 1.0;
        bool accepted = false;
        for (int h = 0; h <= opt.max_halvings; ++h) {
            for (std::size_t i = 0; i < n; ++i) xtry[i] = x[i] + step * delta[i];
            eval_g(xtry, gtry);
            if (vec_norm(gtry) < ng) {
                x = xtry;
                g = gtry;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return {RunOutcome::stalled, x, ng};
    }
    return {RunOutcome::budget, x, vec_norm(g)};
}

}  // namespace

void DruzkowskiVerdict::verify(const Mat& a) const {
    if (kind != Kind::certified_no) return;
    if (!witness) throw PreconditionViolated("certified_no verdict without witness");
    if (is_nilpotent(product_matrix(a, *witness)))
        throw PreconditionViolated("stored witness does not refute nilpotency");
}

DruzkowskiVerdict druzkowski_test(const Mat& a, int trials, std::uint64_t seed) {
    if (!a.is_square()) throw DimensionMismatch("nilpotency test needs a square matrix");
    if (trials < 1) throw PreconditionViolated("trials must be >= 1");
    std::size_t n = a.rows();
    DruzkowskiVerdict v;
    v.trials = trials;
    v.seed = seed;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        Vec x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = Rat(static_cast<long>(rng.int_in(-kCoordBound, kCoordBound)));
        if (is_nilpotent(product_matrix(a, x))) continue;
        // Prefer a standard basis witness when one suffices.
        for (std::size_t i = 0; i < n; ++i) {
            Vec e = Vec::unit(n, i);
            if (!is_nilpotent(product_matrix(a, e))) {
                x = e;
                break;
            }
        }
        v.kind = DruzkowskiVerdict::Kind::certified_no;
        v.witness = x;
        v.note = "diag((Ax)^2)A fails nilpotency at the stored point; exact certificate";
        v.verify(a);
        return v;
    }
    v.kind = DruzkowskiVerdict::Kind::probably_yes;
    v.note = "all " + std::to_string(trials) +
             " sampled points gave an exactly nilpotent diag((Ax)^2)A; for a "
             "non-member each trial passes with probability <= 2n/2000001 "
             "(Schwartz-Zippel, degree-2n identities, coordinates uniform in "
             "[-1000000, 1000000])";
    return v;
}

void ClassZVerdict::verify(const Mat& a) const {
    if (kind != Kind::counterexample) return;
    std::size_t n = a.rows();
    std::vector<double> ad(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ad[i * n + j] = to_double(a(i, j));
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < n; ++j) s += ad[i * n + j] * root[j];
        g[i] = root[i] + lambda * s * s * s;
    }
    double ng = vec_norm(g);
    double nx = vec_norm(root.coords);
    if (ng > options.root_tol * std::max(1.0, nx))
        throw PreconditionViolated("stored root fails the residual tolerance");
    if (nx < options.nonzero_floor)
        throw PreconditionViolated("stored root is numerically the origin");
}

std::vector<double> default_lambda_grid() {
    std::vector<double> l{0.0};
    for (int k = -2; k <= 3; ++k) {
        double p = std::pow(10.0, k);
        l.push_back(p);
        l.push_back(-p);
    }
    return l;
}

ClassZVerdict class_z_probe(const Mat& a, const std::vector<double>& lambdas,
                            int starts_per_lambda, std::uint64_t seed,
                            const NewtonOptions& opt) {
    if (!a.is_square()) throw DimensionMismatch("class-Z probe needs a square matrix");
    if (starts_per_lambda < 1) throw PreconditionViolated("starts_per_lambda must be >= 1");
    std::size_t n = a.rows();
    std::vector<double> ad(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ad[i * n + j] = to_double(a(i, j));

    ClassZVerdict v;
    v.lambdas = lambdas;
    v.starts_per_lambda = starts_per_lambda;
    v.seed = seed;
    v.options = opt;
    const double radii[3] = {1.0, 10.0, 100.0};
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        for (int s = 0; s < starts_per_lambda; ++s) {
            Rng rng(Rng::mix(seed, li, static_cast<std::uint64_t>(s)));
            FloatVec dir = rng.unit_sphere(n);
            for (double radius : radii) {
                std::vector<double> x0(n);
                for (std::size_t i = 0; i < n; ++i) x0[i] = radius * dir[i];
                NewtonResult r = damped_newton(ad, n, lambdas[li], x0, opt);
                ++v.stats.runs;
                switch (r.outcome) {
                    case RunOutcome::diverged: ++v.stats.diverged; break;
                    case RunOutcome::budget: ++v.stats.budget_exceeded; break;
                    case RunOutcome::stalled: ++v.stats.stalled; break;
                    case RunOutcome::converged: {
                        double nx = vec_norm(r.x);
                        if (nx < opt.nonzero_floor) {
                            ++v.stats.converged_to_zero;
                        } else {
                            v.kind = ClassZVerdict::Kind::counterexample;
                            v.lambda = lambdas[li];
                            v.root.coords = r.x;
                            v.residual = r.residual;
                            v.verify(a);
                            return v;
                        }
                        break;
                    }
                }
            }
        }
    }
    v.kind = ClassZVerdict::Kind::no_counterexample_found;
    return v;
}

}  // namespace cubiclin
