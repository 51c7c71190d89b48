#pragma once

// Membership probes. The nilpotency test decides det JF_A == 1 via exact
// checks of (diag((Ax)^2) A)^m = 0 at random integer points; a failure is
// a certificate of non-membership, passes accumulate Schwartz-Zippel
// style confidence. The class-Z probe hunts nonzero real roots of
// x + lambda (Ax)^3 with damped Newton from seeded starts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubiclin/linalg.hpp"

namespace cubiclin {

struct DruzkowskiVerdict {
    enum class Kind { certified_no, probably_yes, undetermined };
    Kind kind = Kind::undetermined;
    std::optional<Vec> witness;  // point where the product matrix is not nilpotent
    int trials = 0;
    std::uint64_t seed = 0;
    std::string note;

    // Re-check a stored witness exactly; throws on a bogus certificate.
    void verify(const Mat& a) const;
};

DruzkowskiVerdict druzkowski_test(const Mat& a, int trials, std::uint64_t seed);

struct NewtonOptions {
    int max_iters = 200;
    int max_halvings = 40;
    double divergence_norm = 1e12;
    double root_tol = 1e-12;      // ||G(x)|| <= root_tol * max(1, ||x||)
    double nonzero_floor = 1e-6;  // roots below this norm count as the origin
};

struct ProbeStats {
    long runs = 0;
    long converged_to_zero = 0;
    long diverged = 0;
    long budget_exceeded = 0;
    long stalled = 0;
};

struct ClassZVerdict {
    enum class Kind { counterexample, no_counterexample_found };
    Kind kind = Kind::no_counterexample_found;
    double lambda = 0.0;
    FloatVec root;
    double residual = 0.0;
    ProbeStats stats;
    std::vector<double> lambdas;
    int starts_per_lambda = 0;
    std::uint64_t seed = 0;
    NewtonOptions options;

    void verify(const Mat& a) const;  // re-check the counterexample residual
};

std::vector<double> default_lambda_grid();  // {0, +-10^k : k = -2..3}

ClassZVerdict class_z_probe(const Mat& a, const std::vector<double>& lambdas,
                            int starts_per_lambda, std::uint64_t seed,
                            const NewtonOptions& opt = {});

}  // namespace cubiclin
