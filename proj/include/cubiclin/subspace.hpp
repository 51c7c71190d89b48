#pragma once

// Exact subspace machinery: canonical bases for kernel / row space /
// column space, the orthogonal splitting R^m = Ker(A) (+) Im(A^T), and
// minimum-norm solves restricted to a subspace. Everything is rational
// and deterministic; pivot order comes from the reduced echelon form.

#include <optional>
#include <string>
#include <vector>

#include "cubiclin/linalg.hpp"

namespace cubiclin {

enum class BasisLabel { kernel, rowspace, colspace, custom };

std::string basis_label_str(BasisLabel label);
BasisLabel basis_label_from_str(const std::string& s);

class SubspaceBasis {
public:
    // Validates: vectors nonzero, matching ambient dimension, linearly
    // independent. An empty vector list is the zero subspace.
    SubspaceBasis(std::size_t ambient_dim, std::vector<Vec> vectors, BasisLabel label);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t count() const { return vectors_.size(); }
    const std::vector<Vec>& vectors() const { return vectors_; }
    const Vec& operator[](std::size_t i) const { return vectors_[i]; }
    BasisLabel label() const { return label_; }

    static SubspaceBasis full(std::size_t n);  // standard basis of R^n

private:
    std::size_t ambient_dim_;
    std::vector<Vec> vectors_;
    BasisLabel label_;
};

SubspaceBasis kernel_basis(const Mat& a);
SubspaceBasis rowspace_basis(const Mat& a);
SubspaceBasis colspace_basis(const Mat& a);

// x = z + u with z in Ker(A), u in Im(A^T). Exact, unique.
struct Decomposition {
    Vec z;
    Vec u;
};
Decomposition decompose(const Vec& x, const Mat& a);

struct MembershipResult {
    bool member;
    double residual;  // Euclidean norm of x - proj_V(x)
};

// Exact decision over the rationals.
MembershipResult in_subspace(const Vec& x, const SubspaceBasis& v);
// Numeric decision: member iff residual <= eps * max(1, ||x||). eps > 0.
MembershipResult in_subspace_tol(const FloatVec& x, const SubspaceBasis& v, double eps);
MembershipResult in_subspace_tol(const Vec& x, const SubspaceBasis& v, double eps);

// Minimum-Euclidean-norm v in span(V) with M v = target, or none.
std::optional<Vec> solve_in_subspace(const Mat& m, const SubspaceBasis& v,
                                     const Vec& target);

}  // namespace cubiclin
