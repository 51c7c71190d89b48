#pragma once

// The cubic maps themselves: F_A(x) = x + (Ax)^3 and the dual form
// x + A(x^3), with exact and floating evaluation and the exact Jacobian
// I + 3 diag((Ax)^2) A.

#include "cubiclin/linalg.hpp"

namespace cubiclin {

enum class MapVariant { standard, hat };

struct CubicMap {
    Mat a;
    MapVariant variant;

    static CubicMap standard(Mat m);
    static CubicMap hat(Mat m);

    std::size_t dim() const { return a.rows(); }
};

Vec eval_map(const CubicMap& f, const Vec& x);
FloatVec eval_map(const CubicMap& f, const FloatVec& x);

// Jacobian of the standard variant at x (exact).
Mat jacobian(const CubicMap& f, const Vec& x);

// F_A(x + w) == F_A(x) + w for w in Ker(A); w is checked exactly.
bool kernel_shift_check(const Mat& a, const Vec& x, const Vec& w);

}  // namespace cubiclin
