#include "cubiclin/cubic_map.hpp"

#include <cmath>

namespace cubiclin {

CubicMap CubicMap::standard(Mat m) {
    if (!m.is_square()) throw DimensionMismatch("cubic map matrix must be square");
    return CubicMap{std::move(m), MapVariant::standard};
}

CubicMap CubicMap::hat(Mat m) {
    if (!m.is_square()) throw DimensionMismatch("cubic map matrix must be square");
    return CubicMap{std::move(m), MapVariant::hat};
}

Vec eval_map(const CubicMap& f, const Vec& x) {
    if (x.size() != f.dim()) throw DimensionMismatch("map evaluation input");
    if (f.variant == MapVariant::standard) return x + hadamard_cube(f.a * x);
    return x + f.a * hadamard_cube(x);
}

FloatVec eval_map(const CubicMap& f, const FloatVec& x) {
    if (x.size() != f.dim()) throw DimensionMismatch("map evaluation input");
    std::size_t n = f.dim();
    std::vector<double> ad(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ad[i * n + j] = to_double(f.a(i, j));
    FloatVec out;
    out.coords.resize(n);
    if (f.variant == MapVariant::standard) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += ad[i * n + j] * x[j];
            out.coords[i] = x[i] + s * s * s;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) {
                double c = x[j];
                s += ad[i * n + j] * c * c * c;
            }
            out.coords[i] = x[i] + s;
        }
    }
    for (double c : out.coords)
        if (!std::isfinite(c)) out.overflowed = true;
    return out;
}

Mat jacobian(const CubicMap& f, const Vec& x) {
    if (f.variant != MapVariant::standard)
        throw PreconditionViolated("jacobian is defined for the standard variant");
    if (x.size() != f.dim()) throw DimensionMismatch("jacobian input");
    Vec ax = f.a * x;
    std::size_t n = f.dim();
    Mat j = Mat::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rat d = Rat(3) * ax[i] * ax[i];
        for (std::size_t k = 0; k < n; ++k) j(i, k) += d * f.a(i, k);
    }
    return j;
}

bool kernel_shift_check(const Mat& a, const Vec& x, const Vec& w) {
    if (!(a * w).is_zero()) throw NotInKernel();
    CubicMap f = CubicMap::standard(a);
    Vec lhs = eval_map(f, x + w);
    Vec rhs = eval_map(f, x) + w;
    return lhs == rhs;
}

}  // namespace cubiclin
