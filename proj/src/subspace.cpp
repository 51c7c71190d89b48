#include "cubiclin/subspace.hpp"

#include <cmath>

namespace cubiclin {

std::string basis_label_str(BasisLabel label) {
    switch (label) {
        case BasisLabel::kernel: return "kernel";
        case BasisLabel::rowspace: return "rowspace";
        case BasisLabel::colspace: return "colspace";
        case BasisLabel::custom: return "custom";
    }
    return "custom";
}

BasisLabel basis_label_from_str(const std::string& s) {
    if (s == "kernel") return BasisLabel::kernel;
    if (s == "rowspace") return BasisLabel::rowspace;
    if (s == "colspace") return BasisLabel::colspace;
    if (s == "custom") return BasisLabel::custom;
    throw ParseError("unknown basis label '" + s + "'");
}

namespace {

Mat stack_rows(const std::vector<Vec>& vs, std::size_t ambient) {
    Mat m(vs.size(), ambient);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < ambient; ++j) m(i, j) = vs[i][j];
    return m;
}

// Exact orthogonal projection of x onto span(vs) via the Gram system.
Vec project_onto(const std::vector<Vec>& vs, const Vec& x) {
    if (vs.empty()) return Vec(x.size());
    std::size_t k = vs.size();
    Mat gram(k, k);
    Vec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(vs[i], vs[j]);
        rhs[i] = dot(vs[i], x);
    }
    std::optional<Vec> c = linsolve(gram, rhs);
    // Gram matrix of an independent family is positive definite.
    Vec p(x.size());
    for (std::size_t i = 0; i < k; ++i) p = p + (*c)[i] * vs[i];
    return p;
}

}  // namespace

SubspaceBasis::SubspaceBasis(std::size_t ambient_dim, std::vector<Vec> vectors,
                             BasisLabel label)
    : ambient_dim_(ambient_dim), vectors_(std::move(vectors)), label_(label) {
    for (const Vec& v : vectors_) {
        if (v.size() != ambient_dim_)
            throw DimensionMismatch("basis vector vs ambient dimension");
        if (v.is_zero()) throw ConstraintViolated("zero vector in basis");
    }
    if (!vectors_.empty() &&
        rank(stack_rows(vectors_, ambient_dim_)) != vectors_.size())
        throw ConstraintViolated("basis vectors linearly dependent");
}

SubspaceBasis SubspaceBasis::full(std::size_t n) {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(Vec::unit(n, i));
    return SubspaceBasis(n, std::move(vs), BasisLabel::custom);
}

SubspaceBasis kernel_basis(const Mat& a) {
    return SubspaceBasis(a.cols(), kernel_vectors(a), BasisLabel::kernel);
}

SubspaceBasis rowspace_basis(const Mat& a) {
    RrefResult rr = rref(a);
    std::vector<Vec> vs;
    for (std::size_t r = 0; r < rr.rank; ++r) vs.push_back(rr.reduced.row(r));
    return SubspaceBasis(a.cols(), std::move(vs), BasisLabel::rowspace);
}

SubspaceBasis colspace_basis(const Mat& a) {
    RrefResult rr = rref(a.transpose());
    std::vector<Vec> vs;
    for (std::size_t r = 0; r < rr.rank; ++r) vs.push_back(rr.reduced.row(r));
    return SubspaceBasis(a.rows(), std::move(vs), BasisLabel::colspace);
}

Decomposition decompose(const Vec& x, const Mat& a) {
    if (x.size() != a.cols()) throw DimensionMismatch("decompose input");
    SubspaceBasis rs = rowspace_basis(a);
    Vec u = project_onto(rs.vectors(), x);
    return Decomposition{x - u, u};
}

MembershipResult in_subspace(const Vec& x, const SubspaceBasis& v) {
    if (x.size() != v.ambient_dim()) throw DimensionMismatch("membership input");
    Vec r = x - project_onto(v.vectors(), x);
    Rat r2 = norm_sq(r);
    return MembershipResult{sgn(r2) == 0, std::sqrt(to_double(r2))};
}

MembershipResult in_subspace_tol(const FloatVec& x, const SubspaceBasis& v, double eps) {
    if (eps <= 0) throw PreconditionViolated("tolerance must be positive");
    if (x.size() != v.ambient_dim()) throw DimensionMismatch("membership input");
    std::size_t k = v.count();
    std::size_t n = v.ambient_dim();
    // Double-precision Gram projection.
    std::vector<std::vector<double>> b(k, std::vector<double>(n));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) b[i][j] = to_double(v[i][j]);
    std::vector<std::vector<double>> g(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t t = 0; t < n; ++t) g[i][j] += b[i][t] * b[j][t];
        for (std::size_t t = 0; t < n; ++t) g[i][k] += b[i][t] * x[t];
    }
    // Gaussian elimination with partial pivoting on [G | rhs].
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < k; ++i)
            if (std::fabs(g[i][c]) > std::fabs(g[piv][c])) piv = i;
        std::swap(g[c], g[piv]);
        if (g[c][c] == 0.0) continue;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == c) continue;
            double f = g[i][c] / g[c][c];
            for (std::size_t j = c; j <= k; ++j) g[i][j] -= f * g[c][j];
        }
    }
    std::vector<double> proj(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        double ci = g[i][i] != 0.0 ? g[i][k] / g[i][i] : 0.0;
        for (std::size_t t = 0; t < n; ++t) proj[t] += ci * b[i][t];
    }
    double res2 = 0.0, x2 = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        double d = x[t] - proj[t];
        res2 += d * d;
        x2 += x[t] * x[t];
    }
    double res = std::sqrt(res2);
    return MembershipResult{res <= eps * std::max(1.0, std::sqrt(x2)), res};
}

MembershipResult in_subspace_tol(const Vec& x, const SubspaceBasis& v, double eps) {
    return in_subspace_tol(to_float(x), v, eps);
}

std::optional<Vec> solve_in_subspace(const Mat& m, const SubspaceBasis& v,
                                     const Vec& target) {
    if (m.cols() != v.ambient_dim()) throw DimensionMismatch("solve_in_subspace matrix");
    if (m.rows() != target.size()) throw DimensionMismatch("solve_in_subspace target");
    std::size_t k = v.count();
    if (k == 0) return target.is_zero() ? std::optional<Vec>(Vec(v.ambient_dim()))
                                        : std::nullopt;
    // Parametrize v = B c over the basis columns, solve N c = target.
    Mat n_mat(m.rows(), k);
    for (std::size_t j = 0; j < k; ++j) {
        Vec mb = m * v[j];
        for (std::size_t i = 0; i < m.rows(); ++i) n_mat(i, j) = mb[i];
    }
    std::optional<Vec> c0 = linsolve(n_mat, target);
    if (!c0) return std::nullopt;
    std::vector<Vec> null_n = kernel_vectors(n_mat);

    Vec c = *c0;
    if (!null_n.empty()) {
        // Minimize (c0 + K y)^T G (c0 + K y) with G the basis Gram matrix:
        // (K^T G K) y = -K^T G c0.
        Mat gram(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(v[i], v[j]);
        std::size_t d = null_n.size();
        Mat kt_g_k(d, d);
        Vec rhs(d);
        std::vector<Vec> g_cols(d);
        for (std::size_t j = 0; j < d; ++j) g_cols[j] = gram * null_n[j];
        Vec g_c0 = gram * c;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) kt_g_k(i, j) = dot(null_n[i], g_cols[j]);
            rhs[i] = -dot(null_n[i], g_c0);
        }
        std::optional<Vec> y = linsolve(kt_g_k, rhs);
        for (std::size_t j = 0; j < d; ++j) c = c + (*y)[j] * null_n[j];
    }
    Vec result(v.ambient_dim());
    for (std::size_t j = 0; j < k; ++j) result = result + c[j] * v[j];
    return result;
}

}  // namespace cubiclin
