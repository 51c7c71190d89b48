#include "cubiclin/linalg.hpp"

#include <cmath>

namespace cubiclin {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw DimensionMismatch(what);
}

}  // namespace

Vec Vec::unit(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

bool Vec::is_zero() const {
    for (const Rat& q : c_)
        if (sgn(q) != 0) return false;
    return true;
}

Vec Vec::operator+(const Vec& o) const {
    require_same_size(size(), o.size(), "vector add");
    Vec r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = c_[i] + o[i];
    return r;
}

Vec Vec::operator-(const Vec& o) const {
    require_same_size(size(), o.size(), "vector sub");
    Vec r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = c_[i] - o[i];
    return r;
}

Vec Vec::operator-() const {
    Vec r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = -c_[i];
    return r;
}

Vec Vec::operator*(const Rat& s) const {
    Vec r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = c_[i] * s;
    return r;
}

Vec operator*(const Rat& s, const Vec& v) { return v * s; }

Rat dot(const Vec& a, const Vec& b) {
    require_same_size(a.size(), b.size(), "dot product");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat norm_sq(const Vec& v) { return dot(v, v); }

double norm(const Vec& v) { return std::sqrt(to_double(norm_sq(v))); }

FloatVec to_float(const Vec& v) {
    FloatVec f;
    f.coords.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) f.coords[i] = to_double(v[i]);
    return f;
}

double norm(const FloatVec& v) {
    double s = 0;
    for (double x : v.coords) s += x * x;
    return std::sqrt(s);
}

Vec hadamard_mul(const Vec& x, const Vec& y) {
    require_same_size(x.size(), y.size(), "hadamard product");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] * y[i];
    return r;
}

Vec hadamard_cube(const Vec& x) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = pow_int(x[i], 3);
    return r;
}

PowResult hadamard_pow(const Vec& x, long p, long q) {
    if (q <= 0 || q % 2 == 0) throw EvenRootRequested();
    if (p < 0) {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (sgn(x[i]) == 0) throw ZeroToNegativePower();
    }
    PowResult res;
    std::vector<Rat> exact(x.size());
    bool all_exact = true;
    for (std::size_t i = 0; i < x.size() && all_exact; ++i) {
        std::optional<Rat> root =
            q == 1 ? std::optional<Rat>(x[i])
                   : exact_root(x[i], static_cast<unsigned long>(q));
        if (!root) {
            all_exact = false;
        } else {
            exact[i] = pow_int(*root, p);
        }
    }
    if (all_exact) res.exact = Vec(std::move(exact));
    res.inexact = !all_exact;

    res.approx.coords.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double xi = to_double(x[i]);
        double mag = std::pow(std::fabs(xi),
                              static_cast<double>(p) / static_cast<double>(q));
        double sgn_pow = (xi < 0 && p % 2 != 0) ? -1.0 : 1.0;
        res.approx.coords[i] = (xi == 0.0) ? (p == 0 ? 1.0 : 0.0) : sgn_pow * mag;
    }
    return res;
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Rat>>& rows) {
    if (rows.empty()) return Mat();
    Mat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw DimensionMismatch("ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vec Mat::row(std::size_t i) const {
    Vec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

Vec Mat::col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Mat::is_zero() const {
    for (const Rat& q : a_)
        if (sgn(q) != 0) return false;
    return true;
}

Mat Mat::operator*(const Mat& o) const {
    require_same_size(cols_, o.rows_, "matrix product");
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& aik = (*this)(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

Vec Mat::operator*(const Vec& v) const {
    require_same_size(cols_, v.size(), "matrix-vector product");
    Vec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rat s(0);
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    require_same_size(rows_, o.rows_, "matrix add");
    require_same_size(cols_, o.cols_, "matrix add");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    require_same_size(rows_, o.rows_, "matrix sub");
    require_same_size(cols_, o.cols_, "matrix sub");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Mat diag(const Vec& d) {
    Mat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Rat trace(const Mat& m) {
    if (!m.is_square()) throw DimensionMismatch("trace of non-square matrix");
    Rat s(0);
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
    return s;
}

Rat det(const Mat& m) {
    if (!m.is_square()) throw DimensionMismatch("determinant of non-square matrix");
    Mat a = m;
    std::size_t n = a.rows();
    Rat d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a(piv, col)) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            d = -d;
        }
        d *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(a(i, col)) == 0) continue;
            Rat f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return d;
}

RrefResult rref(const Mat& m) {
    RrefResult res;
    res.reduced = m;
    Mat& a = res.reduced;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t piv = r;
        while (piv < m.rows() && sgn(a(piv, col)) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(a(piv, j), a(r, j));
        Rat inv = 1 / a(r, col);
        for (std::size_t j = col; j < m.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || sgn(a(i, col)) == 0) continue;
            Rat f = a(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        res.pivot_cols.push_back(col);
        ++r;
    }
    res.rank = r;
    return res;
}

std::size_t rank(const Mat& m) { return rref(m).rank; }

std::vector<Vec> kernel_vectors(const Mat& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < rr.rank; ++r) v[rr.pivot_cols[r]] = -rr.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> linsolve(const Mat& m, const Vec& b) {
    require_same_size(m.rows(), b.size(), "linear solve");
    Mat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    RrefResult rr = rref(aug);
    for (std::size_t c : rr.pivot_cols)
        if (c == m.cols()) return std::nullopt;  // inconsistent
    Vec x(m.cols());
    for (std::size_t r = 0; r < rr.rank; ++r)
        x[rr.pivot_cols[r]] = rr.reduced(r, m.cols());
    return x;
}

bool is_nilpotent(const Mat& m) {
    if (!m.is_square()) throw DimensionMismatch("nilpotency of non-square matrix");
    // M^k = 0 for some k <= n iff M^(2^ceil(lg n)) = 0.
    Mat p = m;
    std::size_t covered = 1;
    while (true) {
        if (p.is_zero()) return true;
        if (covered >= m.rows()) return false;
        p = p * p;
        covered *= 2;
    }
}

}  // namespace cubiclin
