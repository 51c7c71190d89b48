#pragma once

// Dense exact vectors and matrices over Rat, plus the coordinatewise
// (Hadamard) operations the cubic maps are built from.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "cubiclin/rational.hpp"

namespace cubiclin {

struct FloatVec {
    std::vector<double> coords;
    bool overflowed = false;  // set when an evaluation produced non-finite entries

    std::size_t size() const { return coords.size(); }
    double& operator[](std::size_t i) { return coords[i]; }
    double operator[](std::size_t i) const { return coords[i]; }
};

class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t n) : c_(n, Rat(0)) {}
    Vec(std::initializer_list<Rat> init) : c_(init) {}
    explicit Vec(std::vector<Rat> c) : c_(std::move(c)) {}

    static Vec unit(std::size_t n, std::size_t i);

    std::size_t size() const { return c_.size(); }
    Rat& operator[](std::size_t i) { return c_[i]; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Rat>& coords() const { return c_; }

    bool operator==(const Vec& o) const { return c_ == o.c_; }
    bool is_zero() const;

    Vec operator+(const Vec& o) const;
    Vec operator-(const Vec& o) const;
    Vec operator-() const;
    Vec operator*(const Rat& s) const;

private:
    std::vector<Rat> c_;
};

Vec operator*(const Rat& s, const Vec& v);

Rat dot(const Vec& a, const Vec& b);
Rat norm_sq(const Vec& v);
double norm(const Vec& v);
FloatVec to_float(const Vec& v);
double norm(const FloatVec& v);

Vec hadamard_mul(const Vec& x, const Vec& y);
Vec hadamard_cube(const Vec& x);

// x^(p/q) coordinatewise, q odd positive, signs preserved. Exact when every
// coordinate is a perfect q-th power of a rational; otherwise `exact` is
// empty and only the numeric mirror is meaningful.
struct PowResult {
    std::optional<Vec> exact;
    FloatVec approx;
    bool inexact = false;
};
PowResult hadamard_pow(const Vec& x, long p, long q);

class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, Rat(0)) {}

    static Mat identity(std::size_t n);
    static Mat from_rows(const std::vector<std::vector<Rat>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;

    bool operator==(const Mat& o) const;
    bool is_zero() const;

    Mat operator*(const Mat& o) const;
    Vec operator*(const Vec& v) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat transpose() const;

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

Mat diag(const Vec& d);
Rat trace(const Mat& m);
Rat det(const Mat& m);

struct RrefResult {
    Mat reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};
RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);

// Kernel vectors in free-column order, from the reduced echelon form.
std::vector<Vec> kernel_vectors(const Mat& m);

// One solution of M x = b with free variables set to zero, or none.
std::optional<Vec> linsolve(const Mat& m, const Vec& b);

bool is_nilpotent(const Mat& m);

}  // namespace cubiclin
