#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace chlab {

using Vec3 = std::array<double, 3>;

/// Dense 3x3 matrix, row-major. All tensor fields store one of these per site.
struct Mat3 {
    std::array<double, 9> a{};

    static Mat3 zero() { return Mat3{}; }
    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(3 * i + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }

    Mat3 operator+(const Mat3& o) const;
    Mat3 operator-(const Mat3& o) const;
    Mat3 operator*(double s) const;
    Mat3 operator*(const Mat3& o) const;
    Vec3 operator*(const Vec3& v) const;

    Mat3 transposed() const;
    double trace() const { return a[0] + a[4] + a[8]; }
    double det() const;
    Mat3 inverse() const;  // throws on near-singular input
    double max_abs() const;
};

inline Vec3 operator+(const Vec3& x, const Vec3& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2]}; }
inline Vec3 operator-(const Vec3& x, const Vec3& y) { return {x[0] - y[0], x[1] - y[1], x[2] - y[2]}; }
inline Vec3 operator*(double s, const Vec3& x) { return {s * x[0], s * x[1], s * x[2]}; }
inline double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

/// v^T M w
double bilinear(const Mat3& m, const Vec3& v, const Vec3& w);

/// Outer product v w^T
Mat3 outer(const Vec3& v, const Vec3& w);

/// Solves M x = b by partial-pivot elimination. Returns false if M is
/// singular to working precision.
bool solve3(const Mat3& m, const Vec3& b, Vec3& x);

/// Eigen-decomposition of the pencil (A, G): A v = mu G v with A symmetric
/// and G symmetric positive definite. Eigenvalues ascending; eigenvectors are
/// G-orthonormal columns of `vecs`.
void generalized_symmetric_eig(const Mat3& A, const Mat3& G,
                               Vec3& values, Mat3& vecs);

}  // namespace chlab
