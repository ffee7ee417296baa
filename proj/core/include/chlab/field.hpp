#pragma once

#include <cstddef>
#include <vector>

#include "chlab/linalg.hpp"

namespace chlab {

/// Sampled fields. Every field is a flat array with one entry per backend
/// site (a single site for homogeneous models, n^3 for the torus grid).
/// Conventions, fixed once for the whole library:
///   - VectorField   v[s][i]   : components along the frame, V = v^i X_i
///   - CovectorField w[s][i]   : frame pairings, w_i = eta(X_i)
///   - MatrixField   m[s](i,j) : meaning depends on the tensor:
///       metric / bilinear form  m(i,j) = T(X_i, X_j)
///       two-form                m(i,j) = B(X_i, X_j), antisymmetric
///       endomorphism            column j = components of T(X_j)
using ScalarField = std::vector<double>;

struct VectorField {
    std::vector<Vec3> v;
    std::size_t size() const { return v.size(); }
    Vec3& operator[](std::size_t s) { return v[s]; }
    const Vec3& operator[](std::size_t s) const { return v[s]; }
};

struct CovectorField {
    std::vector<Vec3> v;
    std::size_t size() const { return v.size(); }
    Vec3& operator[](std::size_t s) { return v[s]; }
    const Vec3& operator[](std::size_t s) const { return v[s]; }
};

struct MatrixField {
    std::vector<Mat3> m;
    std::size_t size() const { return m.size(); }
    Mat3& operator[](std::size_t s) { return m[s]; }
    const Mat3& operator[](std::size_t s) const { return m[s]; }
};

using MetricField = MatrixField;   // symmetric positive definite per site
using TwoFormField = MatrixField;  // antisymmetric per site
using EndoField = MatrixField;     // (1,1)-tensor per site

inline ScalarField constant_field(std::size_t n, double c) { return ScalarField(n, c); }

inline VectorField zero_vector_field(std::size_t n) {
    VectorField f;
    f.v.assign(n, Vec3{});
    return f;
}

inline CovectorField zero_covector_field(std::size_t n) {
    CovectorField f;
    f.v.assign(n, Vec3{});
    return f;
}

inline MatrixField zero_matrix_field(std::size_t n) {
    MatrixField f;
    f.m.assign(n, Mat3::zero());
    return f;
}

/// Extracts component i as a scalar field (used to route components through
/// the backend's scalar derivative).
ScalarField component(const VectorField& f, int i);
ScalarField component(const CovectorField& f, int i);
ScalarField component(const MatrixField& f, int i, int j);

double sup_abs(const ScalarField& f);

}  // namespace chlab
