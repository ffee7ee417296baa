#pragma once

#include <cstddef>
#include <memory>

#include "chlab/field.hpp"

namespace chlab {

/// A geometry backend fixes a global frame {X_0, X_1, X_2} on the manifold
/// and provides the differential calculus of that frame: Lie brackets of the
/// frame vectors, directional derivatives of scalar fields, and integration
/// against the reference volume x^0 ^ x^1 ^ x^2 (dual coframe).
///
/// Homogeneous backends have a single site, constant structure brackets and
/// vanishing derivatives; the torus backend uses the coordinate frame with
/// zero brackets and periodic difference kernels.
class GeometryBackend {
public:
    virtual ~GeometryBackend() = default;

    virtual std::size_t sites() const = 0;

    /// Components of [X_i, X_j] per site.
    virtual const VectorField& frame_bracket(int i, int j) const = 0;

    /// X_i(f)
    virtual ScalarField derive_frame(const ScalarField& f, int i) const = 0;

    /// Integral of a scalar density against the reference frame volume.
    virtual double integrate(const ScalarField& density) const = 0;

    /// Expected magnitude of discretization error: 0 when the backend's
    /// calculus is exact to roundoff, h^order for stencil kernels. Checks
    /// widen their algebraic tolerance to at least this value.
    virtual double tolerance_scale() const = 0;

    /// v(f) = sum_i v^i X_i(f)
    ScalarField derive(const ScalarField& f, const VectorField& v) const;
};

/// [v, w] for arbitrary vector fields given in frame components:
/// [v,w]^k = v(w^k) - w(v^k) + v^i w^j c^k_{ij}.
VectorField lie_bracket(const VectorField& v, const VectorField& w, const GeometryBackend& be);

/// Bracket matrix of v against the frame: column a holds the components of
/// [v, X_a]. Used by Lie-derivative formulas.
MatrixField bracket_with_frame(const VectorField& v, const GeometryBackend& be);

struct ContactStructure {
    CovectorField alpha;
    TwoFormField d_alpha;
    VectorField reeb;
    double theta = 2.0;
    /// Sign of (alpha ^ d_alpha)(X_0, X_1, X_2): the contact orientation
    /// relative to the frame. Hodge duals and volume forms carry this factor.
    double orient = 1.0;
};

struct Tolerances {
    double algebraic = 1e-10;  // homogeneous backends
    double jacobi = 1e-12;
    /// Effective tolerance for a backend: algebraic, widened to the backend's
    /// discretization scale.
    double for_backend(const GeometryBackend& be) const {
        const double s = be.tolerance_scale();
        return s > algebraic ? s : algebraic;
    }
};

}  // namespace chlab
