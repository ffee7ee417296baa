#pragma once

#include <memory>

#include "chlab/backend.hpp"

namespace chlab {

/// Bracket table of a 3-dimensional Lie algebra:
/// [X_i, X_j] = sum_k c[k][i][j] X_k, antisymmetric in (i, j).
struct StructureConstants {
    double c[3][3][3] = {};

    double get(int k, int i, int j) const { return c[k][i][j]; }
    void set(int k, int i, int j, double v) {
        c[k][i][j] = v;
        c[k][j][i] = -v;
    }

    double antisymmetry_defect() const;
    double jacobi_defect() const;
    /// Trace of ad_X for each frame vector; nonzero trace breaks the
    /// bi-invariance of the reference volume.
    double unimodularity_defect() const;

    /// Throws if any defect exceeds its tolerance.
    void validate(double jacobi_tol = 1e-12) const;
};

/// The two-parameter unimodular family used by every homogeneous model:
/// [X_0, X_1] = a X_2, [X_0, X_2] = b X_1, [X_1, X_2] = -2 X_0.
/// Presets: sl2(lambda) = (lambda, lambda); nil = (0, 0); su2 = (-2, 2).
StructureConstants family_constants(double a, double b);

/// Single-site backend over a left-invariant frame. All scalar fields are
/// constant, derivatives vanish, and integration multiplies by the
/// normalized volume of the (compact quotient) manifold.
class HomogeneousBackend final : public GeometryBackend {
public:
    HomogeneousBackend(const StructureConstants& constants, double normalized_volume);

    std::size_t sites() const override { return 1; }
    const VectorField& frame_bracket(int i, int j) const override;
    ScalarField derive_frame(const ScalarField& f, int i) const override;
    double integrate(const ScalarField& density) const override;
    double tolerance_scale() const override { return 0.0; }

    double volume() const { return volume_; }
    const StructureConstants& constants() const { return constants_; }

private:
    StructureConstants constants_;
    double volume_;
    VectorField brackets_[3][3];
};

}  // namespace chlab
