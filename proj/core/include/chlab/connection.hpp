#pragma once

#include "chlab/backend.hpp"
#include "chlab/tensor_ops.hpp"

namespace chlab {

/// Levi-Civita connection coefficients in the backend frame.
/// gamma[i](k, j) = Gamma^k_{ij}, so that
/// (nabla_{X_i} W)^k = X_i(W^k) + Gamma^k_{ij} W^j.
struct ConnectionField {
    std::vector<std::array<Mat3, 3>> gamma;
    std::size_t size() const { return gamma.size(); }
};

/// Koszul formula on the frame:
/// 2 g(nabla_{X_i} X_j, X_k) = X_i g_jk + X_j g_ik - X_k g_ij
///   + g([X_i,X_j], X_k) - g([X_j,X_k], X_i) + g([X_k,X_i], X_j).
/// Reduces to Christoffel symbols on the torus coordinate frame and to the
/// algebraic Koszul expression on homogeneous frames.
ConnectionField levi_civita(const MetricField& g, const GeometryBackend& be);

/// Defect of metric compatibility: sup over sites and indices of
/// X_a(g_ij) - Gamma^k_{ai} g_kj - Gamma^k_{aj} g_ik.
double metric_compatibility_defect(const ConnectionField& conn, const MetricField& g,
                                   const GeometryBackend& be);

/// Defect of torsion-freeness: sup of Gamma^k_{ij} - Gamma^k_{ji} - c^k_{ij}.
double torsion_free_defect(const ConnectionField& conn, const GeometryBackend& be);

/// nabla_X W for vector fields in frame components.
VectorField covariant_derivative(const ConnectionField& conn, const VectorField& x,
                                 const VectorField& w, const GeometryBackend& be);

/// Covariant derivative of an endomorphism along a vector field:
/// (nabla_v T)^i_j = v(T^i_j) + v^a (Gamma^i_{ak} T^k_j - Gamma^k_{aj} T^i_k).
EndoField covariant_derivative_endo(const ConnectionField& conn, const VectorField& v,
                                    const EndoField& t, const GeometryBackend& be);

/// sup over frame vectors X of || nabla_X R + phi X + phi h X ||_g.
/// Holds (to discretization error) for every compatible metric.
double covariant_reeb_check(const MetricField& g, const ContactStructure& contact,
                            const GeometryBackend& be);

struct TannoResidual {
    ScalarField pointwise;  // |nabla_R h - 2 h phi|_g per site
    double l2 = 0.0;        // sqrt( integral of pointwise^2 vol_g )
};

/// Criticality residual of the torsion energy: nabla_R h - 2 h phi.
/// Vanishes exactly on critical compatible metrics.
TannoResidual tanno_residual(const MetricField& g, const ContactStructure& contact,
                             const GeometryBackend& be);

/// Sectional curvature K(X, Y) = g(R(X,Y)Y, X) / (|X|^2 |Y|^2 - g(X,Y)^2),
/// with R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z.
/// Throws if the plane degenerates at some site.
ScalarField sectional_curvature(const MetricField& g, const VectorField& x, const VectorField& y,
                                const GeometryBackend& be);

}  // namespace chlab
