#pragma once

#include "chlab/backend.hpp"

namespace chlab {

/// d(eta)(X,Y) = X eta(Y) - Y eta(X) - eta([X,Y]) evaluated on the frame.
/// Antisymmetric per site.
TwoFormField exterior_derivative(const CovectorField& eta, const GeometryBackend& be);

/// Solves { i_R d_alpha = 0, alpha(R) = 1 } per site. Throws
/// std::runtime_error naming the first offending site if d_alpha is
/// degenerate there (contact condition violated).
VectorField reeb_field(const CovectorField& alpha, const TwoFormField& d_alpha,
                       const GeometryBackend& be);

/// Assembles alpha, d(alpha), the Reeb field and the contact orientation.
ContactStructure make_contact_structure(const CovectorField& alpha, const GeometryBackend& be,
                                        double theta = 2.0);

/// (alpha ^ d_alpha)(X_0, X_1, X_2) per site.
ScalarField contact_volume_density(const ContactStructure& c);

/// phi = (1/2) G^{-1} D per site, the endomorphism with
/// (1/2) d_alpha(X, Y) = g(X, phi Y). Satisfies phi^2 = -I + alpha (x) R and
/// phi R = 0 whenever g is compatible.
EndoField phi_from_metric(const MetricField& g, const ContactStructure& contact);

/// Torsion tau = L_R g:
/// tau(X_i, X_j) = R(g_ij) - g([R,X_i], X_j) - g(X_i, [R,X_j]).
MatrixField torsion(const MetricField& g, const VectorField& reeb, const GeometryBackend& be);

/// h = (1/2) L_R phi; anticommutes with phi, h R = 0, g-symmetric, traceless.
EndoField h_tensor(const EndoField& phi, const VectorField& reeb, const GeometryBackend& be);

/// lambda^2 = |h|_g^2 / 2. Agrees with |tau|_g^2 / 8.
ScalarField lambda_sq(const EndoField& h, const MetricField& g);

/// |T|_g^2 for a bilinear form: tr((G^{-1} T)^2).
ScalarField bilinear_norm_sq(const MatrixField& t, const MetricField& g);

/// |T|_g^2 for an endomorphism: tr(T G^{-1} T^t G).
ScalarField endo_norm_sq(const MatrixField& t, const MetricField& g);

/// g-norm of a vector field per site.
ScalarField vector_norm(const VectorField& v, const MetricField& g);

/// tau = 2 g(h phi ., .) as a bilinear form; cross-check route for torsion.
MatrixField torsion_from_h(const EndoField& h, const EndoField& phi, const MetricField& g);

/// R(f)
ScalarField reeb_derivative(const ScalarField& f, const ContactStructure& contact,
                            const GeometryBackend& be);

/// Raise an index: v = G^{-1} eta.
VectorField raise(const CovectorField& eta, const MetricField& g);
/// Lower an index: eta = G v.
CovectorField lower(const VectorField& v, const MetricField& g);

}  // namespace chlab
