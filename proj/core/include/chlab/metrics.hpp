#pragma once

#include "chlab/backend.hpp"

namespace chlab {

/// Metric parametrization over an adapted coframe {alpha, e1, e2} with
/// d_alpha = 2 e1 ^ e2:
///   g = alpha (x) alpha + p e1 (x) e1 + r (e1 (x) e2 + e2 (x) e1) + q e2 (x) e2
/// Compatibility requires p > 0, q > 0 and pq - r^2 = 1 at every site; the
/// determinant condition keeps the volume form fixed across the family.
struct CompatibleMetricParams {
    CovectorField alpha;
    CovectorField e1, e2;
    ScalarField p, q, r;

    /// Throws std::invalid_argument on p,q <= 0 or |pq - r^2 - 1| > tol.
    void validate(double tol = 1e-12) const;
};

MetricField metric_from_params(const CompatibleMetricParams& params);

struct CompatDiagnostics {
    double alpha_norm_defect = 0.0;  // sup | |alpha|_g - 1 |
    double hodge_defect = 0.0;       // sup || *d_alpha - theta alpha ||
    double volume_defect = 0.0;      // sup | vol_g - (1/theta) alpha ^ d_alpha |
    double max() const;
    bool within(double tol) const { return max() <= tol; }
};

/// Hodge dual of a two-form on a 3-manifold:
/// (*B)_l = orient * (1/2) eps^{ijk} B_ij G_kl / sqrt(det G).
CovectorField hodge_star_two_form(const TwoFormField& b, const MetricField& g, double orient);

/// sqrt(det G) per site (the Riemannian density against the frame volume).
ScalarField volume_density(const MetricField& g);

/// Sup-norm defects of |alpha|_g = 1, *d_alpha = theta alpha and
/// vol_g = (1/theta) alpha ^ d_alpha. Diagnostic only, never throws.
CompatDiagnostics check_compatible(const MetricField& g, const ContactStructure& contact,
                                   double theta);

/// g' = (theta/theta') g^zeta + alpha (x) alpha, the compatible metric with
/// constant theta'. Preserves theta * E(g) = theta' * E(g').
MetricField rescale_theta(const MetricField& g, const ContactStructure& contact,
                          double theta, double theta_new);

/// E(g) = integral of |L_R g|_g^2 vol_g.
double energy(const MetricField& g, const ContactStructure& contact, const GeometryBackend& be);

/// Same integral computed through 8 lambda^2; cross-check route.
double energy_from_lambda_sq(const ScalarField& lam_sq, const MetricField& g,
                             const GeometryBackend& be);

}  // namespace chlab
