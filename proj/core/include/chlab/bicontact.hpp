#pragma once

#include "chlab/backend.hpp"
#include "chlab/tensor_ops.hpp"

namespace chlab {

struct BiContact {
    CovectorField eta1, eta2;  // g-duals of the h-eigenframe
    ScalarField lambda;        // positive eigenvalue field
};

/// Extracts the bi-contact pair from the h-tensor eigenframe: e_1 is the
/// g-unit eigenvector with eigenvalue -lambda, e_2 = -phi e_1, and eta_i are
/// their g-duals. Requires lambda^2 > lambda_floor at every site; throws
/// "degenerate torsion" otherwise. The e_1 sign is fixed by g(e_1, ref) >= 0
/// where ref is the first frame vector projected to ker alpha (second frame
/// vector when nearly orthogonal, threshold 1e-6).
BiContact bicontact_from_h(const MetricField& g, const ContactStructure& contact,
                           const GeometryBackend& be, double lambda_floor = 1e-12);

struct CalibrationRecord {
    double kappa = 0.0;            // best-fit constant in eta1 ^ d eta1 = kappa * Omega
    double kappa1_defect = 0.0;    // sup | (eta1 ^ d eta1)/Omega - kappa |
    double kappa2_defect = 0.0;    // sup | -(eta2 ^ d eta2)/Omega - kappa |
    double mixed_defect = 0.0;     // sup of |eta1 ^ d eta2| and |eta2 ^ d eta1| over Omega
    double volume_defect = 0.0;    // sup | (alpha ^ eta1 ^ eta2)/Omega - 1 |
    double lie_defect = 0.0;       // sup defects of L_R eta1 + kappa eta2, L_R eta2 + kappa eta1
    bool sign_consistent = false;  // kappa1 ~ kappa2 and kappa > 0
    double max_structure_defect() const;
};

/// Diagnostics for the calibrated bi-contact equations
///   eta1 ^ d eta1 = -eta2 ^ d eta2 = kappa Omega,
///   eta1 ^ d eta2 = eta2 ^ d eta1 = 0,
///   alpha ^ eta1 ^ eta2 = Omega,
///   L_R eta1 = -kappa eta2, L_R eta2 = -kappa eta1,
/// with Omega = (1/2) alpha ^ d alpha.
CalibrationRecord calibration_check(const ContactStructure& contact, const CovectorField& eta1,
                                    const CovectorField& eta2, const GeometryBackend& be);

struct AnosovFrameDefects {
    double stable = 0.0;    // sup || [R, e_s] - lambda e_s ||_g
    double unstable = 0.0;  // sup || [R, e_u] + lambda e_u ||_g
    double pairing = 0.0;   // sup || [e_s, e_u] - 2R ||_g
    double max() const { return std::max(stable, std::max(unstable, pairing)); }
};

/// Bracket relations of the stable/unstable combinations
/// e_s = (e1 + e2)/sqrt(2), e_u = (e1 - e2)/sqrt(2) built from the g-duals
/// of (eta1, eta2).
AnosovFrameDefects anosov_frame_check(const ContactStructure& contact, const CovectorField& eta1,
                                      const CovectorField& eta2, const MetricField& g,
                                      const GeometryBackend& be, const ScalarField& lambda);

}  // namespace chlab
