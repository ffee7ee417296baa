#include "chlab/bicontact.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chlab {

namespace {

// (beta ^ gamma)(X_0, X_1, X_2) for a 1-form beta and antisymmetric gamma.
double wedge_13(const Vec3& beta, const Mat3& gamma) {
    return beta[0] * gamma(1, 2) - beta[1] * gamma(0, 2) + beta[2] * gamma(0, 1);
}

// (a ^ b ^ c)(X_0, X_1, X_2) = det of the coframe rows.
double wedge_111(const Vec3& a, const Vec3& b, const Vec3& c) {
    Mat3 m;
    for (int j = 0; j < 3; ++j) {
        m(0, j) = a[static_cast<std::size_t>(j)];
        m(1, j) = b[static_cast<std::size_t>(j)];
        m(2, j) = c[static_cast<std::size_t>(j)];
    }
    return m.det();
}

// (L_R eta)(X_a) = R(eta_a) - eta([R, X_a])
CovectorField lie_derivative_covector(const CovectorField& eta, const VectorField& reeb,
                                      const GeometryBackend& be) {
    const std::size_t n = be.sites();
    const MatrixField B = bracket_with_frame(reeb, be);
    CovectorField out = zero_covector_field(n);
    for (int a = 0; a < 3; ++a) {
        const ScalarField d = be.derive(component(eta, a), reeb);
        for (std::size_t s = 0; s < n; ++s) {
            double v = d[s];
            for (int c = 0; c < 3; ++c) v -= B[s](c, a) * eta[s][static_cast<std::size_t>(c)];
            out[s][static_cast<std::size_t>(a)] = v;
        }
    }
    return out;
}

}  // namespace

BiContact bicontact_from_h(const MetricField& g, const ContactStructure& contact,
                           const GeometryBackend& be, double lambda_floor) {
    const std::size_t n = be.sites();
    const EndoField phi = phi_from_metric(g, contact);
    const EndoField h = h_tensor(phi, contact.reeb, be);
    const ScalarField lsq = lambda_sq(h, g);

    BiContact out;
    out.eta1 = zero_covector_field(n);
    out.eta2 = zero_covector_field(n);
    out.lambda.resize(n);

    for (std::size_t s = 0; s < n; ++s) {
        if (!(lsq[s] > lambda_floor))
            throw std::runtime_error(
                "bicontact_from_h: degenerate torsion; bi-contact extraction undefined (site " +
                std::to_string(s) + ")");
        out.lambda[s] = std::sqrt(lsq[s]);

        // h is g-symmetric, so G h is symmetric: solve (G h) v = mu G v.
        const Mat3 A = g[s] * h[s];
        Vec3 values;
        Mat3 vecs;
        generalized_symmetric_eig(A, g[s], values, vecs);

        // eigenvalues are {-lambda, 0, +lambda} ascending; e_1 has the lowest
        Vec3 e1{vecs(0, 0), vecs(1, 0), vecs(2, 0)};

        // orientation gauge: g(e_1, ref) >= 0, ref = projection of X_0 to ker alpha
        Vec3 ref{1.0, 0.0, 0.0};
        Vec3 proj = ref - contact.alpha[s][0] * contact.reeb[s];
        double pairing = bilinear(g[s], e1, proj);
        const double pscale = std::sqrt(std::max(1e-300, bilinear(g[s], proj, proj)));
        if (std::abs(pairing) < 1e-6 * pscale) {
            ref = Vec3{0.0, 1.0, 0.0};
            proj = ref - contact.alpha[s][1] * contact.reeb[s];
            pairing = bilinear(g[s], e1, proj);
        }
        if (pairing < 0.0) e1 = -1.0 * e1;

        const Vec3 e2 = -1.0 * (phi[s] * e1);
        out.eta1[s] = g[s] * e1;
        out.eta2[s] = g[s] * e2;
    }
    return out;
}

double CalibrationRecord::max_structure_defect() const {
    double m = std::max(kappa1_defect, kappa2_defect);
    m = std::max(m, mixed_defect);
    m = std::max(m, volume_defect);
    return std::max(m, lie_defect);
}

CalibrationRecord calibration_check(const ContactStructure& contact, const CovectorField& eta1,
                                    const CovectorField& eta2, const GeometryBackend& be) {
    const std::size_t n = be.sites();
    const TwoFormField de1 = exterior_derivative(eta1, be);
    const TwoFormField de2 = exterior_derivative(eta2, be);
    const ScalarField cvol = contact_volume_density(contact);

    ScalarField k1(n), k2(n), mixed1(n), mixed2(n), vol(n);
    for (std::size_t s = 0; s < n; ++s) {
        const double omega = 0.5 * cvol[s];
        k1[s] = wedge_13(eta1[s], de1[s]) / omega;
        k2[s] = -wedge_13(eta2[s], de2[s]) / omega;
        mixed1[s] = wedge_13(eta1[s], de2[s]) / omega;
        mixed2[s] = wedge_13(eta2[s], de1[s]) / omega;
        vol[s] = wedge_111(contact.alpha[s], eta1[s], eta2[s]) / omega - 1.0;
    }

    CalibrationRecord rec;
    double acc = 0.0;
    for (std::size_t s = 0; s < n; ++s) acc += 0.5 * (k1[s] + k2[s]);
    rec.kappa = acc / static_cast<double>(n);
    for (std::size_t s = 0; s < n; ++s) {
        rec.kappa1_defect = std::max(rec.kappa1_defect, std::abs(k1[s] - rec.kappa));
        rec.kappa2_defect = std::max(rec.kappa2_defect, std::abs(k2[s] - rec.kappa));
        rec.mixed_defect = std::max(rec.mixed_defect, std::max(std::abs(mixed1[s]), std::abs(mixed2[s])));
        rec.volume_defect = std::max(rec.volume_defect, std::abs(vol[s]));
    }

    const CovectorField l1 = lie_derivative_covector(eta1, contact.reeb, be);
    const CovectorField l2 = lie_derivative_covector(eta2, contact.reeb, be);
    for (std::size_t s = 0; s < n; ++s)
        for (int a = 0; a < 3; ++a) {
            rec.lie_defect = std::max(
                rec.lie_defect, std::abs(l1[s][static_cast<std::size_t>(a)] + rec.kappa * eta2[s][static_cast<std::size_t>(a)]));
            rec.lie_defect = std::max(
                rec.lie_defect, std::abs(l2[s][static_cast<std::size_t>(a)] + rec.kappa * eta1[s][static_cast<std::size_t>(a)]));
        }

    const double scale = std::max(1.0, std::abs(rec.kappa));
    rec.sign_consistent = rec.kappa > 0.0 &&
                          rec.kappa1_defect <= 1e-6 * scale &&
                          rec.kappa2_defect <= 1e-6 * scale;
    return rec;
}

AnosovFrameDefects anosov_frame_check(const ContactStructure& contact, const CovectorField& eta1,
                                      const CovectorField& eta2, const MetricField& g,
                                      const GeometryBackend& be, const ScalarField& lambda) {
    const std::size_t n = be.sites();
    const VectorField e1 = raise(eta1, g);
    const VectorField e2 = raise(eta2, g);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    VectorField es = zero_vector_field(n), eu = zero_vector_field(n);
    for (std::size_t s = 0; s < n; ++s) {
        es[s] = inv_sqrt2 * (e1[s] + e2[s]);
        eu[s] = inv_sqrt2 * (e1[s] - e2[s]);
    }

    const VectorField r_es = lie_bracket(contact.reeb, es, be);
    const VectorField r_eu = lie_bracket(contact.reeb, eu, be);
    const VectorField es_eu = lie_bracket(es, eu, be);

    AnosovFrameDefects d;
    for (std::size_t s = 0; s < n; ++s) {
        const Vec3 ds = r_es[s] - lambda[s] * es[s];
        const Vec3 du = r_eu[s] + lambda[s] * eu[s];
        const Vec3 dp = es_eu[s] - 2.0 * contact.reeb[s];
        d.stable = std::max(d.stable, std::sqrt(std::max(0.0, bilinear(g[s], ds, ds))));
        d.unstable = std::max(d.unstable, std::sqrt(std::max(0.0, bilinear(g[s], du, du))));
        d.pairing = std::max(d.pairing, std::sqrt(std::max(0.0, bilinear(g[s], dp, dp))));
    }
    return d;
}

}  // namespace chlab
