#include "chlab/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "chlab/tensor_ops.hpp"

namespace chlab {

void CompatibleMetricParams::validate(double tol) const {
    const std::size_t n = alpha.size();
    if (e1.size() != n || e2.size() != n || p.size() != n || q.size() != n || r.size() != n)
        throw std::invalid_argument("CompatibleMetricParams: inconsistent field sizes");
    for (std::size_t s = 0; s < n; ++s) {
        if (!(p[s] > 0.0) || !(q[s] > 0.0))
            throw std::invalid_argument("CompatibleMetricParams: p, q must be positive (site " +
                                        std::to_string(s) + ")");
        if (std::abs(p[s] * q[s] - r[s] * r[s] - 1.0) > tol)
            throw std::invalid_argument("CompatibleMetricParams: pq - r^2 != 1 at site " +
                                        std::to_string(s));
    }
}

MetricField metric_from_params(const CompatibleMetricParams& params) {
    params.validate();
    const std::size_t n = params.alpha.size();
    MetricField g = zero_matrix_field(n);
    for (std::size_t s = 0; s < n; ++s) {
        g[s] = outer(params.alpha[s], params.alpha[s]) +
               outer(params.e1[s], params.e1[s]) * params.p[s] +
               (outer(params.e1[s], params.e2[s]) + outer(params.e2[s], params.e1[s])) * params.r[s] +
               outer(params.e2[s], params.e2[s]) * params.q[s];
    }
    return g;
}

double CompatDiagnostics::max() const {
    return std::max(alpha_norm_defect, std::max(hodge_defect, volume_defect));
}

CovectorField hodge_star_two_form(const TwoFormField& b, const MetricField& g, double orient) {
    const std::size_t n = b.size();
    CovectorField out = zero_covector_field(n);
    for (std::size_t s = 0; s < n; ++s) {
        const double root = std::sqrt(g[s].det());
        // (1/2) eps^{ijk} B_ij picks the axial components of B
        const Vec3 ax{b[s](1, 2), b[s](2, 0), b[s](0, 1)};
        out[s] = (orient / root) * (g[s].transposed() * ax);
    }
    return out;
}

ScalarField volume_density(const MetricField& g) {
    ScalarField out(g.size());
    for (std::size_t s = 0; s < g.size(); ++s) {
        const double d = g[s].det();
        if (!(d > 0.0)) throw std::runtime_error("volume_density: metric not positive definite at site " +
                                                 std::to_string(s));
        out[s] = std::sqrt(d);
    }
    return out;
}

CompatDiagnostics check_compatible(const MetricField& g, const ContactStructure& contact,
                                   double theta) {
    CompatDiagnostics d;
    const std::size_t n = g.size();
    const CovectorField star = hodge_star_two_form(contact.d_alpha, g, contact.orient);
    const ScalarField vol = volume_density(g);
    const ScalarField cvol = contact_volume_density(contact);
    for (std::size_t s = 0; s < n; ++s) {
        const Vec3 a_raised = g[s].inverse() * contact.alpha[s];
        const double norm = std::sqrt(std::max(0.0, dot(contact.alpha[s], a_raised)));
        d.alpha_norm_defect = std::max(d.alpha_norm_defect, std::abs(norm - 1.0));
        for (int i = 0; i < 3; ++i)
            d.hodge_defect = std::max(
                d.hodge_defect, std::abs(star[s][static_cast<std::size_t>(i)] - theta * contact.alpha[s][static_cast<std::size_t>(i)]));
        d.volume_defect =
            std::max(d.volume_defect, std::abs(contact.orient * vol[s] - cvol[s] / theta));
    }
    return d;
}

MetricField rescale_theta(const MetricField& g, const ContactStructure& contact,
                          double theta, double theta_new) {
    if (theta_new <= 0.0) throw std::invalid_argument("rescale_theta: theta_new must be positive");
    const double f = theta / theta_new;
    const std::size_t n = g.size();
    MetricField out = zero_matrix_field(n);
    for (std::size_t s = 0; s < n; ++s) {
        const Mat3 aa = outer(contact.alpha[s], contact.alpha[s]);
        out[s] = (g[s] - aa) * f + aa;
    }
    return out;
}

double energy(const MetricField& g, const ContactStructure& contact, const GeometryBackend& be) {
    const MatrixField tau = torsion(g, contact.reeb, be);
    ScalarField dens = bilinear_norm_sq(tau, g);
    const ScalarField vol = volume_density(g);
    for (std::size_t s = 0; s < dens.size(); ++s) dens[s] *= vol[s];
    return be.integrate(dens);
}

double energy_from_lambda_sq(const ScalarField& lam_sq, const MetricField& g,
                             const GeometryBackend& be) {
    const ScalarField vol = volume_density(g);
    ScalarField dens(lam_sq.size());
    for (std::size_t s = 0; s < dens.size(); ++s) dens[s] = 8.0 * lam_sq[s] * vol[s];
    return be.integrate(dens);
}

}  // namespace chlab
