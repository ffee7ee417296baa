#include "chlab/tensor_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chlab {

TwoFormField exterior_derivative(const CovectorField& eta, const GeometryBackend& be) {
    const std::size_t n = be.sites();
    if (eta.size() != n) throw std::invalid_argument("exterior_derivative: field/backend size mismatch");
    TwoFormField d = zero_matrix_field(n);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const ScalarField xi_ej = be.derive_frame(component(eta, j), i);
            const ScalarField xj_ei = be.derive_frame(component(eta, i), j);
            const VectorField& cij = be.frame_bracket(i, j);
            for (std::size_t s = 0; s < n; ++s) {
                const double v = xi_ej[s] - xj_ei[s] - dot(eta[s], cij[s]);
                d[s](i, j) = v;
                d[s](j, i) = -v;
            }
        }
    return d;
}

VectorField reeb_field(const CovectorField& alpha, const TwoFormField& d_alpha,
                       const GeometryBackend& be) {
    const std::size_t n = be.sites();
    VectorField r = zero_vector_field(n);
    for (std::size_t s = 0; s < n; ++s) {
        const Mat3& D = d_alpha[s];
        // kernel of an antisymmetric 3x3: v^a = (1/2) eps^{abc} D_bc
        const Vec3 v{D(1, 2), D(2, 0), D(0, 1)};
        const double pairing = dot(alpha[s], v);
        const double scale = std::max(1.0, D.max_abs());
        if (std::abs(pairing) < 1e-13 * scale)
            throw std::runtime_error("reeb_field: degenerate d_alpha at site " + std::to_string(s));
        r[s] = (1.0 / pairing) * v;
    }
    return r;
}

ContactStructure make_contact_structure(const CovectorField& alpha, const GeometryBackend& be,
                                        double theta) {
    if (theta <= 0.0) throw std::invalid_argument("make_contact_structure: theta must be positive");
    ContactStructure c;
    c.alpha = alpha;
    c.d_alpha = exterior_derivative(alpha, be);
    c.reeb = reeb_field(alpha, c.d_alpha, be);
    c.theta = theta;
    const ScalarField dens = contact_volume_density(c);
    c.orient = dens[0] >= 0.0 ? 1.0 : -1.0;
    // contact condition: one sign everywhere
    for (std::size_t s = 0; s < dens.size(); ++s)
        if (dens[s] * c.orient <= 0.0)
            throw std::runtime_error("make_contact_structure: alpha ^ d_alpha vanishes or flips sign at site " +
                                     std::to_string(s));
    return c;
}

ScalarField contact_volume_density(const ContactStructure& c) {
    const std::size_t n = c.alpha.size();
    ScalarField out(n);
    for (std::size_t s = 0; s < n; ++s) {
        const Vec3& a = c.alpha[s];
        const Mat3& D = c.d_alpha[s];
        out[s] = a[0] * D(1, 2) - a[1] * D(0, 2) + a[2] * D(0, 1);
    }
    return out;
}

EndoField phi_from_metric(const MetricField& g, const ContactStructure& contact) {
    const std::size_t n = g.size();
    EndoField phi = zero_matrix_field(n);
    for (std::size_t s = 0; s < n; ++s) phi[s] = g[s].inverse() * contact.d_alpha[s] * 0.5;
    return phi;
}

MatrixField torsion(const MetricField& g, const VectorField& reeb, const GeometryBackend& be) {
    const std::size_t n = be.sites();
    const MatrixField B = bracket_with_frame(reeb, be);
    MatrixField tau = zero_matrix_field(n);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const ScalarField rg = be.derive(component(g, i, j), reeb);
            for (std::size_t s = 0; s < n; ++s) {
                double v = rg[s];
                for (int c = 0; c < 3; ++c)
                    v -= B[s](c, i) * g[s](c, j) + B[s](c, j) * g[s](i, c);
                tau[s](i, j) = v;
                tau[s](j, i) = v;
            }
        }
    return tau;
}

EndoField h_tensor(const EndoField& phi, const VectorField& reeb, const GeometryBackend& be) {
    const std::size_t n = be.sites();
    const MatrixField B = bracket_with_frame(reeb, be);
    EndoField h = zero_matrix_field(n);
    // (L_R phi)^i_j = R(phi^i_j) + (B phi - phi B)^i_j
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const ScalarField rp = be.derive(component(phi, i, j), reeb);
            for (std::size_t s = 0; s < n; ++s) h[s](i, j) = rp[s];
        }
    for (std::size_t s = 0; s < n; ++s) {
        const Mat3 comm = B[s] * phi[s] - phi[s] * B[s];
        h[s] = (h[s] + comm) * 0.5;
    }
    return h;
}

ScalarField lambda_sq(const EndoField& h, const MetricField& g) {
    ScalarField l = endo_norm_sq(h, g);
    for (double& x : l) x *= 0.5;
    return l;
}

ScalarField bilinear_norm_sq(const MatrixField& t, const MetricField& g) {
    const std::size_t n = t.size();
    ScalarField out(n);
    for (std::size_t s = 0; s < n; ++s) {
        const Mat3 m = g[s].inverse() * t[s];
        out[s] = (m * m).trace();
    }
    return out;
}

ScalarField endo_norm_sq(const MatrixField& t, const MetricField& g) {
    const std::size_t n = t.size();
    ScalarField out(n);
    for (std::size_t s = 0; s < n; ++s) {
        const Mat3 gi = g[s].inverse();
        out[s] = (t[s] * gi * t[s].transposed() * g[s]).trace();
    }
    return out;
}

ScalarField vector_norm(const VectorField& v, const MetricField& g) {
    const std::size_t n = v.size();
    ScalarField out(n);
    for (std::size_t s = 0; s < n; ++s) out[s] = std::sqrt(std::max(0.0, bilinear(g[s], v[s], v[s])));
    return out;
}

MatrixField torsion_from_h(const EndoField& h, const EndoField& phi, const MetricField& g) {
    const std::size_t n = h.size();
    MatrixField tau = zero_matrix_field(n);
    for (std::size_t s = 0; s < n; ++s) {
        // tau(X,Y) = 2 g(h phi X, Y)  =>  tau = 2 (h phi)^t G
        tau[s] = (h[s] * phi[s]).transposed() * g[s] * 2.0;
    }
    return tau;
}

ScalarField reeb_derivative(const ScalarField& f, const ContactStructure& contact,
                            const GeometryBackend& be) {
    return be.derive(f, contact.reeb);
}

VectorField raise(const CovectorField& eta, const MetricField& g) {
    const std::size_t n = eta.size();
    VectorField v = zero_vector_field(n);
    for (std::size_t s = 0; s < n; ++s) v[s] = g[s].inverse() * eta[s];
    return v;
}

CovectorField lower(const VectorField& v, const MetricField& g) {
    const std::size_t n = v.size();
    CovectorField eta = zero_covector_field(n);
    for (std::size_t s = 0; s < n; ++s) eta[s] = g[s] * v[s];
    return eta;
}

}  // namespace chlab
