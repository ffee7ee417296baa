#include "chlab/connection.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "chlab/metrics.hpp"

namespace chlab {

ConnectionField levi_civita(const MetricField& g, const GeometryBackend& be) {
    const std::size_t n = be.sites();
    ConnectionField conn;
    conn.gamma.assign(n, {Mat3::zero(), Mat3::zero(), Mat3::zero()});

    // frame derivatives of the metric components
    std::array<std::array<std::array<ScalarField, 3>, 3>, 3> dg;  // dg[a][i][j] = X_a(g_ij)
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                dg[a][i][j] = be.derive_frame(component(g, i, j), a);
                if (j != i) dg[a][j][i] = dg[a][i][j];
            }

    for (std::size_t s = 0; s < n; ++s) {
        Mat3 k_low[3];  // k_low[i](j,k) = 2 g(nabla_{X_i} X_j, X_k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    double v = dg[i][j][k][s] + dg[j][i][k][s] - dg[k][i][j][s];
                    const Vec3& cij = be.frame_bracket(i, j)[s];
                    const Vec3& cjk = be.frame_bracket(j, k)[s];
                    const Vec3& cki = be.frame_bracket(k, i)[s];
                    for (int m = 0; m < 3; ++m) {
                        v += cij[static_cast<std::size_t>(m)] * g[s](m, k);
                        v -= cjk[static_cast<std::size_t>(m)] * g[s](m, i);
                        v += cki[static_cast<std::size_t>(m)] * g[s](m, j);
                    }
                    k_low[i](j, k) = v;
                }
        const Mat3 gi = g[s].inverse();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) {
                    double v = 0.0;
                    for (int k = 0; k < 3; ++k) v += gi(l, k) * k_low[i](j, k);
                    conn.gamma[s][static_cast<std::size_t>(i)](l, j) = 0.5 * v;
                }
    }
    return conn;
}

double metric_compatibility_defect(const ConnectionField& conn, const MetricField& g,
                                   const GeometryBackend& be) {
    double defect = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                const ScalarField d = be.derive_frame(component(g, i, j), a);
                for (std::size_t s = 0; s < be.sites(); ++s) {
                    double v = d[s];
                    for (int k = 0; k < 3; ++k)
                        v -= conn.gamma[s][static_cast<std::size_t>(a)](k, i) * g[s](k, j) +
                             conn.gamma[s][static_cast<std::size_t>(a)](k, j) * g[s](i, k);
                    defect = std::max(defect, std::abs(v));
                }
            }
    return defect;
}

double torsion_free_defect(const ConnectionField& conn, const GeometryBackend& be) {
    double defect = 0.0;
    for (std::size_t s = 0; s < be.sites(); ++s)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const double v = conn.gamma[s][static_cast<std::size_t>(i)](k, j) -
                                     conn.gamma[s][static_cast<std::size_t>(j)](k, i) -
                                     be.frame_bracket(i, j)[s][static_cast<std::size_t>(k)];
                    defect = std::max(defect, std::abs(v));
                }
    return defect;
}

VectorField covariant_derivative(const ConnectionField& conn, const VectorField& x,
                                 const VectorField& w, const GeometryBackend& be) {
    const std::size_t n = be.sites();
    VectorField out = zero_vector_field(n);
    for (int k = 0; k < 3; ++k) {
        const ScalarField d = be.derive(component(w, k), x);
        for (std::size_t s = 0; s < n; ++s) out[s][static_cast<std::size_t>(k)] = d[s];
    }
    for (std::size_t s = 0; s < n; ++s)
        for (int a = 0; a < 3; ++a) {
            const double xa = x[s][static_cast<std::size_t>(a)];
            if (xa == 0.0) continue;
            const Vec3 gw = conn.gamma[s][static_cast<std::size_t>(a)] * w[s];
            for (int k = 0; k < 3; ++k) out[s][static_cast<std::size_t>(k)] += xa * gw[static_cast<std::size_t>(k)];
        }
    return out;
}

EndoField covariant_derivative_endo(const ConnectionField& conn, const VectorField& v,
                                    const EndoField& t, const GeometryBackend& be) {
    const std::size_t n = be.sites();
    EndoField out = zero_matrix_field(n);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const ScalarField d = be.derive(component(t, i, j), v);
            for (std::size_t s = 0; s < n; ++s) out[s](i, j) = d[s];
        }
    for (std::size_t s = 0; s < n; ++s)
        for (int a = 0; a < 3; ++a) {
            const double va = v[s][static_cast<std::size_t>(a)];
            if (va == 0.0) continue;
            const Mat3& ga = conn.gamma[s][static_cast<std::size_t>(a)];
            const Mat3 comm = ga * t[s] - t[s] * ga;
            out[s] = out[s] + comm * va;
        }
    return out;
}

double covariant_reeb_check(const MetricField& g, const ContactStructure& contact,
                            const GeometryBackend& be) {
    const std::size_t n = be.sites();
    const ConnectionField conn = levi_civita(g, be);
    const EndoField phi = phi_from_metric(g, contact);
    const EndoField h = h_tensor(phi, contact.reeb, be);

    double defect = 0.0;
    for (int a = 0; a < 3; ++a) {
        // frame vector X_a as a field
        VectorField xa = zero_vector_field(n);
        for (std::size_t s = 0; s < n; ++s) xa[s][static_cast<std::size_t>(a)] = 1.0;
        const VectorField nabla_r = covariant_derivative(conn, xa, contact.reeb, be);
        for (std::size_t s = 0; s < n; ++s) {
            const Vec3 x{a == 0 ? 1.0 : 0.0, a == 1 ? 1.0 : 0.0, a == 2 ? 1.0 : 0.0};
            const Vec3 v = nabla_r[s] + phi[s] * x + phi[s] * (h[s] * x);
            defect = std::max(defect, std::sqrt(std::max(0.0, bilinear(g[s], v, v))));
        }
    }
    return defect;
}

TannoResidual tanno_residual(const MetricField& g, const ContactStructure& contact,
                             const GeometryBackend& be) {
    const std::size_t n = be.sites();
    const ConnectionField conn = levi_civita(g, be);
    const EndoField phi = phi_from_metric(g, contact);
    const EndoField h = h_tensor(phi, contact.reeb, be);
    const EndoField nrh = covariant_derivative_endo(conn, contact.reeb, h, be);

    EndoField res = zero_matrix_field(n);
    for (std::size_t s = 0; s < n; ++s) res[s] = nrh[s] - (h[s] * phi[s]) * 2.0;

    TannoResidual out;
    ScalarField sq = endo_norm_sq(res, g);
    out.pointwise.resize(n);
    for (std::size_t s = 0; s < n; ++s) out.pointwise[s] = std::sqrt(std::max(0.0, sq[s]));

    const ScalarField vol = volume_density(g);
    ScalarField dens(n);
    for (std::size_t s = 0; s < n; ++s) dens[s] = sq[s] * vol[s];
    out.l2 = std::sqrt(std::max(0.0, be.integrate(dens)));
    return out;
}

ScalarField sectional_curvature(const MetricField& g, const VectorField& x, const VectorField& y,
                                const GeometryBackend& be) {
    const std::size_t n = be.sites();
    const ConnectionField conn = levi_civita(g, be);

    const VectorField ny_y = covariant_derivative(conn, y, y, be);
    const VectorField nx_y = covariant_derivative(conn, x, y, be);
    const VectorField t1 = covariant_derivative(conn, x, ny_y, be);   // nabla_X nabla_Y Y
    const VectorField t2 = covariant_derivative(conn, y, nx_y, be);   // nabla_Y nabla_X Y
    const VectorField xy = lie_bracket(x, y, be);
    const VectorField t3 = covariant_derivative(conn, xy, y, be);     // nabla_[X,Y] Y

    ScalarField k(n);
    for (std::size_t s = 0; s < n; ++s) {
        const Vec3 rxyy = t1[s] - t2[s] - t3[s];
        const double num = bilinear(g[s], rxyy, x[s]);
        const double den = bilinear(g[s], x[s], x[s]) * bilinear(g[s], y[s], y[s]) -
                           bilinear(g[s], x[s], y[s]) * bilinear(g[s], x[s], y[s]);
        if (!(den > 1e-14))
            throw std::runtime_error("sectional_curvature: degenerate plane at site " + std::to_string(s));
        k[s] = num / den;
    }
    return k;
}

}  // namespace chlab
