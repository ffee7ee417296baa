#include "chlab/backend.hpp"

namespace chlab {

ScalarField component(const VectorField& f, int i) {
    ScalarField out(f.size());
    for (std::size_t s = 0; s < f.size(); ++s) out[s] = f[s][static_cast<std::size_t>(i)];
    return out;
}

ScalarField component(const CovectorField& f, int i) {
    ScalarField out(f.size());
    for (std::size_t s = 0; s < f.size(); ++s) out[s] = f[s][static_cast<std::size_t>(i)];
    return out;
}

ScalarField component(const MatrixField& f, int i, int j) {
    ScalarField out(f.size());
    for (std::size_t s = 0; s < f.size(); ++s) out[s] = f[s](i, j);
    return out;
}

double sup_abs(const ScalarField& f) {
    double m = 0.0;
    for (double x : f) m = std::max(m, std::abs(x));
    return m;
}

ScalarField GeometryBackend::derive(const ScalarField& f, const VectorField& v) const {
    ScalarField out(sites(), 0.0);
    for (int i = 0; i < 3; ++i) {
        const ScalarField di = derive_frame(f, i);
        for (std::size_t s = 0; s < out.size(); ++s) out[s] += v[s][static_cast<std::size_t>(i)] * di[s];
    }
    return out;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w, const GeometryBackend& be) {
    const std::size_t n = be.sites();
    VectorField out = zero_vector_field(n);
    for (int k = 0; k < 3; ++k) {
        const ScalarField vwk = be.derive(component(w, k), v);
        const ScalarField wvk = be.derive(component(v, k), w);
        for (std::size_t s = 0; s < n; ++s) out[s][static_cast<std::size_t>(k)] = vwk[s] - wvk[s];
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            const VectorField& cij = be.frame_bracket(i, j);
            for (std::size_t s = 0; s < n; ++s) {
                const double coef = v[s][static_cast<std::size_t>(i)] * w[s][static_cast<std::size_t>(j)];
                if (coef == 0.0) continue;
                for (int k = 0; k < 3; ++k) out[s][static_cast<std::size_t>(k)] += coef * cij[s][static_cast<std::size_t>(k)];
            }
        }
    return out;
}

MatrixField bracket_with_frame(const VectorField& v, const GeometryBackend& be) {
    const std::size_t n = be.sites();
    MatrixField B = zero_matrix_field(n);
    for (int a = 0; a < 3; ++a) {
        // [v, X_a]^k = -X_a(v^k) + v^i c^k_{ia}
        for (int k = 0; k < 3; ++k) {
            const ScalarField d = be.derive_frame(component(v, k), a);
            for (std::size_t s = 0; s < n; ++s) B[s](k, a) = -d[s];
        }
        for (int i = 0; i < 3; ++i) {
            if (i == a) continue;
            const VectorField& cia = be.frame_bracket(i, a);
            for (std::size_t s = 0; s < n; ++s)
                for (int k = 0; k < 3; ++k)
                    B[s](k, a) += v[s][static_cast<std::size_t>(i)] * cia[s][static_cast<std::size_t>(k)];
        }
    }
    return B;
}

}  // namespace chlab
