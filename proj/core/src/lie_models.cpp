#include "chlab/lie_models.hpp"

#include <cmath>
#include <stdexcept>

namespace chlab {

double StructureConstants::antisymmetry_defect() const {
    double d = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(c[k][i][j] + c[k][j][i]));
    return d;
}

double StructureConstants::jacobi_defect() const {
    // [[X_i,X_j],X_l] + cyclic = ( c^k_ij c^m_kl + cyclic ) X_m
    double d = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
                for (int m = 0; m < 3; ++m) {
                    double v = 0.0;
                    for (int k = 0; k < 3; ++k)
                        v += c[k][i][j] * c[m][k][l] + c[k][j][l] * c[m][k][i] +
                             c[k][l][i] * c[m][k][j];
                    d = std::max(d, std::abs(v));
                }
    return d;
}

double StructureConstants::unimodularity_defect() const {
    double d = 0.0;
    for (int x = 0; x < 3; ++x) {
        double tr = 0.0;
        for (int k = 0; k < 3; ++k) tr += c[k][x][k];
        d = std::max(d, std::abs(tr));
    }
    return d;
}

void StructureConstants::validate(double jacobi_tol) const {
    if (antisymmetry_defect() > 0.0)
        throw std::invalid_argument("StructureConstants: bracket table not antisymmetric");
    if (jacobi_defect() > jacobi_tol)
        throw std::invalid_argument("StructureConstants: Jacobi identity violated");
    if (unimodularity_defect() > jacobi_tol)
        throw std::invalid_argument("StructureConstants: algebra not unimodular");
}

StructureConstants family_constants(double a, double b) {
    StructureConstants sc;
    sc.set(2, 0, 1, a);
    sc.set(1, 0, 2, b);
    sc.set(0, 1, 2, -2.0);
    return sc;
}

HomogeneousBackend::HomogeneousBackend(const StructureConstants& constants,
                                       double normalized_volume)
    : constants_(constants), volume_(normalized_volume) {
    if (volume_ <= 0.0) throw std::invalid_argument("HomogeneousBackend: volume must be positive");
    constants_.validate();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            VectorField f = zero_vector_field(1);
            for (int k = 0; k < 3; ++k) f[0][static_cast<std::size_t>(k)] = constants_.c[k][i][j];
            brackets_[i][j] = f;
        }
}

const VectorField& HomogeneousBackend::frame_bracket(int i, int j) const {
    return brackets_[i][j];
}

ScalarField HomogeneousBackend::derive_frame(const ScalarField& f, int) const {
    return ScalarField(f.size(), 0.0);
}

double HomogeneousBackend::integrate(const ScalarField& density) const {
    return density.at(0) * volume_;
}

}  // namespace chlab
