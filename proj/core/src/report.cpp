#include "chlab/report.hpp"

#include <algorithm>
#include <cmath>

#include "chlab/tensor_ops.hpp"

namespace chlab {

bool EnergyReport::invariants_ok() const {
    if (!(energy >= -tolerance)) return false;
    if (lambda_sq_min < -tolerance) return false;
    return compatible.within(tolerance);
}

EnergyReport build_energy_report(const Model& model, const MetricField& g,
                                 const ReportOptions& options) {
    const GeometryBackend& be = *model.backend;
    EnergyReport rep;
    rep.tolerance = options.tolerances.for_backend(be);

    rep.energy = energy(g, model.contact, be);
    rep.compatible = check_compatible(g, model.contact, model.contact.theta);

    const EndoField phi = phi_from_metric(g, model.contact);
    const EndoField h = h_tensor(phi, model.contact.reeb, be);
    const ScalarField lsq = lambda_sq(h, g);
    rep.lambda_sq_min = lsq.empty() ? 0.0 : *std::min_element(lsq.begin(), lsq.end());
    rep.lambda_sq_max = lsq.empty() ? 0.0 : *std::max_element(lsq.begin(), lsq.end());
    double mean = 0.0;
    for (double x : lsq) mean += x;
    rep.lambda_sq_mean = lsq.empty() ? 0.0 : mean / static_cast<double>(lsq.size());

    rep.tanno_residual_l2 = tanno_residual(g, model.contact, be).l2;
    rep.covariant_reeb_defect = covariant_reeb_check(g, model.contact, be);
    rep.reeb_lambda_sq_sup = sup_abs(reeb_derivative(lsq, model.contact, be));
    rep.critical = rep.tanno_residual_l2 <= options.critical_tol;

    const bool torsion_nondegenerate = rep.lambda_sq_min > 1e-12;
    if (options.with_calibration && torsion_nondegenerate) {
        const BiContact bc = bicontact_from_h(g, model.contact, be);
        rep.calibration = calibration_check(model.contact, bc.eta1, bc.eta2, be);
    }

    if (options.with_curvature) {
        std::optional<std::pair<VectorField, VectorField>> frame;
        if (model.model_coframe) {
            frame = std::make_pair(raise(model.model_coframe->first, g),
                                   raise(model.model_coframe->second, g));
        } else if (torsion_nondegenerate) {
            const BiContact bc = bicontact_from_h(g, model.contact, be);
            frame = std::make_pair(raise(bc.eta1, g), raise(bc.eta2, g));
        }
        if (frame) {
            const std::size_t n = be.sites();
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            VectorField es = zero_vector_field(n), eu = zero_vector_field(n);
            for (std::size_t s = 0; s < n; ++s) {
                es[s] = inv_sqrt2 * (frame->first[s] + frame->second[s]);
                eu[s] = inv_sqrt2 * (frame->first[s] - frame->second[s]);
            }
            const ScalarField ks = sectional_curvature(g, model.contact.reeb, es, be);
            const ScalarField ku = sectional_curvature(g, model.contact.reeb, eu, be);
            CurvatureRecord rec;
            double as = 0.0, au = 0.0;
            for (std::size_t s = 0; s < n; ++s) {
                as += ks[s];
                au += ku[s];
            }
            rec.k_reeb_stable = as / static_cast<double>(n);
            rec.k_reeb_unstable = au / static_cast<double>(n);
            rep.curvature = rec;
        }
    }
    return rep;
}

}  // namespace chlab
